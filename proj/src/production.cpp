// Copyright 2026 The qprod Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qprod/production.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <sstream>

#include "qprod/error.hpp"

namespace qprod {

std::optional<std::uint64_t> checked_power(std::uint64_t b, std::size_t d, std::uint64_t cap) {
    std::uint64_t result = 1;
    for (std::size_t i = 0; i < d; ++i) {
        if (b != 0 && result > std::numeric_limits<std::uint64_t>::max() / b) {
            return std::nullopt;
        }
        result *= b;
        if (result > cap) {
            return std::nullopt;
        }
    }
    if (result > cap) {
        return std::nullopt;
    }
    return result;
}

std::uint64_t path_count(std::size_t b, std::size_t d, std::uint64_t cap) {
    auto n = checked_power(b, d, cap);
    if (!n) {
        std::ostringstream msg;
        msg << b << "^" << d << " exceeds the simulation cap of " << cap;
        throw Error(ErrorCode::kSizeLimit, msg.str());
    }
    return *n;
}

Alphabet::Alphabet(std::vector<char> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "alphabet must be non-empty");
    }
    for (char c : symbols_) {
        auto &slot = member_[static_cast<unsigned char>(c)];
        if (slot) {
            throw Error(ErrorCode::kInvalidArgument, std::string("duplicate alphabet symbol '") + c + "'");
        }
        slot = true;
    }
}

bool Alphabet::covers(std::string_view text) const {
    return std::all_of(text.begin(), text.end(), [this](char c) { return contains(c); });
}

WorkingMemory::WorkingMemory(const Alphabet &alphabet, std::string content, std::size_t max_len)
    : content_(std::move(content)), max_len_(max_len) {
    if (max_len_ == 0) {
        throw Error(ErrorCode::kInvalidArgument, "working memory capacity must be positive");
    }
    if (!alphabet.covers(content_)) {
        throw Error(ErrorCode::kAlphabetMismatch, "memory \"" + content_ + "\" uses symbols outside the alphabet");
    }
    if (content_.size() > max_len_) {
        throw Error(
            ErrorCode::kMemoryOverflow,
            "memory \"" + content_ + "\" exceeds capacity " + std::to_string(max_len_));
    }
}

Rule::Rule(std::string precondition, std::string action)
    : pre_(std::move(precondition)), post_(std::move(action)) {
    if (pre_.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "rule precondition must be non-empty");
    }
}

std::optional<WorkingMemory> apply_rule(
    const WorkingMemory &memory, const Rule &rule, const Alphabet &alphabet, MatchMode mode) {
    if (!alphabet.covers(rule.precondition()) || !alphabet.covers(rule.action())) {
        throw Error(
            ErrorCode::kAlphabetMismatch,
            "rule " + rule.precondition() + " -> " + rule.action() + " uses symbols outside the alphabet");
    }
    const std::string &content = memory.content();
    std::string rewritten;
    if (mode == MatchMode::kExact) {
        if (content != rule.precondition()) {
            return std::nullopt;
        }
        rewritten = rule.action();
    } else {
        auto pos = content.find(rule.precondition());
        if (pos == std::string::npos) {
            return std::nullopt;
        }
        rewritten.reserve(content.size() - rule.precondition().size() + rule.action().size());
        rewritten.append(content, 0, pos);
        rewritten.append(rule.action());
        rewritten.append(content, pos + rule.precondition().size());
    }
    if (rewritten.size() > memory.max_len()) {
        throw Error(
            ErrorCode::kMemoryOverflow,
            "rewriting \"" + content + "\" with " + rule.precondition() + " -> " + rule.action() +
                " exceeds capacity " + std::to_string(memory.max_len()));
    }
    return WorkingMemory(WorkingMemory::Unchecked{}, std::move(rewritten), memory.max_len());
}

std::string to_string(const RuleSequence &seq) {
    std::string out = "[";
    for (std::size_t i = 0; i < seq.indices.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(seq.indices[i]);
    }
    out += "]";
    return out;
}

std::uint64_t path_index(const RuleSequence &seq, std::size_t b) {
    std::uint64_t index = 0;
    for (auto r : seq.indices) {
        if (r >= b) {
            throw Error(ErrorCode::kInvalidArgument, "rule index " + std::to_string(r) + " out of range");
        }
        index = index * b + r;
    }
    return index;
}

RuleSequence path_from_index(std::uint64_t index, std::size_t b, std::size_t d) {
    RuleSequence seq;
    seq.indices.assign(d, 0);
    for (std::size_t i = d; i-- > 0;) {
        seq.indices[i] = static_cast<std::size_t>(index % b);
        index /= b;
    }
    if (index != 0) {
        throw Error(ErrorCode::kInvalidArgument, "path index out of range for the given depth");
    }
    return seq;
}

ProductionSystem::ProductionSystem(
    Alphabet alphabet,
    std::vector<Rule> rules,
    std::vector<std::string> initial_states,
    std::vector<std::string> goal_states,
    std::size_t max_memory_len,
    MatchMode match_mode,
    GoalMatch goal_match)
    : alphabet_(std::move(alphabet)),
      rules_(std::move(rules)),
      initial_(std::move(initial_states)),
      goals_(std::move(goal_states)),
      max_memory_len_(max_memory_len),
      match_mode_(match_mode),
      goal_match_(goal_match) {
    if (rules_.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "a production system needs at least one rule");
    }
    if (max_memory_len_ == 0) {
        throw Error(ErrorCode::kInvalidArgument, "max_memory_len must be positive");
    }
    for (const auto &rule : rules_) {
        if (!alphabet_.covers(rule.precondition()) || !alphabet_.covers(rule.action())) {
            throw Error(
                ErrorCode::kAlphabetMismatch,
                "rule " + rule.precondition() + " -> " + rule.action() + " uses symbols outside the alphabet");
        }
    }
    if (initial_.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "the initial-state set must be non-empty");
    }
    if (goals_.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "the goal-state set must be non-empty");
    }
    std::set<std::string> seen;
    for (const auto &s : initial_) {
        (void)memory(s);
        if (!seen.insert(s).second) {
            throw Error(ErrorCode::kInvalidArgument, "duplicate initial state \"" + s + "\"");
        }
    }
    for (const auto &g : goals_) {
        (void)memory(g);
        if (!goal_set_.insert(g).second) {
            throw Error(ErrorCode::kInvalidArgument, "duplicate goal state \"" + g + "\"");
        }
    }
}

WorkingMemory ProductionSystem::memory(std::string content) const {
    return WorkingMemory(alphabet_, std::move(content), max_memory_len_);
}

bool ProductionSystem::is_goal(std::string_view content) const {
    if (goal_match_ == GoalMatch::kExact) {
        return goal_set_.find(content) != goal_set_.end();
    }
    return std::any_of(goals_.begin(), goals_.end(), [&](const std::string &g) {
        return content.find(g) != std::string_view::npos;
    });
}

bool ProductionSystem::is_initial(std::string_view content) const {
    return std::find(initial_.begin(), initial_.end(), content) != initial_.end();
}

std::optional<WorkingMemory> ProductionSystem::apply(const WorkingMemory &memory, std::size_t rule_index) const {
    if (rule_index >= rules_.size()) {
        throw Error(ErrorCode::kInvalidArgument, "rule index " + std::to_string(rule_index) + " out of range");
    }
    return apply_rule(memory, rules_[rule_index], alphabet_, match_mode_);
}

namespace {

void check_indices(const ProductionSystem &system, const RuleSequence &seq) {
    for (auto r : seq.indices) {
        if (r >= system.branching()) {
            throw Error(ErrorCode::kInvalidArgument, "rule index " + std::to_string(r) + " out of range");
        }
    }
}

}  // namespace

ExecutionResult execute_sequence(
    const ProductionSystem &system, const WorkingMemory &start, const RuleSequence &seq) {
    check_indices(system, seq);
    ExecutionResult result;
    result.trace.push_back(start);
    if (system.is_goal(start.content())) {
        result.halt_depth = 0;
    }
    for (std::size_t step = 0; step < seq.indices.size(); ++step) {
        std::optional<WorkingMemory> next;
        try {
            next = system.apply(result.trace.back(), seq.indices[step]);
        } catch (const Error &e) {
            if (e.code() != ErrorCode::kMemoryOverflow || !result.halt_depth) {
                throw;
            }
        }
        if (!next) {
            result.truncated = true;
            break;
        }
        result.trace.push_back(std::move(*next));
        if (!result.halt_depth && system.is_goal(result.trace.back().content())) {
            result.halt_depth = step + 1;
        }
    }
    result.flag = result.halt_depth ? HaltFlag::kHalt : HaltFlag::kContinue;
    return result;
}

HaltEvaluation evaluate_halting(
    const ProductionSystem &system, const WorkingMemory &start, const RuleSequence &seq) {
    check_indices(system, seq);
    HaltEvaluation out;
    WorkingMemory current = start;
    for (std::size_t step = 0;; ++step) {
        if (system.is_goal(current.content())) {
            out.halts = true;
            out.halt_depth = step;
            out.goal = current.content();
            return out;
        }
        if (step == seq.indices.size()) {
            return out;
        }
        std::optional<WorkingMemory> next;
        try {
            next = system.apply(current, seq.indices[step]);
        } catch (const Error &e) {
            if (e.code() != ErrorCode::kMemoryOverflow) throw;
            out.overflowed = true;
            return out;
        }
        if (!next) {
            return out;
        }
        current = std::move(*next);
    }
}

bool halting_predicate(const ProductionSystem &system, const WorkingMemory &start, const RuleSequence &seq) {
    return evaluate_halting(system, start, seq).halts;
}

namespace {

// Fills marks[base .. base + b^remaining) for the subtree rooted at `memory`.
void mark_subtree(
    const ProductionSystem &system,
    const std::optional<WorkingMemory> &memory,
    std::size_t remaining,
    std::uint64_t base,
    std::uint64_t span,
    std::vector<std::uint8_t> &marks) {
    if (memory && system.is_goal(memory->content())) {
        std::fill(marks.begin() + base, marks.begin() + base + span, std::uint8_t{1});
        return;
    }
    if (!memory || remaining == 0) {
        return;  // dead path or leaf without goal: stays 0
    }
    const std::size_t b = system.branching();
    const std::uint64_t child_span = span / b;
    for (std::size_t r = 0; r < b; ++r) {
        std::optional<WorkingMemory> child;
        try {
            child = system.apply(*memory, r);
        } catch (const Error &e) {
            if (e.code() != ErrorCode::kMemoryOverflow) throw;
        }
        mark_subtree(system, child, remaining - 1, base + r * child_span, child_span, marks);
    }
}

}  // namespace

std::vector<std::uint8_t> mark_halting_paths(
    const ProductionSystem &system, const WorkingMemory &start, std::size_t d, std::uint64_t cap) {
    const std::uint64_t n = path_count(system.branching(), d, cap);
    std::vector<std::uint8_t> marks(n, 0);
    mark_subtree(system, start, d, 0, n, marks);
    return marks;
}

std::vector<RuleSequence> enumerate_paths(std::size_t b, std::size_t d, std::uint64_t cap) {
    if (b == 0) {
        throw Error(ErrorCode::kInvalidArgument, "branching factor must be at least 1");
    }
    const std::uint64_t n = path_count(b, d, cap);
    std::vector<RuleSequence> paths;
    paths.reserve(n);
    RuleSequence current;
    current.indices.assign(d, 0);
    for (std::uint64_t i = 0; i < n; ++i) {
        paths.push_back(current);
        // Odometer increment, last position fastest.
        for (std::size_t pos = d; pos-- > 0;) {
            if (++current.indices[pos] < b) break;
            current.indices[pos] = 0;
        }
    }
    return paths;
}

ControlRun run_first_applicable(
    const ProductionSystem &system, const WorkingMemory &start, std::uint64_t max_steps) {
    ControlRun run;
    run.trace.push_back(start);
    for (std::uint64_t step = 0;; ++step) {
        if (system.is_goal(run.trace.back().content())) {
            run.halted = true;
            return run;
        }
        if (step == max_steps) {
            return run;
        }
        std::optional<WorkingMemory> next;
        std::size_t r = 0;
        for (; r < system.branching(); ++r) {
            next = system.apply(run.trace.back(), r);
            if (next) break;
        }
        if (!next) {
            run.stuck = true;
            return run;
        }
        run.rules_applied.push_back(r);
        run.trace.push_back(std::move(*next));
    }
}

std::optional<std::uint64_t> classical_mu(const MuProblem &problem) {
    if (problem.cap < 1) {
        throw Error(ErrorCode::kInvalidArgument, "mu-operator cap must be at least 1");
    }
    for (std::uint64_t m = 0; m < problem.cap; ++m) {
        if (problem.evaluator(problem.arguments, m) == problem.target) {
            return m;
        }
    }
    return std::nullopt;
}

MuProblem depth_mu_problem(const ProductionSystem &system, const std::string &start, std::uint64_t cap) {
    auto shared = std::make_shared<const ProductionSystem>(system);
    auto start_memory = std::make_shared<const WorkingMemory>(system.memory(start));
    MuProblem problem;
    problem.evaluator = [shared, start_memory](std::span<const std::uint64_t>, std::uint64_t m) -> std::uint64_t {
        auto marks = mark_halting_paths(*shared, *start_memory, static_cast<std::size_t>(m));
        return std::any_of(marks.begin(), marks.end(), [](std::uint8_t v) { return v != 0; }) ? 1 : 0;
    };
    problem.target = 1;
    problem.cap = cap;
    return problem;
}

namespace {

struct DepthLimitedSearch {
    const ProductionSystem &system;
    std::uint64_t nodes = 0;
    std::vector<std::size_t> path;
    std::optional<std::string> goal;

    bool search(const WorkingMemory &memory, std::size_t remaining) {
        ++nodes;
        if (system.is_goal(memory.content())) {
            goal = memory.content();
            return true;
        }
        if (remaining == 0) return false;
        for (std::size_t r = 0; r < system.branching(); ++r) {
            std::optional<WorkingMemory> child;
            try {
                child = system.apply(memory, r);
            } catch (const Error &e) {
                if (e.code() != ErrorCode::kMemoryOverflow) throw;
            }
            if (!child) continue;
            path.push_back(r);
            if (search(*child, remaining - 1)) return true;
            path.pop_back();
        }
        return false;
    }
};

}  // namespace

ClassicalSearchResult classical_ids(
    const ProductionSystem &system, const WorkingMemory &start, std::size_t depth_cap) {
    ClassicalSearchResult result;
    DepthLimitedSearch dls{system, 0, {}, std::nullopt};
    for (std::size_t limit = 0; limit <= depth_cap; ++limit) {
        dls.path.clear();
        if (dls.search(start, limit)) {
            result.witness = RuleSequence{dls.path};
            result.goal = dls.goal;
            result.d_star = dls.path.size();
            break;
        }
    }
    result.nodes_expanded = dls.nodes;
    return result;
}

}  // namespace qprod
