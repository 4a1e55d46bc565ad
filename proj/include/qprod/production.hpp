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

/**
 * @file
 * Classical production-system semantics: string rewriting over a finite
 * alphabet, rule sequences addressing paths of the search tree, the
 * prefix-halting predicate, and the classical search baselines (mu-operator
 * and iterative deepening) used to cross-check the quantum pipeline.
 */

#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qprod {

inline constexpr std::size_t kDefaultMaxMemoryLen = 64;

/// Largest path space / amplitude count any operation will allocate.
inline constexpr std::uint64_t kDefaultSimulationCap = std::uint64_t{1} << 22;

/// b^d, or nullopt when it exceeds `cap` (or overflows 64 bits).
std::optional<std::uint64_t> checked_power(std::uint64_t b, std::size_t d, std::uint64_t cap);

/// b^d, throwing SizeLimit when it exceeds `cap`.
std::uint64_t path_count(std::size_t b, std::size_t d, std::uint64_t cap = kDefaultSimulationCap);

class Alphabet {
   public:
    explicit Alphabet(std::vector<char> symbols);

    bool contains(char c) const { return member_[static_cast<unsigned char>(c)]; }
    bool covers(std::string_view text) const;
    const std::vector<char> &symbols() const { return symbols_; }
    std::size_t size() const { return symbols_.size(); }

   private:
    std::vector<char> symbols_;
    std::array<bool, 256> member_{};
};

class Rule {
   public:
    Rule(std::string precondition, std::string action);

    const std::string &precondition() const { return pre_; }
    const std::string &action() const { return post_; }

    bool operator==(const Rule &other) const = default;

   private:
    std::string pre_;
    std::string post_;
};

/// How a rule precondition is matched against the working memory.
enum class MatchMode {
    kLeftmost,  // leftmost substring occurrence is rewritten
    kExact,     // the whole memory must equal the precondition
};

/// How membership in the goal set is decided.
enum class GoalMatch {
    kExact,      // memory equals some goal string
    kSubstring,  // memory contains some goal string
};

class WorkingMemory;

/// Rewrites the leftmost occurrence of the precondition (or the whole memory in
/// exact mode). nullopt when the precondition does not match.
std::optional<WorkingMemory> apply_rule(
    const WorkingMemory &memory, const Rule &rule, const Alphabet &alphabet,
    MatchMode mode = MatchMode::kLeftmost);

/// A string over an alphabet with a fixed capacity.
class WorkingMemory {
   public:
    WorkingMemory(const Alphabet &alphabet, std::string content, std::size_t max_len);

    const std::string &content() const { return content_; }
    std::size_t max_len() const { return max_len_; }

    bool operator==(const WorkingMemory &other) const { return content_ == other.content_; }

   private:
    friend std::optional<WorkingMemory> apply_rule(
        const WorkingMemory &, const Rule &, const Alphabet &, MatchMode);
    struct Unchecked {};
    WorkingMemory(Unchecked, std::string content, std::size_t max_len)
        : content_(std::move(content)), max_len_(max_len) {
    }

    std::string content_;
    std::size_t max_len_;
};

enum class HaltFlag { kContinue, kHalt };

struct RuleSequence {
    std::vector<std::size_t> indices;

    std::size_t depth() const { return indices.size(); }
    auto operator<=>(const RuleSequence &) const = default;
    bool operator==(const RuleSequence &) const = default;
};

std::string to_string(const RuleSequence &seq);

/// Position of `seq` in the lexicographic path space of branching factor `b`
/// (base-b digits, first production most significant).
std::uint64_t path_index(const RuleSequence &seq, std::size_t b);
RuleSequence path_from_index(std::uint64_t index, std::size_t b, std::size_t d);

class ProductionSystem {
   public:
    ProductionSystem(
        Alphabet alphabet,
        std::vector<Rule> rules,
        std::vector<std::string> initial_states,
        std::vector<std::string> goal_states,
        std::size_t max_memory_len = kDefaultMaxMemoryLen,
        MatchMode match_mode = MatchMode::kLeftmost,
        GoalMatch goal_match = GoalMatch::kExact);

    const Alphabet &alphabet() const { return alphabet_; }
    const std::vector<Rule> &rules() const { return rules_; }
    const std::vector<std::string> &initial_states() const { return initial_; }
    const std::vector<std::string> &goal_states() const { return goals_; }
    std::size_t max_memory_len() const { return max_memory_len_; }
    MatchMode match_mode() const { return match_mode_; }
    GoalMatch goal_match() const { return goal_match_; }

    /// Branching factor b = |R|.
    std::size_t branching() const { return rules_.size(); }

    WorkingMemory memory(std::string content) const;
    bool is_goal(std::string_view content) const;
    bool is_initial(std::string_view content) const;

    std::optional<WorkingMemory> apply(const WorkingMemory &memory, std::size_t rule_index) const;

   private:
    Alphabet alphabet_;
    std::vector<Rule> rules_;
    std::vector<std::string> initial_;
    std::vector<std::string> goals_;
    std::set<std::string, std::less<>> goal_set_;
    std::size_t max_memory_len_;
    MatchMode match_mode_;
    GoalMatch goal_match_;
};

struct ExecutionResult {
    std::vector<WorkingMemory> trace;  // trace[0] is the start memory
    HaltFlag flag = HaltFlag::kContinue;
    /// Length of the shortest prefix that reached a goal.
    std::optional<std::size_t> halt_depth;
    /// True when an inapplicable rule (or an overflow after halting) cut the trace short.
    bool truncated = false;
};

/// Applies `seq` in order under shallowest-production semantics. Throws
/// MemoryOverflow if a rewrite overflows before any goal was reached.
ExecutionResult execute_sequence(
    const ProductionSystem &system, const WorkingMemory &start, const RuleSequence &seq);

struct HaltEvaluation {
    bool halts = false;
    std::optional<std::size_t> halt_depth;
    bool overflowed = false;
    /// Memory at the shallowest halting prefix.
    std::optional<std::string> goal;
};

/// Total version of the halting predicate: overflow counts as "continue" and
/// is reported in `overflowed`.
HaltEvaluation evaluate_halting(
    const ProductionSystem &system, const WorkingMemory &start, const RuleSequence &seq);

/// The deterministic f(w) marked by the oracle.
bool halting_predicate(
    const ProductionSystem &system, const WorkingMemory &start, const RuleSequence &seq);

/// Halting bits for every path of depth `d`, in lexicographic order. Walks the
/// search tree once, sharing prefixes, so it costs O(b^d) rule applications.
std::vector<std::uint8_t> mark_halting_paths(
    const ProductionSystem &system, const WorkingMemory &start, std::size_t d,
    std::uint64_t cap = kDefaultSimulationCap);

std::vector<RuleSequence> enumerate_paths(
    std::size_t b, std::size_t d, std::uint64_t cap = kDefaultSimulationCap);

struct ControlRun {
    std::vector<WorkingMemory> trace;
    std::vector<std::size_t> rules_applied;
    bool halted = false;  // a goal was reached
    bool stuck = false;   // no rule applied before a goal was reached
};

/// Classical control strategy C: fire the lowest-index applicable rule until a
/// goal is reached, nothing applies, or `max_steps` rules have fired.
/// MemoryOverflow propagates.
ControlRun run_first_applicable(
    const ProductionSystem &system, const WorkingMemory &start, std::uint64_t max_steps);

struct MuProblem {
    std::function<std::uint64_t(std::span<const std::uint64_t>, std::uint64_t)> evaluator;
    std::vector<std::uint64_t> arguments;
    std::uint64_t target = 0;
    std::uint64_t cap = 1;
};

/// Least m < cap with evaluator(arguments, m) == target; nullopt when the cap
/// is exhausted.
std::optional<std::uint64_t> classical_mu(const MuProblem &problem);

/// The mu-problem "least depth at which some rule sequence halts":
/// g(n, m) = 1 iff a depth-m path from `start` reaches a goal, target 1.
MuProblem depth_mu_problem(
    const ProductionSystem &system, const std::string &start, std::uint64_t cap);

struct ClassicalSearchResult {
    std::optional<RuleSequence> witness;
    std::optional<std::string> goal;
    std::size_t d_star = 0;
    std::uint64_t nodes_expanded = 0;

    bool found() const { return witness.has_value(); }
};

/// Classical iterative deepening up to `depth_cap` (inclusive). Rules are tried
/// in index order, so the witness is the lexicographically first shallowest one.
ClassicalSearchResult classical_ids(
    const ProductionSystem &system, const WorkingMemory &start, std::size_t depth_cap);

}  // namespace qprod
