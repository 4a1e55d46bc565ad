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

#include <gtest/gtest.h>

#include <deque>
#include <map>
#include <random>
#include <set>

#include "qprod/error.hpp"
#include "qprod/samples.hpp"

namespace qprod {
namespace {

const Alphabet kABCXY({'A', 'B', 'C', 'x', 'y'});

// Reference rewriter on plain strings, independent of apply_rule.
std::optional<std::string> rewrite(const std::string &s, const Rule &r) {
    const auto pos = s.find(r.precondition());
    if (pos == std::string::npos) return std::nullopt;
    return s.substr(0, pos) + r.action() + s.substr(pos + r.precondition().size());
}

// Reference prefix-halting predicate; -1 marks an overflow.
int reference_halts(const ProductionSystem &sys, std::string s, const RuleSequence &seq) {
    for (std::size_t i = 0;; ++i) {
        if (std::find(sys.goal_states().begin(), sys.goal_states().end(), s) != sys.goal_states().end()) return 1;
        if (i == seq.depth()) return 0;
        auto next = rewrite(s, sys.rules()[seq.indices[i]]);
        if (!next) return 0;
        if (next->size() > sys.max_memory_len()) return -1;
        s = *next;
    }
}

// Breadth-first search for the shallowest goal depth.
std::optional<std::size_t> bfs_depth(const ProductionSystem &sys, const std::string &start, std::size_t cap) {
    std::vector<std::string> frontier{start};
    for (std::size_t d = 0; d <= cap; ++d) {
        std::vector<std::string> next;
        for (const auto &s : frontier) {
            if (sys.is_goal(s)) return d;
            for (const auto &r : sys.rules()) {
                auto t = rewrite(s, r);
                if (t && t->size() <= sys.max_memory_len()) next.push_back(*t);
            }
        }
        frontier = std::move(next);
    }
    return std::nullopt;
}

TEST(Alphabet, RejectsEmptyAndDuplicates) {
    EXPECT_THROW(Alphabet({}), Error);
    EXPECT_THROW(Alphabet({'a', 'b', 'a'}), Error);
    Alphabet a({'a', 'b'});
    EXPECT_TRUE(a.covers("abba"));
    EXPECT_FALSE(a.covers("abc"));
}

TEST(Rule, PreconditionMustBeNonEmpty) {
    EXPECT_THROW(Rule("", "x"), Error);
    EXPECT_NO_THROW(Rule("x", ""));
}

TEST(WorkingMemory, ValidatesAlphabetAndCapacity) {
    EXPECT_THROW(WorkingMemory(kABCXY, "xz", 8), Error);
    try {
        WorkingMemory(kABCXY, "xxxxx", 4);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kMemoryOverflow);
    }
}

TEST(ApplyRule, RewritesLeftmostOccurrence) {
    EXPECT_EQ(apply_rule(WorkingMemory(kABCXY, "xABy", 8), Rule("AB", "C"), kABCXY)->content(), "xCy");
    EXPECT_EQ(apply_rule(WorkingMemory(kABCXY, "AA", 8), Rule("A", "B"), kABCXY)->content(), "BA");
    EXPECT_FALSE(apply_rule(WorkingMemory(kABCXY, "xy", 8), Rule("AB", "C"), kABCXY).has_value());
}

TEST(ApplyRule, ExactModeNeedsWholeMemory) {
    EXPECT_FALSE(apply_rule(WorkingMemory(kABCXY, "xAB", 8), Rule("AB", "C"), kABCXY, MatchMode::kExact));
    EXPECT_EQ(apply_rule(WorkingMemory(kABCXY, "AB", 8), Rule("AB", "C"), kABCXY, MatchMode::kExact)->content(), "C");
}

TEST(ApplyRule, Errors) {
    try {
        apply_rule(WorkingMemory(kABCXY, "AAA", 4), Rule("A", "BB"), kABCXY);
        apply_rule(WorkingMemory(kABCXY, "AAAA", 4), Rule("A", "BB"), kABCXY);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kMemoryOverflow);
    }
    try {
        apply_rule(WorkingMemory(kABCXY, "A", 4), Rule("A", "Z"), kABCXY);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kAlphabetMismatch);
    }
}

TEST(ApplyRule, IsAFunction) {
    std::mt19937_64 rng(5);
    const std::string symbols = "ABCxy";
    for (int i = 0; i < 200; ++i) {
        std::string s(1 + rng() % 6, 'A');
        for (auto &c : s) c = symbols[rng() % symbols.size()];
        Rule r(std::string(1, symbols[rng() % 5]), std::string(rng() % 3, symbols[rng() % 5]));
        WorkingMemory m(kABCXY, s, 16);
        auto a = apply_rule(m, r, kABCXY);
        auto b = apply_rule(m, r, kABCXY);
        ASSERT_EQ(a.has_value(), b.has_value());
        if (a) EXPECT_EQ(a->content(), b->content());
        auto ref = rewrite(s, r);
        ASSERT_EQ(a.has_value(), ref.has_value());
        if (a) EXPECT_EQ(a->content(), *ref);
    }
}

TEST(ProductionSystem, ValidatesConstruction) {
    const Alphabet ab({'a', 'b'});
    EXPECT_THROW(ProductionSystem(ab, {}, {"a"}, {"b"}), Error);
    EXPECT_THROW(ProductionSystem(ab, {Rule("a", "b")}, {}, {"b"}), Error);
    EXPECT_THROW(ProductionSystem(ab, {Rule("a", "b")}, {"a"}, {}), Error);
    EXPECT_THROW(ProductionSystem(ab, {Rule("a", "c")}, {"a"}, {"b"}), Error);
    EXPECT_THROW(ProductionSystem(ab, {Rule("a", "b")}, {"a", "a"}, {"b"}), Error);
    EXPECT_THROW(ProductionSystem(ab, {Rule("a", "b")}, {"aaaa"}, {"b"}, 3), Error);
}

TEST(ExecuteSequence, TreeSystemReachesGoalOnPath010) {
    const ProductionSystem sys = samples::tree_system();
    const ExecutionResult r = execute_sequence(sys, sys.memory("A."), RuleSequence{{0, 1, 0}});
    ASSERT_EQ(r.trace.size(), 4u);
    EXPECT_EQ(r.trace[1].content(), "A0.");
    EXPECT_EQ(r.trace[2].content(), "A01.");
    EXPECT_EQ(r.trace.back().content(), "A010.");
    EXPECT_EQ(r.flag, HaltFlag::kHalt);
    EXPECT_EQ(r.halt_depth, 3u);
    // Node J of the depth-3 tree: label 2*(2*(2*0+1)+2)+1 = 9.
    EXPECT_EQ(samples::tree_node_label(RuleSequence{{0, 1, 0}}), 9u);
}

TEST(ExecuteSequence, GoalAtRootHaltsAtDepthZero) {
    const ProductionSystem sys(Alphabet({'a', 'b'}), {Rule("a", "b")}, {"a"}, {"a"});
    const ExecutionResult r = execute_sequence(sys, sys.memory("a"), RuleSequence{});
    EXPECT_EQ(r.flag, HaltFlag::kHalt);
    EXPECT_EQ(r.halt_depth, 0u);
}

TEST(ExecuteSequence, InapplicableRuleTruncatesTrace) {
    const ProductionSystem sys(Alphabet({'a', 'b'}), {Rule("a", "b"), Rule("bb", "a")}, {"a"}, {"aa"});
    const ExecutionResult r = execute_sequence(sys, sys.memory("a"), RuleSequence{{0, 1, 0}});
    EXPECT_TRUE(r.truncated);
    EXPECT_EQ(r.trace.size(), 2u);
    EXPECT_EQ(r.flag, HaltFlag::kContinue);
}

TEST(ExecuteSequence, MatchesExhaustiveSearchOnRandomSystems) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto rc = samples::random_system(seed, 2, 3);
        for (const auto &seq : enumerate_paths(2, 3)) {
            const int ref = reference_halts(rc.system, rc.start, seq);
            if (ref < 0) continue;
            const ExecutionResult r = execute_sequence(rc.system, rc.system.memory(rc.start), seq);
            EXPECT_EQ(r.flag == HaltFlag::kHalt, ref == 1) << to_string(seq);
        }
    }
}

TEST(HaltingPredicate, PrefixHalting) {
    const ProductionSystem sys(Alphabet({'a', 'b'}), {Rule("a", "b"), Rule("b", "a")}, {"a"}, {"b"});
    EXPECT_TRUE(halting_predicate(sys, sys.memory("a"), RuleSequence{{0, 1}}));
    EXPECT_FALSE(halting_predicate(sys, sys.memory("a"), RuleSequence{{1, 1}}));
}

TEST(HaltingPredicate, OverflowIsNotHalting) {
    const ProductionSystem sys(Alphabet({'a', 'b'}), {Rule("a", "aa")}, {"a"}, {"b"}, 3);
    const HaltEvaluation e = evaluate_halting(sys, sys.memory("a"), RuleSequence{{0, 0, 0}});
    EXPECT_FALSE(e.halts);
    EXPECT_TRUE(e.overflowed);
}

TEST(HaltingPredicate, MarkTableEqualsPerSequenceEvaluation) {
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
        const auto rc = samples::random_system(seed, 2, 4);
        const auto start = rc.system.memory(rc.start);
        const auto marks = mark_halting_paths(rc.system, start, 4);
        const auto paths = enumerate_paths(2, 4);
        ASSERT_EQ(marks.size(), 16u);
        for (std::size_t i = 0; i < paths.size(); ++i) {
            EXPECT_EQ(marks[i] != 0, halting_predicate(rc.system, start, paths[i]));
            const int ref = reference_halts(rc.system, rc.start, paths[i]);
            if (ref >= 0) EXPECT_EQ(marks[i] != 0, ref == 1);
        }
    }
}

TEST(HaltingPredicate, PrefixMonotonicity) {
    for (std::uint64_t seed = 200; seed < 220; ++seed) {
        const std::size_t b = 2 + seed % 2;
        const auto rc = samples::random_system(seed, b, 4);
        const auto start = rc.system.memory(rc.start);
        for (const auto &seq : enumerate_paths(b, 3)) {
            if (!halting_predicate(rc.system, start, seq)) continue;
            for (std::size_t r = 0; r < b; ++r) {
                RuleSequence longer = seq;
                longer.indices.push_back(r);
                EXPECT_TRUE(halting_predicate(rc.system, start, longer));
            }
        }
    }
}

TEST(EnumeratePaths, CountOrderAndUniqueness) {
    for (std::size_t b = 1; b <= 4; ++b) {
        for (std::size_t d = 0; d <= 8; ++d) {
            const auto paths = enumerate_paths(b, d);
            std::uint64_t expected = 1;
            for (std::size_t i = 0; i < d; ++i) expected *= b;
            ASSERT_EQ(paths.size(), expected);
            EXPECT_TRUE(std::is_sorted(paths.begin(), paths.end()));
            EXPECT_EQ(std::set<RuleSequence>(paths.begin(), paths.end()).size(), expected);
            for (std::uint64_t i = 0; i < paths.size(); ++i) {
                EXPECT_EQ(path_index(paths[i], b), i);
                EXPECT_EQ(path_from_index(i, b, d), paths[i]);
            }
        }
    }
    EXPECT_EQ(enumerate_paths(2, 3).size(), 8u);
    EXPECT_EQ(enumerate_paths(3, 0), std::vector<RuleSequence>{RuleSequence{}});
    EXPECT_EQ(enumerate_paths(3, 4).size(), 81u);
}

TEST(EnumeratePaths, SizeLimit) {
    try {
        enumerate_paths(2, 30, 1 << 20);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kSizeLimit);
    }
}

TEST(ClassicalMu, LeastSolution) {
    MuProblem squares{[](std::span<const std::uint64_t>, std::uint64_t m) { return m * m; }, {}, 9, 100};
    EXPECT_EQ(classical_mu(squares), 3u);
    MuProblem never{[](std::span<const std::uint64_t>, std::uint64_t) -> std::uint64_t { return 0; }, {}, 1, 100};
    EXPECT_FALSE(classical_mu(never).has_value());
}

TEST(ClassicalMu, ReturnsMinimumOfScannedRange) {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 50; ++t) {
        const std::uint64_t mod = 2 + rng() % 11;
        const std::uint64_t target = rng() % mod;
        const std::uint64_t mult = 1 + rng() % 7;
        MuProblem p{[=](std::span<const std::uint64_t>, std::uint64_t m) { return (mult * m) % mod; }, {}, target, 50};
        auto m = classical_mu(p);
        if (!m) continue;
        for (std::uint64_t k = 0; k < *m; ++k) EXPECT_NE(p.evaluator({}, k), target);
        EXPECT_EQ(p.evaluator({}, *m), target);
    }
}

TEST(ClassicalMu, DepthOfSystemMatchesIterativeDeepening) {
    const ProductionSystem sys(
        Alphabet({'A', '0', '1', '.'}), {Rule(".", "0."), Rule(".", "1.")}, {"A."}, {"A0110."}, 16);
    EXPECT_EQ(classical_mu(depth_mu_problem(sys, "A.", 10)), 4u);
    EXPECT_EQ(classical_ids(sys, sys.memory("A."), 10).d_star, 4u);
}

TEST(ClassicalIds, GoalAtRoot) {
    const ProductionSystem sys(Alphabet({'a', 'b'}), {Rule("a", "b")}, {"a"}, {"a"});
    const auto r = classical_ids(sys, sys.memory("a"), 5);
    ASSERT_TRUE(r.found());
    EXPECT_EQ(r.d_star, 0u);
    EXPECT_TRUE(r.witness->indices.empty());
}

TEST(ClassicalIds, TreeSystemDepthThree) {
    const ProductionSystem sys = samples::tree_system();
    const auto r = classical_ids(sys, sys.memory("A."), 6);
    ASSERT_TRUE(r.found());
    EXPECT_EQ(r.d_star, 3u);
    EXPECT_EQ(*r.witness, (RuleSequence{{0, 1, 0}}));
    EXPECT_EQ(r.goal, "A010.");
}

TEST(ClassicalIds, CapExceededIsNotFound) {
    const ProductionSystem sys = samples::unsatisfiable_system(2);
    EXPECT_FALSE(classical_ids(sys, sys.memory("#"), 5).found());
}

TEST(ClassicalIds, AgreesWithBreadthFirstSearch) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const std::size_t b = 2 + seed % 2;
        const auto rc = samples::random_system(3000 + seed, b);
        const auto ids = classical_ids(rc.system, rc.system.memory(rc.start), 6);
        const auto bfs = bfs_depth(rc.system, rc.start, 6);
        ASSERT_TRUE(ids.found());
        ASSERT_TRUE(bfs.has_value());
        EXPECT_EQ(ids.d_star, *bfs);
        EXPECT_EQ(ids.d_star, rc.d_star);
        EXPECT_TRUE(halting_predicate(rc.system, rc.system.memory(rc.start), *ids.witness));
    }
}

TEST(RunFirstApplicable, FollowsFirstRuleThatFires) {
    const ProductionSystem sys = samples::deutsch_system();
    const ControlRun run = run_first_applicable(sys, sys.memory("caaaaab"), 100);
    EXPECT_TRUE(run.halted);
    EXPECT_EQ(run.rules_applied.size(), 5u);
    EXPECT_EQ(run.trace.back().content(), "cb");
}

}  // namespace
}  // namespace qprod
