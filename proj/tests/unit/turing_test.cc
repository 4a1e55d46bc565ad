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

#include "qprod/turing.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "qprod/acceptance.hpp"
#include "qprod/error.hpp"
#include "qprod/samples.hpp"

namespace qprod {
namespace {

ErrorCode code_of(const std::function<void()> &fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::kInvalidArgument;
}

TEST(TuringMachine, ValidatesTable) {
    // Missing entry for (S, _).
    EXPECT_THROW(TuringMachine({'S', 'H'}, 'S', {'H'}, '_', {'1', '_'}, {{'S', '1', 'H', '1', Move::kStay}}, 8), Error);
    // Halt state with a transition.
    EXPECT_THROW(
        TuringMachine(
            {'S', 'H'}, 'S', {'H'}, '_', {'1', '_'},
            {{'S', '1', 'H', '1', Move::kStay}, {'S', '_', 'H', '_', Move::kStay}, {'H', '1', 'H', '1', Move::kStay}},
            8),
        Error);
    // Blank not in the tape alphabet.
    EXPECT_THROW(TuringMachine({'H'}, 'H', {'H'}, '_', {'1'}, {}, 8), Error);
}

TEST(RunTm, UnaryIncrement) {
    const TuringMachine tm = samples::unary_increment();
    const TmRun run = run_tm(tm, "11", 100);
    EXPECT_TRUE(run.halted);
    EXPECT_EQ(run.final.tape, "111");
    EXPECT_EQ(run.final.state, 'H');
}

TEST(RunTm, StartInHaltStateTakesNoSteps) {
    const TuringMachine tm({'H'}, 'H', {'H'}, '_', {'1', '_'}, {}, 8);
    const TmRun run = run_tm(tm, "1_1", 100);
    EXPECT_TRUE(run.halted);
    EXPECT_EQ(run.steps, 0u);
    EXPECT_EQ(run.final.tape, "1_1");
}

TEST(RunTm, LoopForeverHitsStepCap) {
    const TuringMachine tm(
        {'L', 'H'}, 'L', {'H'}, '_', {'1', '_'}, {{'L', '1', 'L', '1', Move::kStay}, {'L', '_', 'L', '_', Move::kStay}},
        8);
    const TmRun run = run_tm(tm, "1", 50);
    EXPECT_FALSE(run.halted);
    EXPECT_EQ(run.steps, 50u);
}

TEST(RunTm, TapeOverflowAtWindowEdge) {
    const TuringMachine tm(
        {'R', 'H'}, 'R', {'H'}, '_', {'1', '_'}, {{'R', '1', 'R', '1', Move::kRight}, {'R', '_', 'R', '1', Move::kRight}},
        4);
    EXPECT_EQ(code_of([&] { run_tm(tm, "1", 100); }), ErrorCode::kTapeOverflow);
    EXPECT_EQ(code_of([&] { run_tm(tm, "11111", 100); }), ErrorCode::kTapeOverflow);
}

TEST(RunTm, LeftMoveAtCellZeroPrependsBlank) {
    const TuringMachine tm(
        {'L', 'H'}, 'L', {'H'}, '_', {'1', '_'}, {{'L', '1', 'L', '1', Move::kLeft}, {'L', '_', 'H', '_', Move::kStay}},
        8);
    const TmRun run = run_tm(tm, "11", 10);
    EXPECT_TRUE(run.halted);
    EXPECT_EQ(run.final.tape, "_11");
    EXPECT_EQ(run.final.head, 0u);
}

TEST(Encoding, StateTokenBeforeScannedCell) {
    EXPECT_EQ(encode_config(TmConfiguration{"ab", 0, 'q'}), "qab");
    EXPECT_EQ(encode_config(TmConfiguration{"ab", 1, 'q'}), "aqb");
}

TEST(Encoding, DecodeRejectsMalformedStrings) {
    const TuringMachine tm = samples::unary_increment();
    EXPECT_EQ(code_of([&] { decode_config("11", tm); }), ErrorCode::kMalformedEncoding);
    EXPECT_EQ(code_of([&] { decode_config("S1R1", tm); }), ErrorCode::kMalformedEncoding);
    EXPECT_EQ(code_of([&] { decode_config("11S", tm); }), ErrorCode::kMalformedEncoding);
    EXPECT_EQ(code_of([&] { decode_config("1x", tm); }), ErrorCode::kMalformedEncoding);
}

TEST(Encoding, RoundTripRandomConfigurations) {
    const TuringMachine tm = samples::sample_machines()[4].tm;  // parity: 5 symbols, 3 states
    std::mt19937_64 rng(77);
    for (int i = 0; i < 100; ++i) {
        TmConfiguration cfg;
        cfg.tape.resize(1 + rng() % tm.tape_window());
        for (auto &c : cfg.tape) c = tm.tape_alphabet()[rng() % tm.tape_alphabet().size()];
        cfg.head = rng() % cfg.tape.size();
        cfg.state = tm.states()[rng() % tm.states().size()];
        EXPECT_EQ(decode_config(encode_config(cfg), tm), cfg);
        EXPECT_EQ(decode_memory(encode_memory(cfg), tm), cfg);
    }
}

TEST(Compile, StayMoveIsASingleRewrite) {
    const TuringMachine tm({'q', 'r'}, 'q', {'r'}, 'a', {'a', 'b'}, {{'q', 'a', 'r', 'b', Move::kStay}, {'q', 'b', 'r', 'b', Move::kStay}}, 4);
    const ProductionSystem sys = compile(tm);
    ASSERT_EQ(sys.rules().size(), 2u);
    EXPECT_EQ(sys.rules()[0], Rule("qa", "rb"));
}

TEST(Compile, OverlappingTokensClash) {
    const TuringMachine tm({'a', 'H'}, 'a', {'H'}, '_', {'a', '_'}, {{'a', 'a', 'H', 'a', Move::kStay}, {'a', '_', 'H', '_', Move::kStay}}, 4);
    EXPECT_EQ(code_of([&] { compile(tm); }), ErrorCode::kEncodingClash);
    const TuringMachine marker({'S', 'H'}, 'S', {'H'}, '_', {'[', '_'}, {{'S', '[', 'H', '[', Move::kStay}, {'S', '_', 'H', '_', Move::kStay}}, 4);
    EXPECT_EQ(code_of([&] { compile(marker); }), ErrorCode::kEncodingClash);
}

TEST(Compile, IsDeterministic) {
    for (const auto &m : samples::sample_machines()) {
        EXPECT_EQ(compile(m.tm, {"1"}).rules(), compile(m.tm, {"1"}).rules());
    }
}

TEST(Compile, DistinctEntriesGiveDistinctRules) {
    const TuringMachine a = samples::unary_increment();
    std::vector<Transition> delta = a.delta();
    delta[0].move = Move::kStay;
    const TuringMachine b(a.states(), a.start(), a.halts(), a.blank(), a.tape_alphabet(), delta, a.tape_window());
    EXPECT_NE(compile(a).rules(), compile(b).rules());
}

TEST(Compile, UnaryIncrementFoundByClassicalSearch) {
    const TuringMachine tm = samples::unary_increment();
    const ProductionSystem sys = compile(tm, {"11"});
    const auto ids = classical_ids(sys, sys.memory(sys.initial_states().front()), 20);
    ASSERT_TRUE(ids.found());
    EXPECT_EQ(decode_memory(*ids.goal, tm).tape, "111");
    EXPECT_EQ(ids.d_star, run_tm(tm, "11", 100).steps);
}

TEST(Bisimulation, AllSampleMachinesAndTapes) {
    for (const auto &m : samples::sample_machines()) {
        ASSERT_GE(m.tapes.size(), 10u);
        for (const auto &tape : m.tapes) {
            const auto r = acceptance::bisimulate(m.tm, tape, 1000);
            EXPECT_TRUE(r.matched && r.halted) << m.name << " \"" << tape << "\": " << r.detail;
        }
    }
}

TEST(Bisimulation, OverflowHappensAtTheSameStep) {
    const TuringMachine tm(
        {'R', 'H'}, 'R', {'H'}, '_', {'1', '_'}, {{'R', '1', 'R', '1', Move::kRight}, {'R', '_', 'R', '1', Move::kRight}},
        5);
    const auto r = acceptance::bisimulate(tm, "11", 100);
    EXPECT_TRUE(r.matched) << r.detail;
    EXPECT_TRUE(r.overflowed);
    EXPECT_EQ(r.steps, 4u);
}

TEST(Bisimulation, LeftEdgeExtensionMatches) {
    const TuringMachine tm(
        {'L', 'H'}, 'L', {'H'}, '_', {'1', '_'}, {{'L', '1', 'L', '1', Move::kLeft}, {'L', '_', 'H', '1', Move::kLeft}},
        6);
    const auto r = acceptance::bisimulate(tm, "111", 100);
    EXPECT_TRUE(r.matched && r.halted) << r.detail;
}

TEST(Bisimulation, NondeterministicMachineBranches) {
    // Two entries for (S, 1): the compiled system has two applicable rules.
    const TuringMachine tm(
        {'S', 'H'}, 'S', {'H'}, '_', {'1', '_'},
        {{'S', '1', 'S', '_', Move::kRight}, {'S', '1', 'H', '1', Move::kStay}, {'S', '_', 'H', '_', Move::kStay}}, 6);
    EXPECT_FALSE(tm.deterministic());
    EXPECT_EQ(code_of([&] { step_tm(tm, initial_configuration(tm, "1")); }), ErrorCode::kNonDeterministic);
    const ProductionSystem sys = compile(tm, {"11"});
    const auto start = sys.memory(sys.initial_states().front());
    std::size_t applicable = 0;
    for (std::size_t r = 0; r < sys.branching(); ++r) applicable += sys.apply(start, r).has_value();
    EXPECT_EQ(applicable, 2u);
}

}  // namespace
}  // namespace qprod
