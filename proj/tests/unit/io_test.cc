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

#include "qprod/io.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "json.hpp"
#include "qprod/error.hpp"
#include "qprod/samples.hpp"

namespace qprod {
namespace {

std::string parse_error(const std::string &text) {
    try {
        parse_system(text);
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kParse);
        return e.what();
    }
    ADD_FAILURE() << "accepted: " << text;
    return {};
}

bool same_system(const ProductionSystem &a, const ProductionSystem &b) {
    return a.alphabet().symbols() == b.alphabet().symbols() && a.rules() == b.rules() &&
           a.initial_states() == b.initial_states() && a.goal_states() == b.goal_states() &&
           a.max_memory_len() == b.max_memory_len() && a.match_mode() == b.match_mode() &&
           a.goal_match() == b.goal_match();
}

TEST(SystemJson, ParsesMinimalDocument) {
    const ProductionSystem sys = parse_system(R"({
        "alphabet": ["a", "b"], "rules": [{"pre": "a", "post": "bb"}],
        "initial": ["a"], "goals": ["bb"], "max_memory_len": 8})");
    EXPECT_EQ(sys.branching(), 1u);
    EXPECT_EQ(sys.rules()[0], Rule("a", "bb"));
    EXPECT_EQ(sys.match_mode(), MatchMode::kLeftmost);
    EXPECT_EQ(sys.goal_match(), GoalMatch::kExact);
}

TEST(SystemJson, RoundTrip) {
    const ProductionSystem exact(
        Alphabet({'x', 'y'}), {Rule("x", ""), Rule("xy", "y")}, {"xy"}, {"y"}, 5, MatchMode::kExact,
        GoalMatch::kSubstring);
    for (const auto &sys : {samples::tree_system(), samples::deutsch_system(), exact}) {
        const std::string text = dump_system(sys);
        EXPECT_TRUE(same_system(parse_system(text), sys));
        EXPECT_EQ(dump_system(parse_system(text)), text);
    }
}

TEST(SystemJson, DiagnosticsNameTheField) {
    EXPECT_NE(parse_error(R"({"alphabet": ["a"], "rules": [{"pre": "a", "post": 3}], "initial": ["a"], "goals": ["a"]})")
                  .find("rules[0].post"),
              std::string::npos);
    EXPECT_NE(parse_error(R"({"alphabet": ["a"], "rules": [], "initial": ["a"], "goals": ["a"], "colour": 1})")
                  .find("colour"),
              std::string::npos);
    EXPECT_NE(parse_error(R"({"alphabet": ["a"], "rules": [], "initial": ["a"]})").find("goals"), std::string::npos);
    EXPECT_NE(parse_error(R"({"alphabet": ["ab"], "rules": [], "initial": ["a"], "goals": ["a"]})").find("alphabet[0]"),
              std::string::npos);
}

TEST(SystemJson, SyntaxErrorReportsLineAndColumn) {
    const std::string msg = parse_error("{\n  \"alphabet\": [\"a\",,]\n}");
    EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
    EXPECT_NE(msg.find("column"), std::string::npos) << msg;
}

TEST(SystemJson, RejectsRuleOutsideAlphabet) {
    EXPECT_THROW(
        parse_system(R"({"alphabet": ["a"], "rules": [{"pre": "z", "post": "a"}], "initial": ["a"], "goals": ["a"]})"),
        Error);
}

TEST(TmJson, RoundTripAllSamples) {
    for (const auto &m : samples::sample_machines()) {
        const std::string text = dump_tm(m.tm);
        const TuringMachine back = parse_tm(text);
        EXPECT_EQ(back.delta(), m.tm.delta()) << m.name;
        EXPECT_EQ(back.states(), m.tm.states());
        EXPECT_EQ(back.tape_window(), m.tm.tape_window());
        EXPECT_EQ(dump_tm(back), text);
    }
}

TEST(TmJson, RejectsBadMove) {
    try {
        parse_tm(R"({"states": ["S", "H"], "start": "S", "halts": ["H"], "blank": "_",
                     "tape_alphabet": ["_"], "delta": [["S", "_", "H", "_", "U"]], "tape_window": 4})");
        FAIL();
    } catch (const Error &e) {
        EXPECT_NE(std::string(e.what()).find("delta[0]"), std::string::npos) << e.what();
    }
}

TEST(ReportJson, RoundTripAndKeyOrder) {
    const ProductionSystem sys = samples::tree_system();
    const SearchReport r = quantum_iterative_deepening(sys, sys.memory("A."), QidConfig{5, 42});
    const std::string text = dump_report(r, false);
    const auto j = nlohmann::ordered_json::parse(text);
    EXPECT_EQ(j.begin().key(), "schema_version");
    EXPECT_FALSE(j.contains("wall_time_ms"));
    EXPECT_TRUE(nlohmann::ordered_json::parse(dump_report(r, true)).contains("wall_time_ms"));
    const SearchReport back = parse_report(text);
    EXPECT_EQ(back.found, r.found);
    EXPECT_EQ(back.witness, r.witness);
    EXPECT_EQ(back.d_star, r.d_star);
    EXPECT_EQ(back.per_depth.size(), r.per_depth.size());
    EXPECT_EQ(dump_report(back, false), text);
}

TEST(DemoJson, ContainsProbabilities) {
    DeutschDemoReport r = deutsch_flaw_demo(samples::deutsch_system(), 3);
    observe_halt(r, 5);
    const auto j = nlohmann::json::parse(dump_demo(r));
    EXPECT_NEAR(j.at("p1").get<double>(), 0.5, 1e-12);
    EXPECT_EQ(j.at("seed").get<std::uint64_t>(), 5u);
    EXPECT_TRUE(j.at("steps_to_halt")[2].is_number());
    EXPECT_FALSE(render_demo(r).empty());
}

TEST(StateDump, RoundTripIsExact) {
    QuantumState s = uniform_superposition(3, 2);
    prepare_halt_minus(s);
    s[3] = Amplitude(0.1, -1.0 / 3.0);
    std::stringstream buf;
    write_state(buf, s);
    const QuantumState back = read_state(buf);
    EXPECT_EQ(back.dims().num_s, s.dims().num_s);
    EXPECT_EQ(back.dims().b, 3u);
    EXPECT_EQ(back.dims().d, 2u);
    for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(back[i], s[i]);
}

TEST(StateDump, RejectsBadHeader) {
    std::istringstream in("# something else\n");
    EXPECT_THROW(read_state(in), Error);
}

}  // namespace
}  // namespace qprod
