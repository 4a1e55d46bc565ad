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

#include "qprod/samples.hpp"

#include <random>
#include <string_view>

#include "qprod/error.hpp"

namespace qprod::samples {

namespace {

/// Rows are five-character strings "state read next write move".
TuringMachine machine(
    std::string_view states, char start, std::string_view halts, char blank, std::string_view tape,
    std::initializer_list<std::string_view> rows, std::size_t window) {
    std::vector<Transition> delta;
    for (auto row : rows) delta.push_back(Transition{row[0], row[1], row[2], row[3], parse_move(row.substr(4, 1))});
    return TuringMachine(
        {states.begin(), states.end()}, start, {halts.begin(), halts.end()}, blank, {tape.begin(), tape.end()},
        std::move(delta), window);
}

constexpr std::string_view kRandomSymbols = "abc";

std::string random_word(std::mt19937_64 &rng, std::size_t min_len, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(min_len, max_len);
    std::uniform_int_distribution<std::size_t> sym(0, kRandomSymbols.size() - 1);
    std::string out(len(rng), ' ');
    for (auto &c : out) c = kRandomSymbols[sym(rng)];
    return out;
}

}  // namespace

ProductionSystem tree_system() {
    return ProductionSystem(
        Alphabet({'A', '0', '1', '.'}), {Rule(".", "0."), Rule(".", "1.")}, {"A."}, {"A010."}, 16);
}

std::uint64_t tree_node_label(const RuleSequence &seq) {
    std::uint64_t node = 0;
    for (auto r : seq.indices) node = 2 * node + 1 + r;
    return node;
}

ProductionSystem deutsch_system() {
    return ProductionSystem(
        Alphabet({'a', 'b', 'c'}), {Rule("ab", "b")}, {"ab", "aab", "aaaaab", "caaaaab"}, {"b", "cb"}, 16);
}

ProductionSystem unsatisfiable_system(std::size_t b) {
    return ProductionSystem(Alphabet({'#', 'g'}), std::vector<Rule>(b, Rule("#", "#")), {"#"}, {"g"}, 4);
}

RandomCase random_system(std::uint64_t seed, std::size_t b, std::size_t max_depth) {
    constexpr std::size_t kMaxLen = 16;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> walk_len(1, max_depth);
    std::uniform_int_distribution<std::size_t> pick(0, b - 1);
    const Alphabet alphabet({'a', 'b', 'c'});
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<Rule> rules;
        for (std::size_t i = 0; i < b; ++i) rules.emplace_back(random_word(rng, 1, 2), random_word(rng, 0, 3));
        const std::string start = random_word(rng, 2, 4);

        // Random walk to pick a reachable goal.
        ProductionSystem walker(alphabet, rules, {start}, {start}, kMaxLen);
        WorkingMemory memory = walker.memory(start);
        const std::size_t steps = walk_len(rng);
        bool stuck = false;
        for (std::size_t s = 0; s < steps && !stuck; ++s) {
            std::optional<WorkingMemory> next;
            for (std::size_t tries = 0; tries < 4 * b && !next; ++tries) {
                try {
                    next = walker.apply(memory, pick(rng));
                } catch (const Error &) {
                    break;
                }
            }
            if (next) {
                memory = *next;
            } else {
                stuck = true;
            }
        }
        if (stuck || memory.content() == start || memory.content().empty()) continue;

        ProductionSystem system(alphabet, rules, {start}, {memory.content()}, kMaxLen);
        ClassicalSearchResult classical = classical_ids(system, system.memory(start), max_depth);
        // Keep only walks with no shortcut, so d_star is spread over 1..max_depth.
        if (!classical.found() || classical.d_star != steps) continue;
        return RandomCase{std::move(system), start, classical.d_star, seed};
    }
    throw Error(ErrorCode::kInvalidArgument, "random_system: no usable system found");
}

TuringMachine unary_increment() {
    return machine("SRH", 'S', "H", '_', "1_", {"S1S1R", "S_R1L", "R1H1S", "R_H_S"}, 16);
}

std::vector<SampleMachine> sample_machines() {
    std::vector<SampleMachine> out;
    out.push_back(SampleMachine{
        "unary-increment",
        unary_increment(),
        {"", "1", "11", "111", "1111", "11111", "111111", "1111111", "11111111", "111111111111"}});
    out.push_back(SampleMachine{
        "binary-increment",
        machine("rch", 'r', "h", '_', "01_",
                {"r0r0R", "r1r1R", "r_c_L", "c1c0L", "c0h1S", "c_h1S"}, 16),
        {"0", "1", "10", "11", "101", "111", "1011", "1111", "100111", "11111111", "0000"}});
    out.push_back(SampleMachine{
        "bit-inverter",
        machine("ih", 'i', "h", '_', "01_", {"i0i1R", "i1i0R", "i_h_S"}, 16),
        {"", "0", "1", "01", "10", "0110", "1111", "0000", "1010101", "110010011"}});
    out.push_back(SampleMachine{
        "unary-addition",
        machine("xyzh", 'x', "h", '_', "1+_",
                {"x1x1R", "x+y1R", "x_h_S", "y1y1R", "y+h+S", "y_z_L", "z1h_S", "z+h+S", "z_h_S"}, 16),
        {"+", "1+", "+1", "1+1", "11+1", "1+11", "11+11", "111+1", "1+111", "111+111", "1111+11"}});
    out.push_back(SampleMachine{
        "parity",
        machine("pqh", 'p', "h", '_', "01_EO",
                {"p0p0R", "p1q1R", "p_hES", "pEhES", "pOhOS", "q0q0R", "q1p1R", "q_hOS", "qEhES", "qOhOS"}, 16),
        {"", "0", "1", "11", "101", "111", "1001", "10110", "1111111", "0000000001"}});
    out.push_back(SampleMachine{
        "busy-beaver-2",
        machine("ABH", 'A', "H", '0', "01", {"A0B1R", "A1B1L", "B0A1L", "B1H1R"}, 8),
        {"", "0", "1", "00", "01", "10", "11", "000", "010", "0000"}});
    return out;
}

}  // namespace qprod::samples
