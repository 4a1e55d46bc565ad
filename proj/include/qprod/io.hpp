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
 * File formats. Everything except the state dump is JSON.
 *
 * Production system:
 *   {"alphabet": ["a", "b"], "rules": [{"pre": "a", "post": "b"}],
 *    "initial": ["a"], "goals": ["b"], "max_memory_len": 64,
 *    "rule_match": "leftmost", "goal_match": "exact"}
 * The last two keys are optional. Unknown keys are rejected.
 *
 * Turing machine:
 *   {"states": ["S", "H"], "start": "S", "halts": ["H"], "blank": "_",
 *    "tape_alphabet": ["_", "1"], "delta": [["S", "1", "H", "1", "R"]],
 *    "tape_window": 16}
 *
 * Search report: see report_to_json for the key list. "wall_time_ms" is the
 * only nondeterministic key and is left out when timestamps are suppressed.
 *
 * State dump (text, one amplitude per row, %.17g):
 *   # qprod-state v1 <num_s> <b> <d>
 *   <flat index> <real> <imag>
 * Rows with a zero amplitude may be omitted.
 */

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "qprod/production.hpp"
#include "qprod/qid.hpp"
#include "qprod/statevector.hpp"
#include "qprod/turing.hpp"

namespace qprod {

/// Parse failures throw Error(kParse) whose message names the field path
/// (e.g. "rules[2].pre") or the line and column of a syntax error.
ProductionSystem parse_system(std::string_view text);
std::string dump_system(const ProductionSystem &system);

TuringMachine parse_tm(std::string_view text);
std::string dump_tm(const TuringMachine &tm);

std::string dump_report(const SearchReport &report, bool with_wall_time = true);
SearchReport parse_report(std::string_view text);

/// JSON with both branches' probabilities and amplitudes.
std::string dump_demo(const DeutschDemoReport &report);
/// Plain-text rendering of the same report.
std::string render_demo(const DeutschDemoReport &report);

void write_state(std::ostream &out, const QuantumState &state);
QuantumState read_state(std::istream &in, std::uint64_t cap = kDefaultSimulationCap);

std::string read_file(const std::filesystem::path &path);
void write_file(const std::filesystem::path &path, std::string_view content);

}  // namespace qprod
