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
 * The acceptance checks, shared by the acceptance test binary and
 * `qprod verify`. Every check is deterministic: all draws come from fixed seeds.
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qprod/production.hpp"
#include "qprod/turing.hpp"

namespace qprod::acceptance {

struct Options {
    /// Diffusion reflection used by the statevector checks. Anything other
    /// than 2.0 is a deliberate fault.
    double diffusion_reflection = 2.0;
    /// Receives the gap table and per-check diagnostics; may be null.
    std::ostream *log = nullptr;
};

struct CheckResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

CheckResult check_grover_correctness(const Options &options);
CheckResult check_paper_formula(const Options &options);
CheckResult check_qid_vs_classical(const Options &options);
CheckResult check_oracle_call_bound(const Options &options);
CheckResult check_tm_bisimulation(const Options &options);
CheckResult check_deutsch_demo(const Options &options);
CheckResult check_measurement_statistics(const Options &options);
CheckResult check_unitarity(const Options &options);

std::vector<CheckResult> run_all(const Options &options);

/// "PASS  3  name  (detail, 1.23 s)"
std::string format_result(const CheckResult &result);

struct BisimulationResult {
    bool matched = false;
    std::uint64_t steps = 0;
    bool halted = false;      // both sides reached a halt state
    bool overflowed = false;  // both sides ran out of tape at the same step
    std::string detail;       // first mismatch, if any
};

/// Steps tm and compile(tm, {input}) in lockstep, decoding each compiled
/// memory back to a configuration and comparing it with the machine's.
BisimulationResult bisimulate(const TuringMachine &tm, const std::string &input, std::uint64_t max_steps);

/// Chi-square goodness of fit of `counts` against `probabilities`, pooling
/// cells with expected count below 5. Returns the upper-tail p-value.
double chi_square_p_value(const std::vector<std::uint64_t> &counts, const std::vector<double> &probabilities);

}  // namespace qprod::acceptance
