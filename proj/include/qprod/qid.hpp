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
 * Quantum iterative deepening: for d = 0, 1, ... build the uniform
 * superposition over all depth-d rule sequences, put the halt qubit in the
 * minus state, amplify the prefix-halting sequences with Grover iterates and
 * measure. A halting measurement ends the search; otherwise the superposition
 * is rebuilt from scratch one level deeper.
 *
 * Each depth draws from its own generator seeded with
 * depth_seed(master, d) = splitmix64(master + (d + 1) * 0x9E3779B97F4A7C15),
 * so any single depth can be replayed in isolation.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qprod/grover.hpp"
#include "qprod/production.hpp"

namespace qprod {

enum class CountingMode {
    kExact,      // k from classical enumeration of the oracle
    kAssumeOne,  // always plan for a single solution
};

enum class IteratePolicy {
    kOptimal,   // floor(pi/4 * sqrt(N/k))
    kFaithful,  // floor(sqrt(N))
};

struct QidConfig {
    std::size_t depth_cap = 0;
    std::uint64_t seed = 0;
    CountingMode counting_mode = CountingMode::kExact;
    IteratePolicy iterate_policy = IteratePolicy::kOptimal;
    /// With exact counting, skip the iterates at depths where k = 0 (the
    /// uniform state is a fixed point there, so statistics are unchanged).
    bool skip_empty_depths = true;
    std::uint64_t simulation_cap = kDefaultSimulationCap;
};

/// Largest d with 2 * b^d within the simulation cap.
std::size_t default_depth_cap(std::size_t b, std::uint64_t cap = kDefaultSimulationCap);

std::uint64_t depth_seed(std::uint64_t master_seed, std::size_t d);

struct DepthRecord {
    std::size_t d = 0;
    std::uint64_t n = 0;
    std::uint64_t k = 0;       // true number of halting sequences
    std::uint64_t k_used = 0;  // what the iterate count was planned for
    std::uint64_t m = 0;
    double predicted = 0.0;    // predicted_success_exact(N, k, m), 0 when k = 0
    std::uint64_t measured_index = 0;
    unsigned measured_h = 0;
    RuleSequence measured_sequence;
    bool halted = false;
    std::uint64_t oracle_calls = 0;
};

struct SearchReport {
    static constexpr int kSchemaVersion = 1;

    std::string start;
    std::size_t branching = 0;
    QidConfig config;
    bool found = false;
    RuleSequence witness;
    std::optional<std::string> goal_state;
    std::size_t d_star = 0;             // depth of the successful measurement
    std::size_t halting_prefix = 0;     // shortest halting prefix of the witness
    std::vector<DepthRecord> per_depth;
    std::uint64_t total_oracle_calls = 0;
    double wall_time_ms = 0.0;
};

/// Per-depth oracle tables for one (system, start) pair, built on first use.
class OracleCache {
   public:
    OracleCache(const ProductionSystem &system, WorkingMemory start, std::uint64_t cap = kDefaultSimulationCap);

    const Oracle &at_depth(std::size_t d);
    std::uint64_t solutions_at_depth(std::size_t d);

   private:
    const ProductionSystem &system_;
    WorkingMemory start_;
    std::uint64_t cap_;
    std::map<std::size_t, Oracle> oracles_;
    std::map<std::size_t, std::uint64_t> counts_;
};

/// Throws SizeLimit if a depth's statevector would exceed the cap.
SearchReport quantum_iterative_deepening(
    const ProductionSystem &system, const WorkingMemory &start, const QidConfig &config);
SearchReport quantum_iterative_deepening(
    const ProductionSystem &system, const WorkingMemory &start, const QidConfig &config, OracleCache &cache);

struct OracleAccounting {
    std::uint64_t total = 0;
    std::uint64_t bound = 0;  // ceil(4 * sqrt(b^d_final))
    double ratio = 0.0;       // total / sqrt(b^d_final)
    bool within_bound = false;
};

OracleAccounting account_oracle_calls(const SearchReport &report);

struct RetryRow {
    std::size_t d = 0;
    std::uint64_t n = 0;
    std::uint64_t k = 0;
    std::uint64_t m = 0;
    std::uint64_t trials_reached = 0;
    std::uint64_t failures = 0;
    double failure_frequency = 0.0;
    double predicted_failure = 0.0;  // 1 - predicted_success_exact(N, k, m)
};

/// Runs the driver with seeds config.seed + t for t in [0, trials) and tabulates
/// how often a depth with k > 0 was reached but measured non-halting.
std::vector<RetryRow> retry_statistics(
    const ProductionSystem &system, const WorkingMemory &start, const QidConfig &config, std::uint64_t trials);

}  // namespace qprod
