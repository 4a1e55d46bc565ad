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

#include "qprod/qid.hpp"

#include <chrono>
#include <cmath>

#include "qprod/error.hpp"
#include "qprod/statevector.hpp"

namespace qprod {

std::size_t default_depth_cap(std::size_t b, std::uint64_t cap) {
    if (b <= 1) return 64;
    std::size_t d = 0;
    while (checked_power(b, d + 1, cap / 2)) ++d;
    return d;
}

std::uint64_t depth_seed(std::uint64_t master_seed, std::size_t d) {
    // splitmix64 finalizer
    std::uint64_t z = master_seed + (static_cast<std::uint64_t>(d) + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

OracleCache::OracleCache(const ProductionSystem &system, WorkingMemory start, std::uint64_t cap)
    : system_(system), start_(std::move(start)), cap_(cap) {
}

const Oracle &OracleCache::at_depth(std::size_t d) {
    auto it = oracles_.find(d);
    if (it == oracles_.end()) {
        it = oracles_.emplace(d, Oracle::from_system(system_, start_, d, cap_ / 2)).first;
        counts_[d] = count_solutions(it->second);
    }
    return it->second;
}

std::uint64_t OracleCache::solutions_at_depth(std::size_t d) {
    at_depth(d);
    return counts_.at(d);
}

namespace {

std::uint64_t plan_iterations(const QidConfig &config, std::uint64_t n, std::uint64_t k, std::uint64_t &k_used) {
    k_used = config.counting_mode == CountingMode::kExact ? k : 1;
    if (k_used == 0) {
        if (config.skip_empty_depths) return 0;
        // Run the worst-case single-solution schedule anyway.
        return config.iterate_policy == IteratePolicy::kFaithful ? faithful_iterations(n) : optimal_iterations(n, 1);
    }
    return config.iterate_policy == IteratePolicy::kFaithful ? faithful_iterations(n) : optimal_iterations(n, k_used);
}

}  // namespace

SearchReport quantum_iterative_deepening(
    const ProductionSystem &system, const WorkingMemory &start, const QidConfig &config) {
    OracleCache cache(system, start, config.simulation_cap);
    return quantum_iterative_deepening(system, start, config, cache);
}

SearchReport quantum_iterative_deepening(
    const ProductionSystem &system, const WorkingMemory &start, const QidConfig &config, OracleCache &cache) {
    const auto t0 = std::chrono::steady_clock::now();
    SearchReport report;
    report.start = start.content();
    report.branching = system.branching();
    report.config = config;

    const std::size_t b = system.branching();
    for (std::size_t d = 0; d <= config.depth_cap; ++d) {
        QuantumState state = uniform_superposition(b, d, config.simulation_cap);
        prepare_halt_minus(state);
        const Oracle &oracle = cache.at_depth(d);

        DepthRecord rec;
        rec.d = d;
        rec.n = state.paths();
        rec.k = cache.solutions_at_depth(d);
        rec.m = plan_iterations(config, rec.n, rec.k, rec.k_used);
        for (std::uint64_t i = 0; i < rec.m; ++i) grover_iterate(state, oracle, 2.0);
        rec.oracle_calls = rec.m;
        rec.predicted = rec.k > 0 ? predicted_success_exact(rec.n, rec.k, rec.m) : 0.0;

        Rng rng(depth_seed(config.seed, d));
        const BasisIndex outcome = state.unflat(sample_index(state, rng));
        rec.measured_index = outcome.p;
        rec.measured_h = outcome.h;
        rec.measured_sequence = path_from_index(outcome.p, b, d);
        rec.halted = oracle.marked(outcome.p);
        report.total_oracle_calls += rec.oracle_calls;
        report.per_depth.push_back(rec);

        if (rec.halted) {
            // Replay the measured sequence classically to recover the goal.
            HaltEvaluation replay = evaluate_halting(system, start, rec.measured_sequence);
            if (!replay.halts) {
                throw Error(ErrorCode::kInvalidArgument, "oracle table disagrees with classical replay");
            }
            report.found = true;
            report.witness = rec.measured_sequence;
            report.goal_state = replay.goal;
            report.d_star = d;
            report.halting_prefix = *replay.halt_depth;
            break;
        }
    }
    report.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

OracleAccounting account_oracle_calls(const SearchReport &report) {
    OracleAccounting out;
    for (const auto &rec : report.per_depth) out.total += rec.oracle_calls;
    const std::size_t d_final = report.per_depth.empty() ? 0 : report.per_depth.back().d;
    const double root = std::sqrt(std::pow(static_cast<double>(report.branching), static_cast<double>(d_final)));
    out.bound = static_cast<std::uint64_t>(std::ceil(4.0 * root));
    out.ratio = static_cast<double>(out.total) / root;
    out.within_bound = static_cast<double>(out.total) <= 4.0 * root;
    return out;
}

std::vector<RetryRow> retry_statistics(
    const ProductionSystem &system, const WorkingMemory &start, const QidConfig &config, std::uint64_t trials) {
    if (trials < 1) {
        throw Error(ErrorCode::kInvalidArgument, "retry_statistics needs at least one trial");
    }
    OracleCache cache(system, start, config.simulation_cap);
    std::map<std::size_t, RetryRow> rows;
    for (std::uint64_t t = 0; t < trials; ++t) {
        QidConfig trial_config = config;
        trial_config.seed = config.seed + t;
        SearchReport report = quantum_iterative_deepening(system, start, trial_config, cache);
        for (const auto &rec : report.per_depth) {
            if (rec.k == 0) continue;
            RetryRow &row = rows[rec.d];
            row.d = rec.d;
            row.n = rec.n;
            row.k = rec.k;
            row.m = rec.m;
            row.predicted_failure = 1.0 - rec.predicted;
            ++row.trials_reached;
            if (!rec.halted) ++row.failures;
        }
    }
    std::vector<RetryRow> out;
    for (auto &[d, row] : rows) {
        row.failure_frequency = static_cast<double>(row.failures) / static_cast<double>(row.trials_reached);
        out.push_back(row);
    }
    return out;
}

}  // namespace qprod
