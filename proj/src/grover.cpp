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

#include "qprod/grover.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <utility>

#include "qprod/error.hpp"

namespace qprod {

Oracle::Oracle(std::vector<std::uint8_t> marks) : marks_(std::move(marks)) {
    if (marks_.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "oracle domain must be non-empty");
    }
}

Oracle Oracle::from_predicate(std::uint64_t domain_size, const std::function<bool(std::uint64_t)> &predicate) {
    std::vector<std::uint8_t> marks(domain_size);
    for (std::uint64_t w = 0; w < domain_size; ++w) marks[w] = predicate(w) ? 1 : 0;
    return Oracle(std::move(marks));
}

Oracle Oracle::from_system(
    const ProductionSystem &system, const WorkingMemory &start, std::size_t d, std::uint64_t cap) {
    return Oracle(mark_halting_paths(system, start, d, cap));
}

void apply_oracle(QuantumState &state, const Oracle &oracle) {
    if (oracle.domain_size() != state.work_size()) {
        throw Error(
            ErrorCode::kInvalidArgument,
            "oracle domain " + std::to_string(oracle.domain_size()) + " does not match work register " +
                std::to_string(state.work_size()));
    }
    auto amps = state.amplitudes();
    for (std::uint64_t w = 0; w < oracle.domain_size(); ++w) {
        if (oracle.marked(w)) std::swap(amps[2 * w], amps[2 * w + 1]);
    }
}

void apply_diffusion(QuantumState &state, double reflection) {
    auto amps = state.amplitudes();
    const std::uint64_t n = state.work_size();
    for (unsigned h = 0; h < 2; ++h) {
        Amplitude sum{};
        for (std::uint64_t w = 0; w < n; ++w) sum += amps[2 * w + h];
        const Amplitude scaled_mean = reflection * sum / static_cast<double>(n);
        for (std::uint64_t w = 0; w < n; ++w) amps[2 * w + h] = scaled_mean - amps[2 * w + h];
    }
}

void grover_iterate(QuantumState &state, const Oracle &oracle, double reflection) {
    apply_oracle(state, oracle);
    apply_diffusion(state, reflection);
}

GroverConfig GroverConfig::make(std::uint64_t n, std::uint64_t k, std::uint64_t m) {
    if (n == 0 || k > n) {
        throw Error(ErrorCode::kInvalidArgument, "need 0 <= k <= N and N >= 1");
    }
    const double ratio = static_cast<double>(n - k) / static_cast<double>(n);
    return GroverConfig{n, k, m, 2.0 * std::acos(std::sqrt(ratio))};
}

std::uint64_t optimal_iterations(std::uint64_t n, std::uint64_t k) {
    if (k == 0) {
        throw Error(ErrorCode::kKZero, "no marked items: the iterate count is undefined");
    }
    if (k > n) {
        throw Error(ErrorCode::kInvalidArgument, "k exceeds N");
    }
    const double m = std::numbers::pi / 4.0 * std::sqrt(static_cast<double>(n) / static_cast<double>(k));
    return static_cast<std::uint64_t>(std::max(0.0, std::floor(m)));
}

std::uint64_t faithful_iterations(std::uint64_t n) {
    auto m = static_cast<std::uint64_t>(std::floor(std::sqrt(static_cast<double>(n))));
    // Guard the floating sqrt at perfect squares.
    while ((m + 1) * (m + 1) <= n) ++m;
    while (m * m > n) --m;
    return m;
}

double predicted_success_paper(std::uint64_t b, std::uint64_t d, std::uint64_t k) {
    const double n = std::pow(static_cast<double>(b), static_cast<double>(d));
    if (k == 0 || static_cast<double>(k) > n) {
        throw Error(ErrorCode::kInvalidArgument, "the closed form needs 1 <= k <= b^d");
    }
    const double kk = static_cast<double>(k);
    const double theta = 2.0 * std::acos(std::sqrt((n - kk) / n));
    const double s = std::sin(theta / 2.0 * (std::numbers::pi / 2.0 * std::sqrt(n / kk) + 1.0));
    return s * s;
}

double predicted_success_exact(std::uint64_t n, std::uint64_t k, std::uint64_t m) {
    if (n == 0 || k > n) {
        throw Error(ErrorCode::kInvalidArgument, "need 0 <= k <= N and N >= 1");
    }
    const double half_angle = std::asin(std::sqrt(static_cast<double>(k) / static_cast<double>(n)));
    const double s = std::sin(static_cast<double>(2 * m + 1) * half_angle);
    return s * s;
}

std::uint64_t count_solutions(const Oracle &oracle) {
    return static_cast<std::uint64_t>(std::count_if(
        oracle.marks().begin(), oracle.marks().end(), [](std::uint8_t v) { return v != 0; }));
}

double marked_probability(const QuantumState &state, const Oracle &oracle) {
    if (oracle.domain_size() != state.work_size()) {
        throw Error(ErrorCode::kInvalidArgument, "oracle domain does not match work register");
    }
    auto amps = state.amplitudes();
    double total = 0.0;
    for (std::uint64_t w = 0; w < oracle.domain_size(); ++w) {
        if (oracle.marked(w)) total += std::norm(amps[2 * w]) + std::norm(amps[2 * w + 1]);
    }
    return total;
}

double simulate_marked_mass(std::uint64_t n, std::uint64_t k, std::uint64_t m, double reflection, std::uint64_t cap) {
    // A single base-N digit gives a production register of exactly N values.
    QuantumState state = uniform_superposition(static_cast<std::size_t>(n), 1, cap);
    prepare_halt_minus(state);
    Oracle oracle = Oracle::from_predicate(n, [k](std::uint64_t w) { return w < k; });
    for (std::uint64_t i = 0; i < m; ++i) grover_iterate(state, oracle, reflection);
    return marked_probability(state, oracle);
}

PredictionRow predict(std::uint64_t b, std::uint64_t d, std::uint64_t k, std::uint64_t cap) {
    PredictionRow row;
    auto n = checked_power(b, static_cast<std::size_t>(d), std::numeric_limits<std::uint64_t>::max());
    if (!n) throw Error(ErrorCode::kSizeLimit, "b^d does not fit in 64 bits");
    if (k > *n) throw Error(ErrorCode::kInvalidArgument, "k exceeds b^d");
    row.n = *n;
    row.k = k;
    row.m = k == 0 ? 0 : optimal_iterations(row.n, k);
    if (k > 0) row.paper = predicted_success_paper(b, d, k);
    row.exact = predicted_success_exact(row.n, k, row.m);
    if (row.n <= cap / 2) row.simulated = simulate_marked_mass(row.n, k, row.m, 2.0, cap);
    return row;
}

void write_prediction_csv(std::ostream &out, std::span<const PredictionRow> rows) {
    out << "N,k,m,paper_formula,exact_formula,simulated\n";
    const auto old_precision = out.precision(12);
    for (const auto &row : rows) {
        out << row.n << ',' << row.k << ',' << row.m << ',';
        if (row.paper) {
            out << *row.paper;
        } else {
            out << "n/a";
        }
        out << ',' << row.exact << ',';
        if (row.simulated) {
            out << *row.simulated;
        } else {
            out << "skipped";
        }
        out << '\n';
    }
    out.precision(old_precision);
}

}  // namespace qprod
