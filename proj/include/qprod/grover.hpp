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

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "qprod/production.hpp"
#include "qprod/statevector.hpp"

namespace qprod {

/// Marking table f(w) over the work register, w in [0, N).
class Oracle {
   public:
    explicit Oracle(std::vector<std::uint8_t> marks);

    static Oracle from_predicate(std::uint64_t domain_size, const std::function<bool(std::uint64_t)> &predicate);

    /// f(p) = halting_predicate(system, start, p) over all depth-d sequences.
    static Oracle from_system(
        const ProductionSystem &system, const WorkingMemory &start, std::size_t d,
        std::uint64_t cap = kDefaultSimulationCap);

    std::uint64_t domain_size() const { return marks_.size(); }
    bool marked(std::uint64_t w) const { return marks_[w] != 0; }
    std::span<const std::uint8_t> marks() const { return marks_; }

   private:
    std::vector<std::uint8_t> marks_;
};

/// |w>|h> -> |w>|h xor f(w)>. With h in the minus state this flips the sign
/// of every marked w.
void apply_oracle(QuantumState &state, const Oracle &oracle);

/// Reflection `reflection * |mean><mean| - I` over the work register, applied
/// separately to each halt value. 2.0 is the unitary diffusion; any other value
/// is only useful for fault injection.
void apply_diffusion(QuantumState &state, double reflection = 2.0);

void grover_iterate(QuantumState &state, const Oracle &oracle, double reflection = 2.0);

struct GroverConfig {
    std::uint64_t n = 0;
    std::uint64_t k = 0;
    std::uint64_t m = 0;
    double theta = 0.0;  // 2 * arccos(sqrt((N - k) / N))

    static GroverConfig make(std::uint64_t n, std::uint64_t k, std::uint64_t m);
};

/// floor((pi / 4) * sqrt(N / k)). Throws KZero when k == 0.
std::uint64_t optimal_iterations(std::uint64_t n, std::uint64_t k);

/// floor(sqrt(N)), the iterate count written literally in the QID loop.
std::uint64_t faithful_iterations(std::uint64_t n);

/// sin^2(theta/2 * (pi/2 * sqrt(b^d / k) + 1)), theta = 2 arccos(sqrt((b^d - k) / b^d)),
/// evaluated as printed.
double predicted_success_paper(std::uint64_t b, std::uint64_t d, std::uint64_t k);

/// sin^2((2m + 1) * arcsin(sqrt(k / N))): marked mass after m iterates from uniform.
double predicted_success_exact(std::uint64_t n, std::uint64_t k, std::uint64_t m);

/// Exact classical count of marked values; stands in for quantum counting.
std::uint64_t count_solutions(const Oracle &oracle);

/// Total probability on marked work values (both halt values).
double marked_probability(const QuantumState &state, const Oracle &oracle);

/// Statevector run: uniform start over N items, first k marked, h prepared in
/// the minus state, m Grover iterates. Returns the marked mass.
double simulate_marked_mass(
    std::uint64_t n, std::uint64_t k, std::uint64_t m, double reflection = 2.0,
    std::uint64_t cap = kDefaultSimulationCap);

struct PredictionRow {
    std::uint64_t n = 0;
    std::uint64_t k = 0;
    std::uint64_t m = 0;
    std::optional<double> paper;      // undefined for k = 0
    double exact = 0.0;
    std::optional<double> simulated;  // absent past the simulation cap
};

/// One row of the probability table for search-space size b^d with k solutions,
/// using the optimal iterate count (0 when k = 0).
PredictionRow predict(std::uint64_t b, std::uint64_t d, std::uint64_t k, std::uint64_t cap = kDefaultSimulationCap);

/// CSV with header "N,k,m,paper_formula,exact_formula,simulated"; missing
/// values are written as "n/a" (closed form) and "skipped" (simulated).
void write_prediction_csv(std::ostream &out, std::span<const PredictionRow> rows);

}  // namespace qprod
