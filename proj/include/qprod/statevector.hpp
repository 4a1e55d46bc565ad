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
 * Dense statevector over the composite register |s>|p>|h>: initial-state
 * index s, production-sequence index p (base-b digits, first production most
 * significant) and a single halt qubit h, stored least significant.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qprod/production.hpp"

namespace qprod {

using Amplitude = std::complex<double>;
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits of one draw; identical on
/// every platform, unlike std::uniform_real_distribution.
double uniform01(Rng &rng);

struct StateDims {
    std::size_t num_s = 1;
    std::size_t b = 1;
    std::size_t d = 0;

    bool operator==(const StateDims &) const = default;
};

struct BasisIndex {
    std::uint64_t s = 0;
    std::uint64_t p = 0;
    unsigned h = 0;

    bool operator==(const BasisIndex &) const = default;
};

class QuantumState {
   public:
    /// All-zero amplitudes; callers fill them in. Throws SizeLimit past `cap`.
    explicit QuantumState(StateDims dims, std::uint64_t cap = kDefaultSimulationCap);
    QuantumState(StateDims dims, std::vector<Amplitude> amplitudes, std::uint64_t cap = kDefaultSimulationCap);

    static QuantumState basis(StateDims dims, BasisIndex index, std::uint64_t cap = kDefaultSimulationCap);

    const StateDims &dims() const { return dims_; }
    /// b^d, the production-register dimension.
    std::uint64_t paths() const { return paths_; }
    /// num_s * b^d, the work-register dimension.
    std::uint64_t work_size() const { return num_s() * paths_; }
    std::uint64_t num_s() const { return dims_.num_s; }
    std::size_t size() const { return amplitudes_.size(); }

    std::uint64_t flat(const BasisIndex &index) const;
    BasisIndex unflat(std::uint64_t flat) const;

    Amplitude &operator[](std::uint64_t flat) { return amplitudes_[flat]; }
    const Amplitude &operator[](std::uint64_t flat) const { return amplitudes_[flat]; }
    Amplitude &at(std::uint64_t s, std::uint64_t p, unsigned h) { return amplitudes_[flat({s, p, h})]; }
    const Amplitude &at(std::uint64_t s, std::uint64_t p, unsigned h) const { return amplitudes_[flat({s, p, h})]; }

    std::span<Amplitude> amplitudes() { return amplitudes_; }
    std::span<const Amplitude> amplitudes() const { return amplitudes_; }

    /// Sum of |amplitude|^2, accumulated in index order.
    double norm_squared() const;

   private:
    StateDims dims_;
    std::uint64_t paths_;
    std::vector<Amplitude> amplitudes_;
};

/// Work register fixed at s = 0, uniform over all b^d production sequences, h = 0.
QuantumState uniform_superposition(std::size_t b, std::size_t d, std::uint64_t cap = kDefaultSimulationCap);

/// Uniform over `num_s` initial-state indices with an empty production register, h = 0.
QuantumState uniform_inputs(std::size_t num_s, std::uint64_t cap = kDefaultSimulationCap);

/// Tensors the halt qubit into (|0> - |1>)/sqrt(2). The state must have no
/// support on h = 1.
void prepare_halt_minus(QuantumState &state);

struct Measurement {
    BasisIndex outcome;
    QuantumState collapsed;
};

/// Born-rule sample of a flat index. Throws NormDrift if the norm is off by more than 1e-6.
std::uint64_t sample_index(const QuantumState &state, Rng &rng);
Measurement measure(const QuantumState &state, Rng &rng);

double halt_probability(const QuantumState &state, unsigned k);

struct Projection {
    double probability = 0.0;
    QuantumState state;
};

/// Projects the halt qubit onto |k> and renormalizes. Throws ZeroProbability
/// when P(k) < 1e-12.
Projection project_halt(const QuantumState &state, unsigned k);

struct DeutschDemoReport {
    std::vector<std::string> inputs;
    /// Steps each input needs to reach a goal; nullopt when it does not halt
    /// within the observation horizon.
    std::vector<std::optional<std::size_t>> steps_to_halt;
    std::size_t depth = 0;
    QuantumState before;
    double p0 = 0.0;
    double p1 = 0.0;
    std::optional<QuantumState> after0;
    std::optional<QuantumState> after1;
    /// Set by observe_halt.
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> observed_h;
};

/// Evolves a uniform superposition of inputs for `depth` steps, flipping the
/// halt qubit of each input at the step where it halts, then reports the
/// halt-qubit statistics and both projected branches.
DeutschDemoReport deutsch_flaw_demo(
    std::span<const std::optional<std::size_t>> steps_to_halt, std::size_t depth,
    std::uint64_t cap = kDefaultSimulationCap);

/// Same, with inputs = the system's initial states and one step = one firing
/// of the first applicable rule.
DeutschDemoReport deutsch_flaw_demo(
    const ProductionSystem &system, std::size_t depth, std::size_t horizon = 64,
    std::uint64_t cap = kDefaultSimulationCap);

/// Samples the halt-qubit outcome once with Rng(seed) and records it.
void observe_halt(DeutschDemoReport &report, std::uint64_t seed);

}  // namespace qprod
