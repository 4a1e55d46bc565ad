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

#include "qprod/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "qprod/error.hpp"

namespace qprod {

namespace {

constexpr double kNormDriftTolerance = 1e-6;
constexpr double kZeroProbability = 1e-12;

std::uint64_t checked_size(const StateDims &dims, std::uint64_t cap) {
    if (dims.num_s == 0 || dims.b == 0) {
        throw Error(ErrorCode::kInvalidArgument, "state dimensions must be positive");
    }
    const std::uint64_t paths = path_count(dims.b, dims.d, cap);
    if (paths > cap / 2 / dims.num_s) {
        throw Error(ErrorCode::kSizeLimit, "statevector dimension exceeds the simulation cap of " + std::to_string(cap));
    }
    return paths;
}

}  // namespace

double uniform01(Rng &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

QuantumState::QuantumState(StateDims dims, std::uint64_t cap)
    : dims_(dims), paths_(checked_size(dims, cap)), amplitudes_(dims.num_s * paths_ * 2) {
}

QuantumState::QuantumState(StateDims dims, std::vector<Amplitude> amplitudes, std::uint64_t cap)
    : dims_(dims), paths_(checked_size(dims, cap)), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != dims_.num_s * paths_ * 2) {
        throw Error(
            ErrorCode::kInvalidArgument,
            "expected " + std::to_string(dims_.num_s * paths_ * 2) + " amplitudes, got " +
                std::to_string(amplitudes_.size()));
    }
}

QuantumState QuantumState::basis(StateDims dims, BasisIndex index, std::uint64_t cap) {
    QuantumState state(dims, cap);
    state[state.flat(index)] = 1.0;
    return state;
}

std::uint64_t QuantumState::flat(const BasisIndex &index) const {
    if (index.s >= dims_.num_s || index.p >= paths_ || index.h > 1) {
        throw Error(ErrorCode::kInvalidArgument, "basis index out of range");
    }
    return (index.s * paths_ + index.p) * 2 + index.h;
}

BasisIndex QuantumState::unflat(std::uint64_t flat) const {
    if (flat >= amplitudes_.size()) {
        throw Error(ErrorCode::kInvalidArgument, "flat index out of range");
    }
    BasisIndex index;
    index.h = static_cast<unsigned>(flat & 1);
    const std::uint64_t work = flat >> 1;
    index.p = work % paths_;
    index.s = work / paths_;
    return index;
}

double QuantumState::norm_squared() const {
    double total = 0.0;
    for (const auto &a : amplitudes_) total += std::norm(a);
    return total;
}

QuantumState uniform_superposition(std::size_t b, std::size_t d, std::uint64_t cap) {
    QuantumState state(StateDims{1, b, d}, cap);
    const double amp = 1.0 / std::sqrt(static_cast<double>(state.paths()));
    for (std::uint64_t p = 0; p < state.paths(); ++p) state.at(0, p, 0) = amp;
    return state;
}

QuantumState uniform_inputs(std::size_t num_s, std::uint64_t cap) {
    QuantumState state(StateDims{num_s, 1, 0}, cap);
    const double amp = 1.0 / std::sqrt(static_cast<double>(num_s));
    for (std::uint64_t s = 0; s < num_s; ++s) state.at(s, 0, 0) = amp;
    return state;
}

void prepare_halt_minus(QuantumState &state) {
    const double r = 1.0 / std::sqrt(2.0);
    auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); i += 2) {
        if (amps[i + 1] != Amplitude{}) {
            throw Error(ErrorCode::kInvalidArgument, "halt register is not |0>");
        }
        const Amplitude a = amps[i];
        amps[i] = a * r;
        amps[i + 1] = -a * r;
    }
}

std::uint64_t sample_index(const QuantumState &state, Rng &rng) {
    const double norm = state.norm_squared();
    if (std::abs(norm - 1.0) > kNormDriftTolerance) {
        throw Error(ErrorCode::kNormDrift, "pre-measurement norm is " + std::to_string(norm));
    }
    const double u = uniform01(rng) * norm;
    double cumulative = 0.0;
    auto amps = state.amplitudes();
    std::uint64_t last_supported = 0;
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        if (p == 0.0) continue;
        cumulative += p;
        last_supported = i;
        if (u < cumulative) return i;
    }
    // Rounding left u above the final partial sum.
    return last_supported;
}

Measurement measure(const QuantumState &state, Rng &rng) {
    const std::uint64_t flat = sample_index(state, rng);
    return Measurement{state.unflat(flat), QuantumState::basis(state.dims(), state.unflat(flat))};
}

double halt_probability(const QuantumState &state, unsigned k) {
    double total = 0.0;
    auto amps = state.amplitudes();
    for (std::size_t i = k; i < amps.size(); i += 2) total += std::norm(amps[i]);
    return total;
}

Projection project_halt(const QuantumState &state, unsigned k) {
    if (k > 1) throw Error(ErrorCode::kInvalidArgument, "halt outcome must be 0 or 1");
    const double probability = halt_probability(state, k);
    if (probability < kZeroProbability) {
        throw Error(ErrorCode::kZeroProbability, "P(" + std::to_string(k) + ") = " + std::to_string(probability));
    }
    Projection out{probability, QuantumState(state.dims())};
    const double scale = 1.0 / std::sqrt(probability);
    auto src = state.amplitudes();
    auto dst = out.state.amplitudes();
    for (std::size_t i = k; i < src.size(); i += 2) dst[i] = src[i] * scale;
    return out;
}

DeutschDemoReport deutsch_flaw_demo(
    std::span<const std::optional<std::size_t>> steps_to_halt, std::size_t depth, std::uint64_t cap) {
    if (steps_to_halt.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "the demo needs at least one input");
    }
    DeutschDemoReport report{
        {}, {steps_to_halt.begin(), steps_to_halt.end()}, depth, uniform_inputs(steps_to_halt.size(), cap), 0.0, 0.0, std::nullopt, std::nullopt, std::nullopt, std::nullopt};
    QuantumState &state = report.before;
    // C^depth, one step at a time: an input's halt qubit flips when it halts.
    for (std::size_t t = 0; t <= depth; ++t) {
        for (std::uint64_t s = 0; s < steps_to_halt.size(); ++s) {
            if (steps_to_halt[s] && *steps_to_halt[s] == t) {
                std::swap(state.at(s, 0, 0), state.at(s, 0, 1));
            }
        }
    }
    report.p0 = halt_probability(state, 0);
    report.p1 = halt_probability(state, 1);
    if (report.p0 >= 1e-12) report.after0 = project_halt(state, 0).state;
    if (report.p1 >= 1e-12) report.after1 = project_halt(state, 1).state;
    return report;
}

DeutschDemoReport deutsch_flaw_demo(
    const ProductionSystem &system, std::size_t depth, std::size_t horizon, std::uint64_t cap) {
    horizon = std::max(horizon, depth);
    std::vector<std::optional<std::size_t>> steps;
    for (const auto &input : system.initial_states()) {
        std::optional<std::size_t> halt_step;
        try {
            ControlRun run = run_first_applicable(system, system.memory(input), horizon);
            if (run.halted) halt_step = run.rules_applied.size();
        } catch (const Error &e) {
            if (e.code() != ErrorCode::kMemoryOverflow) throw;
        }
        steps.push_back(halt_step);
    }
    DeutschDemoReport report = deutsch_flaw_demo(steps, depth, cap);
    report.inputs = system.initial_states();
    return report;
}

void observe_halt(DeutschDemoReport &report, std::uint64_t seed) {
    Rng rng(seed);
    report.seed = seed;
    report.observed_h = uniform01(rng) < report.p0 ? 0u : 1u;
}

}  // namespace qprod
