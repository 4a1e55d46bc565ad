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

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qprod/production.hpp"
#include "qprod/turing.hpp"

namespace qprod::samples {

/// Binary tree of depth-3 paths: "A." grows one digit per rule ("." -> "0." or
/// "." -> "1."), and the single goal is "A010.", reached by rules [0, 1, 0].
ProductionSystem tree_system();

/// BFS label of the node reached by `seq` in tree_system (root = 0, children
/// of i are 2i + 1 and 2i + 2).
std::uint64_t tree_node_label(const RuleSequence &seq);

/// One rule "ab" -> "b" and inputs that need 1, 2, 5 and 5 firings to reach a
/// goal ("b" or "cb").
ProductionSystem deutsch_system();

/// b always-applicable identity rules "#" -> "#" and an unreachable goal.
ProductionSystem unsatisfiable_system(std::size_t b);

struct RandomCase {
    ProductionSystem system;
    std::string start;
    std::size_t d_star = 0;  // from classical_ids
    std::uint64_t seed = 0;
};

/// Random rules over {a, b, c} with one goal reached by a random walk of
/// 1..max_depth steps from the start. Walks with a shorter route to the goal
/// are redrawn, so d_star (the true shallowest depth) equals the walk length.
RandomCase random_system(std::uint64_t seed, std::size_t b, std::size_t max_depth = 6);

struct SampleMachine {
    std::string name;
    TuringMachine tm;
    std::vector<std::string> tapes;
};

/// Deterministic machines with at least ten input tapes each.
std::vector<SampleMachine> sample_machines();

/// S scans right over 1s, writes a 1 on the first blank and halts in H.
TuringMachine unary_increment();

}  // namespace qprod::samples
