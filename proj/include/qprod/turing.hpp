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
#include <string_view>
#include <vector>

#include "qprod/production.hpp"

namespace qprod {

enum class Move { kLeft, kRight, kStay };

char move_symbol(Move move);
Move parse_move(std::string_view text);

/// One delta-table entry: (state, read) -> (next, write, move).
struct Transition {
    char state;
    char read;
    char next;
    char write;
    Move move;

    bool operator==(const Transition &) const = default;
};

/// Single-tape machine with single-character state and tape tokens.
///
/// Several entries may share a (state, read) key; such a machine is
/// nondeterministic and can be compiled but not run directly.
class TuringMachine {
   public:
    TuringMachine(
        std::vector<char> states,
        char start,
        std::vector<char> halts,
        char blank,
        std::vector<char> tape_alphabet,
        std::vector<Transition> delta,
        std::size_t tape_window);

    const std::vector<char> &states() const { return states_; }
    char start() const { return start_; }
    const std::vector<char> &halts() const { return halts_; }
    char blank() const { return blank_; }
    const std::vector<char> &tape_alphabet() const { return tape_alphabet_; }
    const std::vector<Transition> &delta() const { return delta_; }
    std::size_t tape_window() const { return tape_window_; }

    bool is_state(char c) const;
    bool is_halt(char c) const;
    bool is_tape_symbol(char c) const;
    bool deterministic() const;

    /// All entries for (state, read), in table order.
    std::vector<const Transition *> lookup(char state, char read) const;

   private:
    std::vector<char> states_;
    char start_;
    std::vector<char> halts_;
    char blank_;
    std::vector<char> tape_alphabet_;
    std::vector<Transition> delta_;
    std::size_t tape_window_;
};

struct TmConfiguration {
    std::string tape;
    std::size_t head = 0;
    char state = 0;

    bool operator==(const TmConfiguration &) const = default;
};

/// Start configuration for `input`; an empty input becomes a single blank cell.
TmConfiguration initial_configuration(const TuringMachine &tm, std::string_view input);

/// One deterministic step. Moving off either end appends a blank cell while the
/// tape is shorter than the window, otherwise throws TapeOverflow.
TmConfiguration step_tm(const TuringMachine &tm, const TmConfiguration &cfg);

struct TmRun {
    TmConfiguration final;
    std::uint64_t steps = 0;
    bool halted = false;  // false means max_steps ran out
    std::vector<TmConfiguration> trace;
};

TmRun run_tm(const TuringMachine &tm, std::string_view input, std::uint64_t max_steps, bool record_trace = false);

/// State token written immediately left of the scanned cell: ("ab", 0, q) -> "qab".
std::string encode_config(const TmConfiguration &cfg);
TmConfiguration decode_config(std::string_view encoded, const TuringMachine &tm);

/// Tape end markers used by compiled systems.
inline constexpr char kLeftEnd = '[';
inline constexpr char kRightEnd = ']';

/// Working-memory form inside a compiled system: "[" + encode_config + "]".
std::string encode_memory(const TmConfiguration &cfg);
TmConfiguration decode_memory(std::string_view memory, const TuringMachine &tm);

/// Compiles the delta table into a production system whose working memory is
/// the marked configuration string. Stay moves become one rule "qa" -> "rb";
/// right moves one rule per right neighbour (plus one that extends the tape at
/// the right end); left moves likewise on the left. The capacity is
/// tape_window + 3, so running out of tape is a MemoryOverflow. Goals are the
/// halt-state tokens, matched as substrings.
///
/// `inputs` become the initial states; an empty list means one blank tape.
ProductionSystem compile(const TuringMachine &tm, const std::vector<std::string> &inputs = {});

}  // namespace qprod
