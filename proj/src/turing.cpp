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

#include "qprod/turing.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "qprod/error.hpp"

namespace qprod {

namespace {

bool contains(const std::vector<char> &v, char c) {
    return std::find(v.begin(), v.end(), c) != v.end();
}

std::string token_list(const std::vector<char> &v) {
    std::string out = "{";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += v[i];
    }
    return out + "}";
}

void require_distinct(const std::vector<char> &v, const char *what) {
    std::set<char> seen(v.begin(), v.end());
    if (seen.size() != v.size()) {
        throw Error(ErrorCode::kInvalidArgument, std::string("duplicate ") + what + " in " + token_list(v));
    }
}

}  // namespace

char move_symbol(Move move) {
    switch (move) {
        case Move::kLeft:
            return 'L';
        case Move::kRight:
            return 'R';
        case Move::kStay:
            return 'S';
    }
    return '?';
}

Move parse_move(std::string_view text) {
    if (text == "L") return Move::kLeft;
    if (text == "R") return Move::kRight;
    if (text == "S") return Move::kStay;
    throw Error(ErrorCode::kInvalidArgument, "head move must be L, R or S, got \"" + std::string(text) + "\"");
}

TuringMachine::TuringMachine(
    std::vector<char> states,
    char start,
    std::vector<char> halts,
    char blank,
    std::vector<char> tape_alphabet,
    std::vector<Transition> delta,
    std::size_t tape_window)
    : states_(std::move(states)),
      start_(start),
      halts_(std::move(halts)),
      blank_(blank),
      tape_alphabet_(std::move(tape_alphabet)),
      delta_(std::move(delta)),
      tape_window_(tape_window) {
    if (states_.empty()) throw Error(ErrorCode::kInvalidArgument, "machine needs at least one state");
    if (tape_alphabet_.empty()) throw Error(ErrorCode::kInvalidArgument, "tape alphabet must be non-empty");
    if (tape_window_ == 0) throw Error(ErrorCode::kInvalidArgument, "tape_window must be positive");
    require_distinct(states_, "state");
    require_distinct(tape_alphabet_, "tape symbol");
    require_distinct(halts_, "halt state");
    if (!is_state(start_)) {
        throw Error(ErrorCode::kInvalidArgument, std::string("start state '") + start_ + "' is not a state");
    }
    for (char h : halts_) {
        if (!is_state(h)) throw Error(ErrorCode::kInvalidArgument, std::string("halt state '") + h + "' is not a state");
    }
    if (!is_tape_symbol(blank_)) {
        throw Error(ErrorCode::kInvalidArgument, std::string("blank '") + blank_ + "' is not a tape symbol");
    }
    for (const auto &t : delta_) {
        if (!is_state(t.state) || !is_state(t.next)) {
            throw Error(
                ErrorCode::kInvalidArgument,
                std::string("transition uses unknown state '") + (is_state(t.state) ? t.next : t.state) + "'");
        }
        if (!is_tape_symbol(t.read) || !is_tape_symbol(t.write)) {
            throw Error(
                ErrorCode::kInvalidArgument,
                std::string("transition uses unknown tape symbol '") + (is_tape_symbol(t.read) ? t.write : t.read) +
                    "'");
        }
        if (is_halt(t.state)) {
            throw Error(ErrorCode::kInvalidArgument, std::string("halt state '") + t.state + "' has a transition");
        }
    }
    for (const auto &t : delta_) {
        if (std::count(delta_.begin(), delta_.end(), t) > 1) {
            throw Error(
                ErrorCode::kInvalidArgument,
                std::string("duplicate transition for (") + t.state + ", " + t.read + ")");
        }
    }
    // Totality over non-halt states.
    for (char q : states_) {
        if (is_halt(q)) continue;
        for (char a : tape_alphabet_) {
            if (lookup(q, a).empty()) {
                throw Error(
                    ErrorCode::kInvalidArgument,
                    std::string("delta is undefined for (") + q + ", " + a + ")");
            }
        }
    }
}

bool TuringMachine::is_state(char c) const { return contains(states_, c); }
bool TuringMachine::is_halt(char c) const { return contains(halts_, c); }
bool TuringMachine::is_tape_symbol(char c) const { return contains(tape_alphabet_, c); }

bool TuringMachine::deterministic() const {
    std::set<std::pair<char, char>> keys;
    for (const auto &t : delta_) {
        if (!keys.emplace(t.state, t.read).second) return false;
    }
    return true;
}

std::vector<const Transition *> TuringMachine::lookup(char state, char read) const {
    std::vector<const Transition *> out;
    for (const auto &t : delta_) {
        if (t.state == state && t.read == read) out.push_back(&t);
    }
    return out;
}

TmConfiguration initial_configuration(const TuringMachine &tm, std::string_view input) {
    TmConfiguration cfg;
    cfg.tape = input.empty() ? std::string(1, tm.blank()) : std::string(input);
    cfg.head = 0;
    cfg.state = tm.start();
    for (char c : cfg.tape) {
        if (!tm.is_tape_symbol(c)) {
            throw Error(ErrorCode::kInvalidArgument, std::string("input symbol '") + c + "' is not a tape symbol");
        }
    }
    if (cfg.tape.size() > tm.tape_window()) {
        throw Error(ErrorCode::kTapeOverflow, "input is longer than the tape window");
    }
    return cfg;
}

TmConfiguration step_tm(const TuringMachine &tm, const TmConfiguration &cfg) {
    auto entries = tm.lookup(cfg.state, cfg.tape[cfg.head]);
    if (entries.empty()) {
        throw Error(
            ErrorCode::kInvalidArgument,
            std::string("no transition for (") + cfg.state + ", " + cfg.tape[cfg.head] + ")");
    }
    if (entries.size() > 1) {
        throw Error(
            ErrorCode::kNonDeterministic,
            std::string("several transitions for (") + cfg.state + ", " + cfg.tape[cfg.head] + ")");
    }
    const Transition &t = *entries.front();
    TmConfiguration next = cfg;
    next.tape[next.head] = t.write;
    next.state = t.next;
    switch (t.move) {
        case Move::kStay:
            break;
        case Move::kRight:
            if (next.head + 1 == next.tape.size()) {
                if (next.tape.size() == tm.tape_window()) {
                    throw Error(ErrorCode::kTapeOverflow, "head moved past the right edge of the tape window");
                }
                next.tape.push_back(tm.blank());
            }
            ++next.head;
            break;
        case Move::kLeft:
            if (next.head == 0) {
                if (next.tape.size() == tm.tape_window()) {
                    throw Error(ErrorCode::kTapeOverflow, "head moved past the left edge of the tape window");
                }
                next.tape.insert(next.tape.begin(), tm.blank());
            } else {
                --next.head;
            }
            break;
    }
    return next;
}

TmRun run_tm(const TuringMachine &tm, std::string_view input, std::uint64_t max_steps, bool record_trace) {
    TmRun run;
    run.final = initial_configuration(tm, input);
    if (record_trace) run.trace.push_back(run.final);
    while (!tm.is_halt(run.final.state)) {
        if (run.steps == max_steps) {
            return run;
        }
        run.final = step_tm(tm, run.final);
        ++run.steps;
        if (record_trace) run.trace.push_back(run.final);
    }
    run.halted = true;
    return run;
}

std::string encode_config(const TmConfiguration &cfg) {
    if (cfg.head >= cfg.tape.size()) {
        throw Error(ErrorCode::kMalformedEncoding, "head is outside the tape");
    }
    std::string out;
    out.reserve(cfg.tape.size() + 1);
    out.append(cfg.tape, 0, cfg.head);
    out.push_back(cfg.state);
    out.append(cfg.tape, cfg.head);
    return out;
}

TmConfiguration decode_config(std::string_view encoded, const TuringMachine &tm) {
    TmConfiguration cfg;
    std::size_t state_tokens = 0;
    for (std::size_t i = 0; i < encoded.size(); ++i) {
        char c = encoded[i];
        if (tm.is_state(c)) {
            ++state_tokens;
            cfg.state = c;
            cfg.head = i;
        } else if (tm.is_tape_symbol(c)) {
            cfg.tape.push_back(c);
        } else {
            throw Error(ErrorCode::kMalformedEncoding, std::string("unknown token '") + c + "'");
        }
    }
    if (state_tokens != 1) {
        throw Error(
            ErrorCode::kMalformedEncoding,
            "expected exactly one state token in \"" + std::string(encoded) + "\", found " +
                std::to_string(state_tokens));
    }
    if (cfg.head >= cfg.tape.size()) {
        throw Error(ErrorCode::kMalformedEncoding, "state token has no scanned cell in \"" + std::string(encoded) + "\"");
    }
    return cfg;
}

std::string encode_memory(const TmConfiguration &cfg) {
    return kLeftEnd + encode_config(cfg) + kRightEnd;
}

TmConfiguration decode_memory(std::string_view memory, const TuringMachine &tm) {
    if (memory.size() < 2 || memory.front() != kLeftEnd || memory.back() != kRightEnd) {
        throw Error(ErrorCode::kMalformedEncoding, "missing tape end markers in \"" + std::string(memory) + "\"");
    }
    return decode_config(memory.substr(1, memory.size() - 2), tm);
}

namespace {

void check_encoding(const TuringMachine &tm) {
    std::vector<char> clash;
    for (char q : tm.states()) {
        if (tm.is_tape_symbol(q)) clash.push_back(q);
    }
    for (char marker : {kLeftEnd, kRightEnd}) {
        if (tm.is_state(marker) || tm.is_tape_symbol(marker)) clash.push_back(marker);
    }
    if (!clash.empty()) {
        throw Error(
            ErrorCode::kEncodingClash,
            "token sets overlap on " + token_list(clash) + "; states " + token_list(tm.states()) +
                ", tape alphabet " + token_list(tm.tape_alphabet()) + ", reserved markers {" + kLeftEnd + "," +
                kRightEnd + "}");
    }
}

}  // namespace

ProductionSystem compile(const TuringMachine &tm, const std::vector<std::string> &inputs) {
    check_encoding(tm);

    std::vector<char> symbols = tm.tape_alphabet();
    symbols.insert(symbols.end(), tm.states().begin(), tm.states().end());
    symbols.push_back(kLeftEnd);
    symbols.push_back(kRightEnd);

    const char blank = tm.blank();
    std::vector<Rule> rules;
    for (const auto &t : tm.delta()) {
        const std::string scanned{t.state, t.read};
        switch (t.move) {
            case Move::kStay:
                rules.emplace_back(scanned, std::string{t.next, t.write});
                break;
            case Move::kRight:
                for (char c : tm.tape_alphabet()) {
                    rules.emplace_back(scanned + c, std::string{t.write, t.next, c});
                }
                rules.emplace_back(scanned + kRightEnd, std::string{t.write, t.next, blank, kRightEnd});
                break;
            case Move::kLeft:
                for (char c : tm.tape_alphabet()) {
                    rules.emplace_back(c + scanned, std::string{t.next, c, t.write});
                }
                rules.emplace_back(kLeftEnd + scanned, std::string{kLeftEnd, t.next, blank, t.write});
                break;
        }
    }

    std::vector<std::string> initial;
    if (inputs.empty()) {
        initial.push_back(encode_memory(initial_configuration(tm, "")));
    }
    for (const auto &input : inputs) {
        initial.push_back(encode_memory(initial_configuration(tm, input)));
    }

    std::vector<std::string> goals;
    for (char h : tm.halts()) goals.emplace_back(1, h);
    if (goals.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "machine has no halt state to use as a goal");
    }

    return ProductionSystem(
        Alphabet(std::move(symbols)), std::move(rules), std::move(initial), std::move(goals),
        tm.tape_window() + 3, MatchMode::kLeftmost, GoalMatch::kSubstring);
}

}  // namespace qprod
