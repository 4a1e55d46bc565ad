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

#include "qprod/io.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "qprod/error.hpp"

namespace qprod {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string &path, const std::string &what) {
    throw Error(ErrorCode::kParse, "field '" + path + "': " + what);
}

Json parse_json(std::string_view text) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error &e) {
        // e.byte is 1-based and points at the offending character.
        std::size_t line = 1;
        std::size_t column = 1;
        const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw Error(
            ErrorCode::kParse,
            "syntax error at line " + std::to_string(line) + ", column " + std::to_string(column));
    }
}

std::string child(const std::string &path, std::string_view key) {
    return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string child(const std::string &path, std::size_t index) {
    return path + "[" + std::to_string(index) + "]";
}

void require_object(const Json &j, const std::string &path, std::initializer_list<std::string_view> allowed) {
    if (!j.is_object()) fail(path.empty() ? "<root>" : path, "expected an object");
    for (const auto &[key, value] : j.items()) {
        bool known = false;
        for (auto a : allowed) known = known || key == a;
        if (!known) fail(child(path, key), "unknown field");
    }
}

const Json &field(const Json &obj, std::string_view key, const std::string &path) {
    auto it = obj.find(std::string(key));
    if (it == obj.end()) fail(child(path, key), "missing");
    return *it;
}

std::string as_string(const Json &j, const std::string &path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

char as_char(const Json &j, const std::string &path) {
    std::string s = as_string(j, path);
    if (s.size() != 1) fail(path, "expected a single character, got \"" + s + "\"");
    return s[0];
}

std::uint64_t as_uint(const Json &j, const std::string &path) {
    if (!j.is_number_unsigned()) {
        if (j.is_number_integer()) fail(path, "must be non-negative");
        fail(path, "expected a non-negative integer");
    }
    return j.get<std::uint64_t>();
}

double as_double(const Json &j, const std::string &path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

bool as_bool(const Json &j, const std::string &path) {
    if (!j.is_boolean()) fail(path, "expected true or false");
    return j.get<bool>();
}

const Json &as_array(const Json &j, const std::string &path) {
    if (!j.is_array()) fail(path, "expected a list");
    return j;
}

std::vector<std::string> string_list(const Json &obj, std::string_view key, const std::string &path) {
    const std::string p = child(path, key);
    const Json &arr = as_array(field(obj, key, path), p);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(as_string(arr[i], child(p, i)));
    return out;
}

std::vector<char> char_list(const Json &obj, std::string_view key, const std::string &path) {
    const std::string p = child(path, key);
    const Json &arr = as_array(field(obj, key, path), p);
    std::vector<char> out;
    for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(as_char(arr[i], child(p, i)));
    return out;
}

Json char_array(const std::vector<char> &chars) {
    Json out = Json::array();
    for (char c : chars) out.push_back(std::string(1, c));
    return out;
}

Json sequence_json(const RuleSequence &seq) {
    Json out = Json::array();
    for (auto i : seq.indices) out.push_back(i);
    return out;
}

RuleSequence parse_sequence(const Json &j, const std::string &path) {
    as_array(j, path);
    RuleSequence seq;
    for (std::size_t i = 0; i < j.size(); ++i) seq.indices.push_back(as_uint(j[i], child(path, i)));
    return seq;
}

Json state_json(const QuantumState &state) {
    Json amps = Json::array();
    for (std::size_t i = 0; i < state.size(); ++i) amps.push_back(Json::array({state[i].real(), state[i].imag()}));
    return Json{{"norm", state.norm_squared()}, {"amplitudes", amps}};
}

std::string format_amplitude(Amplitude a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%+.6f%+.6fi", a.real(), a.imag());
    return buf;
}

}  // namespace

ProductionSystem parse_system(std::string_view text) {
    const Json j = parse_json(text);
    require_object(j, "", {"alphabet", "rules", "initial", "goals", "max_memory_len", "rule_match", "goal_match"});

    std::vector<char> alphabet = char_list(j, "alphabet", "");
    const Json &rules_json = as_array(field(j, "rules", ""), "rules");
    std::vector<Rule> rules;
    for (std::size_t i = 0; i < rules_json.size(); ++i) {
        const std::string p = child("rules", i);
        require_object(rules_json[i], p, {"pre", "post"});
        std::string pre = as_string(field(rules_json[i], "pre", p), child(p, "pre"));
        if (pre.empty()) fail(child(p, "pre"), "must be non-empty");
        rules.emplace_back(std::move(pre), as_string(field(rules_json[i], "post", p), child(p, "post")));
    }
    std::vector<std::string> initial = string_list(j, "initial", "");
    std::vector<std::string> goals = string_list(j, "goals", "");
    std::size_t max_len = as_uint(field(j, "max_memory_len", ""), "max_memory_len");

    MatchMode match_mode = MatchMode::kLeftmost;
    if (j.contains("rule_match")) {
        std::string v = as_string(j["rule_match"], "rule_match");
        if (v == "leftmost") {
            match_mode = MatchMode::kLeftmost;
        } else if (v == "exact") {
            match_mode = MatchMode::kExact;
        } else {
            fail("rule_match", "expected \"leftmost\" or \"exact\"");
        }
    }
    GoalMatch goal_match = GoalMatch::kExact;
    if (j.contains("goal_match")) {
        std::string v = as_string(j["goal_match"], "goal_match");
        if (v == "exact") {
            goal_match = GoalMatch::kExact;
        } else if (v == "substring") {
            goal_match = GoalMatch::kSubstring;
        } else {
            fail("goal_match", "expected \"exact\" or \"substring\"");
        }
    }
    return ProductionSystem(
        Alphabet(std::move(alphabet)), std::move(rules), std::move(initial), std::move(goals), max_len, match_mode,
        goal_match);
}

std::string dump_system(const ProductionSystem &system) {
    Json rules = Json::array();
    for (const auto &r : system.rules()) rules.push_back(Json{{"pre", r.precondition()}, {"post", r.action()}});
    Json j;
    j["alphabet"] = char_array(system.alphabet().symbols());
    j["rules"] = rules;
    j["initial"] = system.initial_states();
    j["goals"] = system.goal_states();
    j["max_memory_len"] = system.max_memory_len();
    j["rule_match"] = system.match_mode() == MatchMode::kLeftmost ? "leftmost" : "exact";
    j["goal_match"] = system.goal_match() == GoalMatch::kExact ? "exact" : "substring";
    return j.dump(2) + "\n";
}

TuringMachine parse_tm(std::string_view text) {
    const Json j = parse_json(text);
    require_object(j, "", {"states", "start", "halts", "blank", "tape_alphabet", "delta", "tape_window"});
    std::vector<char> states = char_list(j, "states", "");
    char start = as_char(field(j, "start", ""), "start");
    std::vector<char> halts = char_list(j, "halts", "");
    char blank = as_char(field(j, "blank", ""), "blank");
    std::vector<char> tape = char_list(j, "tape_alphabet", "");
    const Json &delta_json = as_array(field(j, "delta", ""), "delta");
    std::vector<Transition> delta;
    for (std::size_t i = 0; i < delta_json.size(); ++i) {
        const std::string p = child("delta", i);
        const Json &row = as_array(delta_json[i], p);
        if (row.size() != 5) fail(p, "expected [state, read, next, write, move]");
        Transition t{};
        t.state = as_char(row[0], child(p, 0));
        t.read = as_char(row[1], child(p, 1));
        t.next = as_char(row[2], child(p, 2));
        t.write = as_char(row[3], child(p, 3));
        try {
            t.move = parse_move(as_string(row[4], child(p, 4)));
        } catch (const Error &) {
            fail(child(p, 4), "expected \"L\", \"R\" or \"S\"");
        }
        delta.push_back(t);
    }
    std::size_t window = as_uint(field(j, "tape_window", ""), "tape_window");
    return TuringMachine(std::move(states), start, std::move(halts), blank, std::move(tape), std::move(delta), window);
}

std::string dump_tm(const TuringMachine &tm) {
    Json delta = Json::array();
    for (const auto &t : tm.delta()) {
        delta.push_back(Json::array(
            {std::string(1, t.state), std::string(1, t.read), std::string(1, t.next), std::string(1, t.write),
             std::string(1, move_symbol(t.move))}));
    }
    Json j;
    j["states"] = char_array(tm.states());
    j["start"] = std::string(1, tm.start());
    j["halts"] = char_array(tm.halts());
    j["blank"] = std::string(1, tm.blank());
    j["tape_alphabet"] = char_array(tm.tape_alphabet());
    j["delta"] = delta;
    j["tape_window"] = tm.tape_window();
    return j.dump(2) + "\n";
}

std::string dump_report(const SearchReport &report, bool with_wall_time) {
    Json j;
    j["schema_version"] = SearchReport::kSchemaVersion;
    j["start"] = report.start;
    j["branching"] = report.branching;
    j["config"] = Json{
        {"depth_cap", report.config.depth_cap},
        {"seed", report.config.seed},
        {"counting_mode", report.config.counting_mode == CountingMode::kExact ? "exact" : "assume-one"},
        {"iterate_policy", report.config.iterate_policy == IteratePolicy::kOptimal ? "optimal" : "faithful"},
        {"skip_empty_depths", report.config.skip_empty_depths},
        {"simulation_cap", report.config.simulation_cap},
    };
    j["status"] = report.found ? "found" : "cap_exceeded";
    j["found"] = report.found;
    j["witness"] = report.found ? sequence_json(report.witness) : Json(nullptr);
    j["goal_state"] = report.goal_state ? Json(*report.goal_state) : Json(nullptr);
    j["d_star"] = report.found ? Json(report.d_star) : Json(nullptr);
    j["halting_prefix"] = report.found ? Json(report.halting_prefix) : Json(nullptr);
    j["total_oracle_calls"] = report.total_oracle_calls;
    Json rows = Json::array();
    for (const auto &r : report.per_depth) {
        rows.push_back(Json{
            {"d", r.d},
            {"n", r.n},
            {"k", r.k},
            {"k_used", r.k_used},
            {"m", r.m},
            {"predicted", r.predicted},
            {"measured_index", r.measured_index},
            {"measured_h", r.measured_h},
            {"measured_sequence", sequence_json(r.measured_sequence)},
            {"halted", r.halted},
            {"oracle_calls", r.oracle_calls},
        });
    }
    j["per_depth"] = rows;
    if (with_wall_time) j["wall_time_ms"] = report.wall_time_ms;
    return j.dump(2) + "\n";
}

SearchReport parse_report(std::string_view text) {
    const Json j = parse_json(text);
    require_object(
        j, "",
        {"schema_version", "start", "branching", "config", "status", "found", "witness", "goal_state", "d_star",
         "halting_prefix", "total_oracle_calls", "per_depth", "wall_time_ms"});
    const std::uint64_t version = as_uint(field(j, "schema_version", ""), "schema_version");
    if (version != SearchReport::kSchemaVersion) {
        fail("schema_version", "unsupported version " + std::to_string(version));
    }
    SearchReport r;
    r.start = as_string(field(j, "start", ""), "start");
    r.branching = as_uint(field(j, "branching", ""), "branching");

    const Json &c = field(j, "config", "");
    require_object(
        c, "config",
        {"depth_cap", "seed", "counting_mode", "iterate_policy", "skip_empty_depths", "simulation_cap"});
    r.config.depth_cap = as_uint(field(c, "depth_cap", "config"), "config.depth_cap");
    r.config.seed = as_uint(field(c, "seed", "config"), "config.seed");
    const std::string counting = as_string(field(c, "counting_mode", "config"), "config.counting_mode");
    if (counting != "exact" && counting != "assume-one") fail("config.counting_mode", "unknown mode");
    r.config.counting_mode = counting == "exact" ? CountingMode::kExact : CountingMode::kAssumeOne;
    const std::string policy = as_string(field(c, "iterate_policy", "config"), "config.iterate_policy");
    if (policy != "optimal" && policy != "faithful") fail("config.iterate_policy", "unknown policy");
    r.config.iterate_policy = policy == "optimal" ? IteratePolicy::kOptimal : IteratePolicy::kFaithful;
    r.config.skip_empty_depths = as_bool(field(c, "skip_empty_depths", "config"), "config.skip_empty_depths");
    r.config.simulation_cap = as_uint(field(c, "simulation_cap", "config"), "config.simulation_cap");

    r.found = as_bool(field(j, "found", ""), "found");
    if (r.found) {
        r.witness = parse_sequence(field(j, "witness", ""), "witness");
        r.d_star = as_uint(field(j, "d_star", ""), "d_star");
        r.halting_prefix = as_uint(field(j, "halting_prefix", ""), "halting_prefix");
    }
    if (j.contains("goal_state") && !j["goal_state"].is_null()) r.goal_state = as_string(j["goal_state"], "goal_state");
    r.total_oracle_calls = as_uint(field(j, "total_oracle_calls", ""), "total_oracle_calls");

    const Json &rows = as_array(field(j, "per_depth", ""), "per_depth");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string p = child("per_depth", i);
        const Json &row = rows[i];
        require_object(
            row, p,
            {"d", "n", "k", "k_used", "m", "predicted", "measured_index", "measured_h", "measured_sequence", "halted",
             "oracle_calls"});
        DepthRecord rec;
        rec.d = as_uint(field(row, "d", p), child(p, "d"));
        rec.n = as_uint(field(row, "n", p), child(p, "n"));
        rec.k = as_uint(field(row, "k", p), child(p, "k"));
        rec.k_used = as_uint(field(row, "k_used", p), child(p, "k_used"));
        rec.m = as_uint(field(row, "m", p), child(p, "m"));
        rec.predicted = as_double(field(row, "predicted", p), child(p, "predicted"));
        rec.measured_index = as_uint(field(row, "measured_index", p), child(p, "measured_index"));
        rec.measured_h = static_cast<unsigned>(as_uint(field(row, "measured_h", p), child(p, "measured_h")));
        rec.measured_sequence = parse_sequence(field(row, "measured_sequence", p), child(p, "measured_sequence"));
        rec.halted = as_bool(field(row, "halted", p), child(p, "halted"));
        rec.oracle_calls = as_uint(field(row, "oracle_calls", p), child(p, "oracle_calls"));
        r.per_depth.push_back(rec);
    }
    if (j.contains("wall_time_ms")) r.wall_time_ms = as_double(j["wall_time_ms"], "wall_time_ms");
    return r;
}

std::string dump_demo(const DeutschDemoReport &report) {
    Json steps = Json::array();
    for (const auto &s : report.steps_to_halt) steps.push_back(s ? Json(*s) : Json(nullptr));
    Json j;
    j["inputs"] = report.inputs;
    j["steps_to_halt"] = steps;
    j["depth"] = report.depth;
    j["p0"] = report.p0;
    j["p1"] = report.p1;
    j["before"] = state_json(report.before);
    j["after0"] = report.after0 ? state_json(*report.after0) : Json(nullptr);
    j["after1"] = report.after1 ? state_json(*report.after1) : Json(nullptr);
    if (report.seed) j["seed"] = *report.seed;
    if (report.observed_h) j["observed_h"] = *report.observed_h;
    return j.dump(2) + "\n";
}

std::string render_demo(const DeutschDemoReport &report) {
    std::ostringstream out;
    out << "inputs (s, steps to halt):\n";
    for (std::size_t s = 0; s < report.steps_to_halt.size(); ++s) {
        out << "  " << s;
        if (s < report.inputs.size()) out << " \"" << report.inputs[s] << "\"";
        out << "  ";
        if (report.steps_to_halt[s]) {
            out << *report.steps_to_halt[s];
        } else {
            out << "none";
        }
        out << '\n';
    }
    char line[128];
    std::snprintf(line, sizeof line, "after %zu steps: P(h=0) = %.12f, P(h=1) = %.12f\n", report.depth, report.p0,
                  report.p1);
    out << line;
    auto branch = [&](const char *label, const std::optional<QuantumState> &state) {
        out << label;
        if (!state) {
            out << " (probability zero)\n";
            return;
        }
        std::snprintf(line, sizeof line, " norm %.12f\n", state->norm_squared());
        out << line;
        for (std::uint64_t s = 0; s < state->num_s(); ++s) {
            for (unsigned h = 0; h < 2; ++h) {
                const Amplitude a = state->at(s, 0, h);
                if (std::norm(a) == 0.0) continue;
                out << "  |s=" << s << ", h=" << h << ">  " << format_amplitude(a) << '\n';
            }
        }
    };
    branch("measured h=0:", report.after0);
    branch("measured h=1:", report.after1);
    if (report.observed_h) {
        out << "sampled outcome (seed " << report.seed.value_or(0) << "): h=" << *report.observed_h << '\n';
    }
    return out.str();
}

void write_state(std::ostream &out, const QuantumState &state) {
    const StateDims &dims = state.dims();
    out << "# qprod-state v1 " << dims.num_s << ' ' << dims.b << ' ' << dims.d << '\n';
    char row[96];
    for (std::uint64_t i = 0; i < state.size(); ++i) {
        std::snprintf(row, sizeof row, "%" PRIu64 " %.17g %.17g\n", i, state[i].real(), state[i].imag());
        out << row;
    }
}

QuantumState read_state(std::istream &in, std::uint64_t cap) {
    std::string header;
    if (!std::getline(in, header)) throw Error(ErrorCode::kParse, "state dump: missing header");
    std::istringstream hs(header);
    std::string hash, magic, version;
    StateDims dims;
    if (!(hs >> hash >> magic >> version >> dims.num_s >> dims.b >> dims.d) || hash != "#" || magic != "qprod-state") {
        throw Error(ErrorCode::kParse, "state dump: line 1: malformed header");
    }
    if (version != "v1") throw Error(ErrorCode::kParse, "state dump: unsupported version " + version);
    QuantumState state(dims, cap);
    std::string text;
    std::size_t line_no = 1;
    while (std::getline(in, text)) {
        ++line_no;
        if (text.empty()) continue;
        std::istringstream ls(text);
        std::uint64_t index = 0;
        double re = 0.0;
        double im = 0.0;
        if (!(ls >> index >> re >> im) || index >= state.size()) {
            throw Error(ErrorCode::kParse, "state dump: line " + std::to_string(line_no) + ": bad row");
        }
        state[index] = Amplitude(re, im);
    }
    return state;
}

std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path &path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path.string());
    out << content;
}

}  // namespace qprod
