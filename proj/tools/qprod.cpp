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

// qprod command-line driver.
//
// Exit codes: 0 success (search found a witness), 2 search hit the depth cap,
// 1 any input or runtime error. The simulation cap (amplitudes) is read from
// QPROD_SIM_CAP when set.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qprod/acceptance.hpp"
#include "qprod/error.hpp"
#include "qprod/grover.hpp"
#include "qprod/io.hpp"
#include "qprod/qid.hpp"
#include "qprod/samples.hpp"

namespace {

using namespace qprod;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitCap = 2;

std::uint64_t simulation_cap() {
    const char *env = std::getenv("QPROD_SIM_CAP");
    if (env == nullptr || *env == '\0') return kDefaultSimulationCap;
    char *end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (*end != '\0' || value < 2) {
        throw Error(ErrorCode::kInvalidArgument, "QPROD_SIM_CAP must be an integer >= 2, got \"" + std::string(env) + "\"");
    }
    return value;
}

void emit(const std::string &content, const std::string &output) {
    if (output.empty() || output == "-") {
        std::cout << content;
        std::cout.flush();
    } else {
        write_file(output, content);
    }
}

std::string join_sequence(const RuleSequence &seq) {
    std::string out;
    for (std::size_t i = 0; i < seq.indices.size(); ++i) {
        if (i) out += '-';
        out += std::to_string(seq.indices[i]);
    }
    return out;
}

struct SearchFlags {
    std::uint64_t seed = 0;
    std::optional<std::size_t> depth_cap;
    std::string counting_mode = "exact";
    std::string iterate_policy = "optimal";
    std::string format = "json";
    bool no_timestamp = false;
    std::string output;
};

void add_search_flags(CLI::App *cmd, SearchFlags &flags, bool seed_required) {
    auto *seed = cmd->add_option("--seed", flags.seed, "Master seed for all measurements");
    if (seed_required) seed->required();
    cmd->add_option("--depth-cap", flags.depth_cap, "Deepest level to search (default: largest within the cap)");
    cmd->add_option("--counting-mode", flags.counting_mode, "How k is obtained per depth")
        ->check(CLI::IsMember({"exact", "assume-one"}));
    cmd->add_option("--iterate-policy", flags.iterate_policy, "Grover iterate count per depth")
        ->check(CLI::IsMember({"optimal", "faithful"}));
    cmd->add_option("--format", flags.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_flag("--no-timestamp", flags.no_timestamp, "Omit wall-clock fields for byte-stable output");
    cmd->add_option("-o,--output", flags.output, "Output file (default stdout)");
}

QidConfig make_config(const SearchFlags &flags, std::size_t b, std::uint64_t cap) {
    QidConfig config;
    config.seed = flags.seed;
    config.simulation_cap = cap;
    config.depth_cap = flags.depth_cap.value_or(default_depth_cap(b, cap));
    config.counting_mode = flags.counting_mode == "exact" ? CountingMode::kExact : CountingMode::kAssumeOne;
    config.iterate_policy = flags.iterate_policy == "optimal" ? IteratePolicy::kOptimal : IteratePolicy::kFaithful;
    return config;
}

std::string report_csv(const SearchReport &report) {
    std::ostringstream out;
    out.precision(17);
    out << "d,N,k,k_used,m,predicted,measured_index,measured_h,measured_sequence,halted,oracle_calls\n";
    for (const auto &r : report.per_depth) {
        out << r.d << ',' << r.n << ',' << r.k << ',' << r.k_used << ',' << r.m << ',' << r.predicted << ','
            << r.measured_index << ',' << r.measured_h << ',' << join_sequence(r.measured_sequence) << ','
            << (r.halted ? 1 : 0) << ',' << r.oracle_calls << '\n';
    }
    return out.str();
}

// --- run ---------------------------------------------------------------------

struct RunArgs {
    std::string system_path;
    std::optional<std::string> start;
    bool classical = false;
    std::uint64_t max_steps = 100000;
    SearchFlags flags;
};

int cmd_run(const RunArgs &args) {
    const std::uint64_t cap = simulation_cap();
    const ProductionSystem system = parse_system(read_file(args.system_path));
    const std::string start_text = args.start.value_or(system.initial_states().front());
    const WorkingMemory start = system.memory(start_text);

    if (args.classical) {
        const std::size_t depth_cap = args.flags.depth_cap.value_or(64);
        const ClassicalSearchResult ids = classical_ids(system, start, depth_cap);
        nlohmann::ordered_json j;
        j["schema_version"] = SearchReport::kSchemaVersion;
        j["mode"] = "classical";
        j["start"] = start_text;
        j["depth_cap"] = depth_cap;
        j["status"] = ids.found() ? "found" : "cap_exceeded";
        j["witness"] = ids.found() ? nlohmann::ordered_json(ids.witness->indices) : nlohmann::ordered_json(nullptr);
        j["goal_state"] = ids.goal ? nlohmann::ordered_json(*ids.goal) : nlohmann::ordered_json(nullptr);
        j["d_star"] = ids.found() ? nlohmann::ordered_json(ids.d_star) : nlohmann::ordered_json(nullptr);
        j["nodes_expanded"] = ids.nodes_expanded;
        try {
            const ControlRun control = run_first_applicable(system, start, args.max_steps);
            std::vector<std::string> trace;
            for (const auto &m : control.trace) trace.push_back(m.content());
            j["control"] = {
                {"strategy", "first-applicable"},
                {"halted", control.halted},
                {"stuck", control.stuck},
                {"overflowed", false},
                {"steps", control.rules_applied.size()},
                {"rules_applied", control.rules_applied},
                {"final_memory", control.trace.back().content()},
                {"trace", trace},
            };
        } catch (const Error &e) {
            if (e.code() != ErrorCode::kMemoryOverflow) throw;
            j["control"] = {
                {"strategy", "first-applicable"},
                {"halted", false},
                {"stuck", false},
                {"overflowed", true},
                {"error", e.what()},
            };
        }
        emit(j.dump(2) + "\n", args.flags.output);
        return ids.found() ? kExitOk : kExitCap;
    }

    const QidConfig config = make_config(args.flags, system.branching(), cap);
    const SearchReport report = quantum_iterative_deepening(system, start, config);
    emit(args.flags.format == "csv" ? report_csv(report) : dump_report(report, !args.flags.no_timestamp),
         args.flags.output);
    if (report.found) {
        std::cerr << "found " << to_string(report.witness) << " at depth " << report.d_star << ", goal \""
                  << report.goal_state.value_or("") << "\"\n";
        return kExitOk;
    }
    std::cerr << "CapExceeded: no halting sequence measured up to depth " << config.depth_cap << "\n";
    return kExitCap;
}

// --- compile-tm --------------------------------------------------------------

struct CompileArgs {
    std::string tm_path;
    std::vector<std::string> inputs;
    std::string output;
};

int cmd_compile_tm(const CompileArgs &args) {
    const TuringMachine tm = parse_tm(read_file(args.tm_path));
    emit(dump_system(compile(tm, args.inputs)), args.output);
    return kExitOk;
}

// --- demo-flaw ---------------------------------------------------------------

struct DemoArgs {
    std::string system_path;
    std::size_t depth = 0;
    std::uint64_t seed = 0;
    std::size_t horizon = 64;
    std::string format = "json";
    std::string output;
};

int cmd_demo_flaw(const DemoArgs &args) {
    const ProductionSystem system = parse_system(read_file(args.system_path));
    DeutschDemoReport report = deutsch_flaw_demo(system, args.depth, args.horizon, simulation_cap());
    observe_halt(report, args.seed);
    emit(args.format == "text" ? render_demo(report) : dump_demo(report), args.output);
    return kExitOk;
}

// --- predict -----------------------------------------------------------------

struct PredictArgs {
    std::vector<std::uint64_t> b;
    std::vector<std::uint64_t> d;
    std::vector<std::uint64_t> k;
    std::string format = "csv";
    std::string output;
};

int cmd_predict(const PredictArgs &args) {
    const std::uint64_t cap = simulation_cap();
    std::vector<PredictionRow> rows;
    for (auto b : args.b) {
        for (auto d : args.d) {
            for (auto k : args.k) rows.push_back(predict(b, d, k, cap));
        }
    }
    if (args.format == "csv") {
        std::ostringstream out;
        write_prediction_csv(out, rows);
        emit(out.str(), args.output);
        return kExitOk;
    }
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto &r : rows) {
        j.push_back({
            {"N", r.n},
            {"k", r.k},
            {"m", r.m},
            {"paper_formula", r.paper ? nlohmann::ordered_json(*r.paper) : nlohmann::ordered_json("n/a")},
            {"exact_formula", r.exact},
            {"simulated", r.simulated ? nlohmann::ordered_json(*r.simulated) : nlohmann::ordered_json("skipped")},
        });
    }
    emit(j.dump(2) + "\n", args.output);
    return kExitOk;
}

// --- bench -------------------------------------------------------------------

struct BenchArgs {
    std::vector<std::size_t> b{2, 3};
    std::size_t d_min = 0;
    std::size_t d_max = 10;
    SearchFlags flags;
};

int cmd_bench(BenchArgs args) {
    const std::uint64_t cap = simulation_cap();
    args.flags.counting_mode = "assume-one";
    struct Row {
        std::size_t b = 0;
        std::size_t d = 0;
        std::uint64_t m = 0;
        std::optional<OracleAccounting> acc;
    };
    std::vector<Row> rows;
    for (auto b : args.b) {
        const ProductionSystem system = samples::unsatisfiable_system(b);
        const std::size_t within_cap = default_depth_cap(b, cap);
        QidConfig config = make_config(args.flags, b, cap);
        config.depth_cap = std::min(args.d_max, within_cap);
        // Per-depth seeds do not depend on the cap, so one run to the deepest
        // level yields every shallower run as a prefix.
        const SearchReport full = quantum_iterative_deepening(system, system.memory("#"), config);
        for (std::size_t d = args.d_min; d <= args.d_max; ++d) {
            Row row{b, d};
            if (d <= config.depth_cap) {
                SearchReport prefix = full;
                prefix.per_depth.resize(d + 1);
                row.m = prefix.per_depth.back().m;
                row.acc = account_oracle_calls(prefix);
            }
            rows.push_back(row);
        }
    }
    if (args.flags.format == "csv") {
        std::ostringstream out;
        out << "b,d,N,m_d,total_oracle_calls,bound,ratio,status\n";
        char buf[64];
        for (const auto &r : rows) {
            const auto n = checked_power(r.b, r.d, ~std::uint64_t{0});
            out << r.b << ',' << r.d << ',' << (n ? std::to_string(*n) : "overflow") << ',';
            if (r.acc) {
                std::snprintf(buf, sizeof buf, "%.6f", r.acc->ratio);
                out << r.m << ',' << r.acc->total << ',' << r.acc->bound << ',' << buf << ','
                    << (r.acc->within_bound ? "ok" : "exceeded");
            } else {
                out << ",,,,skipped";
            }
            out << '\n';
        }
        emit(out.str(), args.flags.output);
    } else {
        nlohmann::ordered_json j = nlohmann::ordered_json::array();
        for (const auto &r : rows) {
            nlohmann::ordered_json row{{"b", r.b}, {"d", r.d}};
            if (r.acc) {
                row["m_d"] = r.m;
                row["total_oracle_calls"] = r.acc->total;
                row["bound"] = r.acc->bound;
                row["ratio"] = r.acc->ratio;
                row["status"] = r.acc->within_bound ? "ok" : "exceeded";
            } else {
                row["status"] = "skipped";
            }
            j.push_back(row);
        }
        emit(j.dump(2) + "\n", args.flags.output);
    }
    return kExitOk;
}

// --- verify ------------------------------------------------------------------

struct VerifyArgs {
    std::string inject_fault;
    bool quiet = false;
};

int cmd_verify(const VerifyArgs &args) {
    acceptance::Options options;
    if (args.inject_fault == "diffusion") options.diffusion_reflection = 2.02;
    options.log = args.quiet ? nullptr : &std::cout;
    const auto t0 = std::chrono::steady_clock::now();
    const auto results = acceptance::run_all(options);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::vector<int> failing;
    for (const auto &r : results) {
        if (args.quiet) std::cout << acceptance::format_result(r) << '\n';
        if (!r.passed) failing.push_back(r.id);
    }
    const bool in_budget = seconds < 300.0;
    std::printf("%s  suite runtime %.1f s (limit 300 s)\n", in_budget ? "PASS" : "FAIL", seconds);
    if (failing.empty() && in_budget) {
        std::printf("all %zu checks passed\n", results.size());
        return kExitOk;
    }
    std::string list;
    for (int id : failing) list += (list.empty() ? "" : ", ") + std::to_string(id);
    std::printf("failing checks: %s%s\n", list.empty() ? "none" : list.c_str(), in_budget ? "" : " (runtime)");
    return kExitError;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"qprod: quantum production system simulator and verification toolkit"};
    app.require_subcommand(1);

    RunArgs run;
    auto *run_cmd = app.add_subcommand("run", "Quantum iterative deepening search on a production system");
    run_cmd->add_option("system", run.system_path, "Production-system file")->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--start", run.start, "Start memory (default: first initial state)");
    run_cmd->add_flag("--classical", run.classical, "Classical iterative deepening plus a first-applicable control run");
    run_cmd->add_option("--max-steps", run.max_steps, "Step limit for the classical control run");
    add_search_flags(run_cmd, run.flags, true);

    CompileArgs compile_args;
    auto *compile_cmd = app.add_subcommand("compile-tm", "Compile a Turing machine into a production system");
    compile_cmd->add_option("tm", compile_args.tm_path, "Turing-machine file")->required()->check(CLI::ExistingFile);
    compile_cmd->add_option("--input", compile_args.inputs, "Input tape(s) used as initial states");
    compile_cmd->add_option("-o,--output", compile_args.output, "Output file (default stdout)");

    DemoArgs demo;
    auto *demo_cmd = app.add_subcommand("demo-flaw", "Halt-qubit measurement on a superposition of inputs");
    demo_cmd->add_option("system", demo.system_path, "Production-system file")->required()->check(CLI::ExistingFile);
    demo_cmd->add_option("-d,--depth", demo.depth, "Number of computation steps")->required();
    demo_cmd->add_option("--seed", demo.seed, "Seed for the sampled halt outcome")->required();
    demo_cmd->add_option("--horizon", demo.horizon, "Steps to look ahead when finding halting times");
    demo_cmd->add_option("--format", demo.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    demo_cmd->add_option("-o,--output", demo.output, "Output file (default stdout)");

    PredictArgs predict_args;
    auto *predict_cmd = app.add_subcommand("predict", "Success probability table: closed form, exact, simulated");
    predict_cmd->add_option("-b", predict_args.b, "Branching factor(s)")->required();
    predict_cmd->add_option("-d", predict_args.d, "Depth(s)")->required();
    predict_cmd->add_option("-k", predict_args.k, "Solution count(s)")->required();
    predict_cmd->add_option("--format", predict_args.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    predict_cmd->add_option("-o,--output", predict_args.output, "Output file (default stdout)");

    BenchArgs bench;
    bench.flags.format = "csv";
    auto *bench_cmd = app.add_subcommand("bench", "Cumulative oracle calls against 4 sqrt(b^d)");
    bench_cmd->add_option("-b", bench.b, "Branching factor(s)");
    bench_cmd->add_option("--d-min", bench.d_min, "Smallest final depth");
    bench_cmd->add_option("--d-max", bench.d_max, "Largest final depth; depths past the cap are marked skipped");
    add_search_flags(bench_cmd, bench.flags, true);
    bench_cmd->get_option("--counting-mode")->description("Ignored: bench always plans for one solution");
    bench_cmd->get_option("--depth-cap")->description("Ignored: use --d-min and --d-max");

    VerifyArgs verify;
    auto *verify_cmd = app.add_subcommand("verify", "Run the acceptance checks");
    verify_cmd->add_option("--inject-fault", verify.inject_fault, "Perturb a component to confirm the checks fail")
        ->check(CLI::IsMember({"diffusion"}));
    verify_cmd->add_flag("-q,--quiet", verify.quiet, "Only print the per-check result lines");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (*run_cmd) return cmd_run(run);
        if (*compile_cmd) return cmd_compile_tm(compile_args);
        if (*demo_cmd) return cmd_demo_flaw(demo);
        if (*predict_cmd) return cmd_predict(predict_args);
        if (*bench_cmd) return cmd_bench(bench);
        if (*verify_cmd) return cmd_verify(verify);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
