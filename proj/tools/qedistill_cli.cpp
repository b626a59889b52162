// Copyright 2026 The qedistill Authors
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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "CLI11.hpp"
#include "qedistill/analytic.hpp"
#include "qedistill/estimators.hpp"
#include "qedistill/montecarlo.hpp"
#include "qedistill/optimizer.hpp"
#include "qedistill/pipeline.hpp"
#include "report.hpp"

using namespace qed;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitInfeasible = 2;

struct ConfigError : std::runtime_error {
    ConfigError(const std::string &field, const std::string &msg) : std::runtime_error(field + ": " + msg) {}
};

struct Common {
    std::string catalog;
    bool no_builtin = false;
    std::string format = "json";
    std::string out;
    uint64_t seed = 1;
    int threads = 1;
};

struct Inputs {
    double p_bell = 0.01;
    double p_gate = 0.001;
    double p_reject = 0.08;
    std::optional<double> p_in;
    std::optional<double> p0;
    bool no_injection = false;
    double target = 1e-12;
};

void add_common(CLI::App *cmd, Common &c, bool catalog, bool seed) {
    if (catalog) {
        cmd->add_option("--catalog", c.catalog, "Extra catalog CSV (n,k,d[,label])");
        cmd->add_flag("--no-builtin", c.no_builtin, "Drop the shipped catalog and generated code families");
    }
    cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", c.out, "Write the report here instead of stdout");
    if (seed) {
        cmd->add_option("--seed", c.seed, "Master seed");
    }
    cmd->add_option("--threads", c.threads, "Worker threads; results do not depend on this");
}

void add_inputs(CLI::App *cmd, Inputs &in, bool target) {
    cmd->add_option("--p-bell", in.p_bell, "Network Bell-pair error rate");
    cmd->add_option("--p-gate", in.p_gate, "Local one- and two-qubit gate error rate");
    cmd->add_option("--p-reject", in.p_reject, "Single-qubit injection rejection rate");
    cmd->add_option("--p-in", in.p_in, "Depolarizing error entering distillation (skips the injection model)");
    cmd->add_option("--p0", in.p0, "Pair injection rejection rate charged once");
    cmd->add_flag("--no-injection", in.no_injection, "Feed the network error straight into distillation, p0 = 0");
    if (target) {
        cmd->add_option("--target", in.target, "Per-logical-pair target error");
    }
}

void check_prob(const char *field, double v, double hi = 1) {
    if (!(v >= 0 && v < hi)) {
        throw ConfigError(field, "must be in [0, " + report::num(hi) + "), got " + report::num(v));
    }
}

EvalConfig resolve(const Inputs &in) {
    check_prob("p-bell", in.p_bell);
    check_prob("p-gate", in.p_gate);
    check_prob("p-reject", in.p_reject);
    if (!(in.target > 0 && in.target <= 1)) {
        throw ConfigError("target", "must be in (0, 1]");
    }
    EvalConfig cfg;
    cfg.p_target = in.target;
    double p;
    if (in.p_in) {
        check_prob("p-in", *in.p_in, 0.75);
        p = *in.p_in;
    } else if (in.no_injection) {
        p = in.p_bell;
    } else {
        p = injection_error({in.p_gate, in.p_gate, in.p_bell, in.p_reject});
    }
    if (!(p <= 0.75)) {
        throw ConfigError("p-bell", "distillation input error exceeds 3/4");
    }
    cfg.p_in = depolarizing(p);
    if (in.p0) {
        check_prob("p0", *in.p0);
        cfg.p0_reject = *in.p0;
    } else {
        cfg.p0_reject = in.no_injection ? 0 : bell_injection_reject(in.p_reject);
    }
    return cfg;
}

json inputs_json(const EvalConfig &cfg) {
    return json{{"p_in", total_error(cfg.p_in)}, {"p0_reject", cfg.p0_reject}, {"p_target", cfg.p_target}};
}

CodeCatalog resolve_catalog(const Common &c) {
    CodeCatalog cat;
    cat.provenance = c.no_builtin ? "" : "builtin";
    if (!c.no_builtin) {
        cat = load_builtin_catalog(true);
    }
    if (!c.catalog.empty()) {
        CodeCatalog extra;
        try {
            extra = load_catalog(c.catalog, false);
        } catch (const CatalogError &e) {
            throw ConfigError("catalog", e.what());
        }
        std::set<std::tuple<int, int, int, int, int>> seen;
        auto key = [](const CodeSpec &s) {
            return std::make_tuple(static_cast<int>(s.kind), s.n, s.k, s.d, static_cast<int>(s.basis));
        };
        for (const auto &s : cat.entries) {
            seen.insert(key(s));
        }
        for (const auto &s : extra.entries) {
            if (seen.insert(key(s)).second) {
                cat.entries.push_back(s);
            }
        }
        cat.provenance = cat.provenance.empty() ? c.catalog : cat.provenance + "+" + c.catalog;
    }
    return cat;
}

std::vector<CodeSpec> resolve_sequence(const std::string &text) {
    try {
        return parse_sequence(text);
    } catch (const SequenceParseError &e) {
        throw ConfigError("seq", e.what());
    }
}

void check_threads(const Common &c) {
    if (c.threads < 1) {
        throw ConfigError("threads", "must be at least 1");
    }
}

void emit(const Common &c, const json &j, const report::Table &t) {
    std::string text = c.format == "csv" ? t.str() : j.dump(2) + "\n";
    if (c.out.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) {
        throw ConfigError("out", "cannot open " + c.out);
    }
    f << text;
}

int run_optimize(const Common &c, const Inputs &in, const std::vector<int64_t> &buffers, int l_max, bool viable) {
    check_threads(c);
    EvalConfig cfg = resolve(in);
    if (buffers.empty()) {
        throw ConfigError("buffer", "at least one buffer size is needed");
    }
    for (int64_t b : buffers) {
        if (b < 1) {
            throw ConfigError("buffer", "must be at least 1, got " + std::to_string(b));
        }
    }
    if (l_max < 1) {
        throw ConfigError("lmax", "must be at least 1");
    }
    std::vector<int64_t> sorted = buffers;
    std::sort(sorted.begin(), sorted.end());
    CodeCatalog cat = resolve_catalog(c);
    SearchConstraints sc;
    sc.cfg = cfg;
    sc.l_max = l_max;
    sc.threads = c.threads;
    std::vector<std::pair<int64_t, SearchResult>> sweep;
    if (cat.entries.empty()) {
        for (int64_t b : sorted) {
            sweep.emplace_back(b, SearchResult{});
        }
    } else {
        sweep = pareto_sweep(cat, sc, sorted);
    }
    json results = json::array();
    bool infeasible = false;
    for (const auto &[b, r] : sweep) {
        json j{{"buffer", b}, {"feasible", r.best.has_value()}};
        j["best"] = r.best ? json(*r.best) : json(nullptr);
        j["viable_count"] = r.viable.size();
        if (viable) {
            j["viable"] = r.viable;
        }
        j["nodes_visited"] = r.nodes_visited;
        j["nodes_pruned"] = r.nodes_pruned;
        results.push_back(j);
        infeasible |= !r.best;
    }
    json out{{"command", "optimize"},
             {"input", inputs_json(cfg)},
             {"l_max", l_max},
             {"catalog", {{"provenance", cat.provenance}, {"size", cat.entries.size()}}},
             {"results", results}};
    emit(c, out, report::search_table(sweep));
    if (infeasible) {
        std::cerr << "infeasible: no sequence meets the constraints for at least one buffer size\n";
        return kExitInfeasible;
    }
    return kExitOk;
}

int run_evaluate(const Common &c, const Inputs &in, const std::string &seq_text) {
    EvalConfig cfg = resolve(in);
    auto seq = resolve_sequence(seq_text);
    SequenceMetrics m;
    try {
        m = evaluate_sequence(seq, cfg);
    } catch (const OrderingError &e) {
        throw ConfigError("seq", e.what());
    }
    json out{{"command", "evaluate"}, {"input", inputs_json(cfg)}, {"metrics", m}};
    emit(c, out, report::metrics_table(m));
    return kExitOk;
}

int run_simulate(const Common &c, const Inputs &in, const std::string &seq_text, uint64_t trials, uint64_t cap,
                 bool single) {
    check_threads(c);
    EvalConfig cfg = resolve(in);
    auto seq = resolve_sequence(seq_text);
    for (const auto &code : seq) {
        if (!code.is_simulable()) {
            throw ConfigError("seq", "code " + code.id() + " is not simulable (only parity and repetition codes are)");
        }
    }
    if (trials < 1) {
        throw ConfigError("trials", "must be at least 1");
    }
    if (cap < 1) {
        throw ConfigError("attempt-cap", "must be at least 1");
    }
    TrialConfig tc{c.seed, trials, cap, c.threads};
    SimEstimate est;
    if (single) {
        if (seq.size() != 1) {
            throw ConfigError("seq", "--single-level needs exactly one code");
        }
        est = simulate_level(build_code(seq[0]), cfg.p_in, tc);
    } else {
        est = simulate_sequence(seq, cfg.p_in, tc);
    }
    json out{{"command", "simulate"},
             {"mode", single ? "level" : "sequence"},
             {"sequence", format_sequence(seq)},
             {"input", cfg.p_in},
             {"attempt_cap", cap},
             {"estimate", est}};
    emit(c, out, report::sim_table(est));
    return kExitOk;
}

int run_compare(const Common &c, CompareConfig cc) {
    check_threads(c);
    check_prob("p-gate", cc.p_gate, 0.011);
    check_prob("p-reject", cc.p_reject);
    for (double v : cc.network_errors) {
        check_prob("networks", v, 0.75);
    }
    for (int64_t b : cc.buffers) {
        if (b < 1) {
            throw ConfigError("buffers", "must be at least 1");
        }
    }
    if (!(cc.p_target > 0)) {
        throw ConfigError("target", "must be positive");
    }
    cc.threads = c.threads;
    CodeCatalog cat = resolve_catalog(c);
    if (cat.entries.empty()) {
        throw ConfigError("catalog", "the comparison needs a nonempty catalog");
    }
    std::vector<CompareRow> rows;
    try {
        rows = comparison_table(cat, cc);
    } catch (const std::domain_error &e) {
        throw ConfigError("networks", e.what());
    }
    json out{{"command", "compare"},
             {"p_gate", cc.p_gate},
             {"p_target", cc.p_target},
             {"buffers", cc.buffers},
             {"rows", rows}};
    emit(c, out, report::compare_table(rows, cc.buffers));
    return kExitOk;
}

int run_pipeline(const Common &c, const Inputs &in, const std::string &seq_text, double t_bell, double t_gate,
                 double t_inject) {
    EvalConfig cfg = resolve(in);
    auto seq = resolve_sequence(seq_text);
    for (auto [field, v] : {std::pair{"t-bell", t_bell}, {"t-gate", t_gate}, {"t-inject", t_inject}}) {
        if (!(v > 0)) {
            throw ConfigError(field, "must be positive");
        }
    }
    SequenceMetrics m;
    try {
        m = evaluate_sequence(seq, cfg);
    } catch (const OrderingError &e) {
        throw ConfigError("seq", e.what());
    }
    PipelinePlan plan = plan_pipeline(seq, m, t_bell, t_gate, t_inject);
    json schedules = json::array();
    for (const auto &code : seq) {
        auto s = unencode_schedule(code);
        schedules.push_back({{"code", code.id()}, {"depth", s.depth()}, {"output_slots", s.output_slots}});
    }
    json out{{"command", "pipeline"},
             {"sequence", format_sequence(seq)},
             {"times", {{"T_Bell", t_bell}, {"T_gate", t_gate}, {"T_inject", t_inject}}},
             {"plan", plan},
             {"schedules", schedules}};
    emit(c, out, report::pipeline_table(plan));
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Concatenated error-detection distillation: evaluate, optimize, simulate, compare, plan."};
    app.set_config("--config", "", "TOML/INI file; command-line flags take precedence");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(1);

    Common common;
    Inputs inputs;

    auto *opt = app.add_subcommand("optimize", "Search for the lowest-overhead sequence under a buffer limit");
    std::vector<int64_t> buffers{30};
    int l_max = 7;
    bool viable = false;
    add_common(opt, common, true, false);
    add_inputs(opt, inputs, true);
    opt->add_option("--buffer", buffers, "Buffer size(s) M_max; several values run a sweep");
    opt->add_option("--lmax", l_max, "Maximum number of levels");
    opt->add_flag("--viable", viable, "Include every recorded sequence in the JSON report");

    std::string seq_text;
    auto *eval = app.add_subcommand("evaluate", "Metrics of an explicit sequence");
    add_common(eval, common, false, false);
    add_inputs(eval, inputs, true);
    eval->add_option("--seq", seq_text, "Sequence, e.g. r3X,r2Y,r2X,q4.2.2")->required();

    auto *sim = app.add_subcommand("simulate", "Monte-Carlo estimate for parity/repetition sequences");
    uint64_t trials = 100000;
    uint64_t cap = 1000000;
    bool single = false;
    add_common(sim, common, false, true);
    add_inputs(sim, inputs, false);
    sim->add_option("--seq", seq_text, "Sequence of simulable codes")->required();
    sim->add_option("--trials", trials, "Number of trials");
    sim->add_option("--attempt-cap", cap, "Retries allowed per level per slot before a trial is aborted");
    sim->add_flag("--single-level", single, "One detection attempt per trial on a single code");

    auto *cmp = app.add_subcommand("compare", "Overhead comparison across network error rates");
    CompareConfig cc;
    add_common(cmp, common, true, false);
    cmp->add_option("--networks", cc.network_errors, "Network error rates");
    cmp->add_option("--buffers", cc.buffers, "Buffer sizes for the optimized rows");
    cmp->add_option("--p-gate", cc.p_gate, "Local gate error rate");
    cmp->add_option("--p-reject", cc.p_reject, "Single-qubit injection rejection rate");
    cmp->add_option("--target", cc.p_target, "Per-logical-pair target error");
    cmp->add_option("--lmax", cc.l_max, "Maximum levels for the optimized rows");

    auto *pipe = app.add_subcommand("pipeline", "Buffer and timing plan for a sequence");
    double t_bell = 1;
    double t_gate = 1;
    double t_inject = 1;
    add_common(pipe, common, false, false);
    add_inputs(pipe, inputs, true);
    pipe->add_option("--seq", seq_text, "Sequence")->required();
    pipe->add_option("--t-bell", t_bell, "Time between raw Bell pairs");
    pipe->add_option("--t-gate", t_gate, "Logical two-qubit gate time");
    pipe->add_option("--t-inject", t_inject, "State-injection time");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        if (*opt) {
            return run_optimize(common, inputs, buffers, l_max, viable);
        }
        if (*eval) {
            return run_evaluate(common, inputs, seq_text);
        }
        if (*sim) {
            return run_simulate(common, inputs, seq_text, trials, cap, single);
        }
        if (*cmp) {
            return run_compare(common, cc);
        }
        if (*pipe) {
            return run_pipeline(common, inputs, seq_text, t_bell, t_gate, t_inject);
        }
    } catch (const ConfigError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
