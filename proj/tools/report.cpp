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

#include "report.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qed {

namespace {

const char *kind_name(CodeKind k) {
    switch (k) {
        case CodeKind::Repetition:
            return "repetition";
        case CodeKind::QuantumParity:
            return "parity";
        case CodeKind::QuantumHamming:
            return "hamming";
        case CodeKind::Catalog:
            return "catalog";
    }
    return "?";
}

CodeKind kind_from_name(const std::string &s) {
    for (CodeKind k : {CodeKind::Repetition, CodeKind::QuantumParity, CodeKind::QuantumHamming, CodeKind::Catalog}) {
        if (s == kind_name(k)) {
            return k;
        }
    }
    throw std::invalid_argument("unknown code kind " + s);
}

// Non-finite values are written as null and read back as +inf.
json real(double v) {
    return std::isfinite(v) ? json(v) : json(nullptr);
}

double real_from(const json &j) {
    return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

}  // namespace

void to_json(json &j, const CodeSpec &c) {
    j = json{{"id", c.id()}, {"kind", kind_name(c.kind)}, {"n", c.n}, {"k", c.k}, {"d", c.d}};
    if (c.kind == CodeKind::Repetition) {
        j["basis"] = std::string(1, basis_char(c.basis));
    }
    if (!c.label.empty()) {
        j["label"] = c.label;
    }
}

void from_json(const json &j, CodeSpec &c) {
    c = CodeSpec{};
    c.kind = kind_from_name(j.at("kind").get<std::string>());
    c.n = j.at("n").get<int>();
    c.k = j.at("k").get<int>();
    c.d = j.at("d").get<int>();
    if (j.contains("basis")) {
        c.basis = basis_from_char(j.at("basis").get<std::string>().at(0));
    }
    if (j.contains("label")) {
        c.label = j.at("label").get<std::string>();
    }
}

void to_json(json &j, const PauliDist &d) {
    j = json{{"i", d.i}, {"x", d.x}, {"y", d.y}, {"z", d.z}};
}

void from_json(const json &j, PauliDist &d) {
    d.i = j.at("i").get<double>();
    d.x = j.at("x").get<double>();
    d.y = j.at("y").get<double>();
    d.z = j.at("z").get<double>();
}

void to_json(json &j, const LevelMetrics &m) {
    j = json{{"code", m.code}, {"p", m.p},   {"p_fail", m.p_fail}, {"K", m.K},
             {"M", m.M},       {"overhead", real(m.overhead)}, {"dist", m.dist}};
}

void from_json(const json &j, LevelMetrics &m) {
    m.code = j.at("code").get<CodeSpec>();
    m.p = j.at("p").get<double>();
    m.p_fail = j.at("p_fail").get<double>();
    m.K = j.at("K").get<int64_t>();
    m.M = j.at("M").get<int64_t>();
    m.overhead = real_from(j.at("overhead"));
    m.dist = j.at("dist").get<PauliDist>();
}

void to_json(json &j, const SequenceMetrics &m) {
    j = json{{"sequence", format_sequence([&] {
                  std::vector<CodeSpec> s;
                  for (const auto &l : m.levels) {
                      s.push_back(l.code);
                  }
                  return s;
              }())},
             {"overhead", real(m.overhead)},
             {"memory", m.M},
             {"K", m.K},
             {"p_in", m.p_in},
             {"p0_reject", m.p0_reject},
             {"p_out", m.p_out},
             {"p_per_qubit", m.p_per_qubit},
             {"meets_target", m.meets_target},
             {"levels", m.levels}};
}

void from_json(const json &j, SequenceMetrics &m) {
    m.overhead = real_from(j.at("overhead"));
    m.M = j.at("memory").get<int64_t>();
    m.K = j.at("K").get<int64_t>();
    m.p_in = j.at("p_in").get<double>();
    m.p0_reject = j.at("p0_reject").get<double>();
    m.p_out = j.at("p_out").get<double>();
    m.p_per_qubit = j.at("p_per_qubit").get<double>();
    m.meets_target = j.at("meets_target").get<bool>();
    m.levels = j.at("levels").get<std::vector<LevelMetrics>>();
}

void to_json(json &j, const Candidate &c) {
    j = json{{"codes", c.seq}, {"order", c.order}, {"metrics", c.metrics}};
}

void from_json(const json &j, Candidate &c) {
    c.seq = j.at("codes").get<std::vector<CodeSpec>>();
    c.order = j.at("order").get<std::vector<int>>();
    c.metrics = j.at("metrics").get<SequenceMetrics>();
}

void to_json(json &j, const Proportion &p) {
    j = json{{"value", p.value}, {"lo", p.lo}, {"hi", p.hi}, {"radius", p.radius}, {"hits", p.hits}, {"total", p.total}};
}

void from_json(const json &j, Proportion &p) {
    p.value = j.at("value").get<double>();
    p.lo = j.at("lo").get<double>();
    p.hi = j.at("hi").get<double>();
    p.radius = j.at("radius").get<double>();
    p.hits = j.at("hits").get<uint64_t>();
    p.total = j.at("total").get<uint64_t>();
}

void to_json(json &j, const SimEstimate &s) {
    j = json{{"seed", s.seed},
             {"trials", s.trials},
             {"completed", s.completed},
             {"aborted", s.aborted},
             {"p_fail", s.p_fail},
             {"p_out", s.p_out},
             {"consumed_per_output", real(s.consumed_per_output)},
             {"consumed_stderr", real(s.consumed_stderr)},
             {"attempt_histogram", s.attempt_histogram}};
}

void from_json(const json &j, SimEstimate &s) {
    s.seed = j.at("seed").get<uint64_t>();
    s.trials = j.at("trials").get<uint64_t>();
    s.completed = j.at("completed").get<uint64_t>();
    s.aborted = j.at("aborted").get<uint64_t>();
    s.p_fail = j.at("p_fail").get<Proportion>();
    s.p_out = j.at("p_out").get<Proportion>();
    s.consumed_per_output = real_from(j.at("consumed_per_output"));
    s.consumed_stderr = real_from(j.at("consumed_stderr"));
    s.attempt_histogram = j.at("attempt_histogram").get<std::vector<uint64_t>>();
}

void to_json(json &j, const StagePlan &s) {
    j = json{{"B", s.B}, {"T_input", s.T_input}, {"T_distill", s.T_distill}};
}

void from_json(const json &j, StagePlan &s) {
    s.B = j.at("B").get<double>();
    s.T_input = j.at("T_input").get<double>();
    s.T_distill = j.at("T_distill").get<double>();
}

void to_json(json &j, const PipelinePlan &p) {
    j = json{{"B0", p.B0},
             {"stages", p.stages},
             {"B_all", p.B_all},
             {"batch_size", p.batch_size},
             {"batch_period", p.batch_period}};
}

void from_json(const json &j, PipelinePlan &p) {
    p.B0 = j.at("B0").get<int64_t>();
    p.stages = j.at("stages").get<std::vector<StagePlan>>();
    p.B_all = j.at("B_all").get<double>();
    p.batch_size = j.at("batch_size").get<int64_t>();
    p.batch_period = j.at("batch_period").get<double>();
}

void to_json(json &j, const BdswResult &b) {
    j = json{{"overhead", real(b.overhead)},
             {"levels", b.levels},
             {"first_basis", std::string(1, basis_char(b.first_basis))},
             {"p_per_qubit", b.p_per_qubit},
             {"converged", b.converged}};
}

void from_json(const json &j, BdswResult &b) {
    b.overhead = real_from(j.at("overhead"));
    b.levels = j.at("levels").get<int>();
    b.first_basis = basis_from_char(j.at("first_basis").get<std::string>().at(0));
    b.p_per_qubit = j.at("p_per_qubit").get<double>();
    b.converged = j.at("converged").get<bool>();
}

void to_json(json &j, const OptimizedCell &c) {
    if (!c.overhead) {
        j = json{{"infeasible", true}};
        return;
    }
    j = json{{"overhead", *c.overhead}, {"sequence", c.sequence}, {"memory", c.memory}};
}

void from_json(const json &j, OptimizedCell &c) {
    c = OptimizedCell{};
    if (j.contains("infeasible")) {
        return;
    }
    c.overhead = j.at("overhead").get<double>();
    c.sequence = j.at("sequence").get<std::string>();
    c.memory = j.at("memory").get<int64_t>();
}

void to_json(json &j, const CompareRow &r) {
    j = json{{"network_error", r.network_error},
             {"distill_input", r.distill_input},
             {"p0_reject", r.p0_reject},
             {"bdsw", r.bdsw},
             {"bdsw_y", r.bdsw_y},
             {"constant", r.constant},
             {"surgery", {{"d", r.surgery.d}, {"bell_pairs", r.surgery.bell_pairs},
                          {"fit_unreliable", r.surgery.fit_unreliable}}},
             {"patch", {{"d", r.patch.d}, {"qubits", r.patch.qubits}}}};
}

void from_json(const json &j, CompareRow &r) {
    r.network_error = j.at("network_error").get<double>();
    r.distill_input = j.at("distill_input").get<double>();
    r.p0_reject = j.at("p0_reject").get<double>();
    r.bdsw = j.at("bdsw").get<BdswResult>();
    r.bdsw_y = j.at("bdsw_y").get<OptimizedCell>();
    r.constant = j.at("constant").get<std::vector<OptimizedCell>>();
    r.surgery.d = j.at("surgery").at("d").get<int>();
    r.surgery.bell_pairs = j.at("surgery").at("bell_pairs").get<int64_t>();
    r.surgery.fit_unreliable = j.at("surgery").at("fit_unreliable").get<bool>();
    r.patch.d = j.at("patch").at("d").get<int>();
    r.patch.qubits = j.at("patch").at("qubits").get<int64_t>();
}

namespace report {

std::string num(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

std::string Table::str() const {
    std::string out;
    auto line = [&](const std::vector<std::string> &cells) {
        for (size_t i = 0; i < cells.size(); i++) {
            if (i) {
                out += ',';
            }
            // Sequences contain commas.
            if (cells[i].find(',') != std::string::npos) {
                out += '"' + cells[i] + '"';
            } else {
                out += cells[i];
            }
        }
        out += '\n';
    };
    line(header);
    for (const auto &r : rows) {
        line(r);
    }
    return out;
}

Table metrics_table(const SequenceMetrics &m) {
    Table t;
    t.header = {"level", "code", "p", "p_fail", "K", "M", "overhead"};
    t.rows.push_back({"0", "input", num(m.p_in), num(m.p0_reject), "1", "1", num(1 / (1 - m.p0_reject))});
    for (size_t i = 0; i < m.levels.size(); i++) {
        const auto &l = m.levels[i];
        t.rows.push_back({std::to_string(i + 1), l.code.id(), num(l.p), num(l.p_fail), std::to_string(l.K),
                          std::to_string(l.M), num(l.overhead)});
    }
    return t;
}

Table search_table(const std::vector<std::pair<int64_t, SearchResult>> &sweep) {
    Table t;
    t.header = {"buffer", "feasible", "overhead", "memory", "K", "p_per_qubit", "sequence", "viable", "nodes_visited",
                "nodes_pruned"};
    for (const auto &[m, r] : sweep) {
        std::vector<std::string> row = {std::to_string(m), r.best ? "1" : "0"};
        if (r.best) {
            const auto &b = r.best->metrics;
            row.insert(row.end(), {num(b.overhead), std::to_string(b.M), std::to_string(b.K), num(b.p_per_qubit),
                                   format_sequence(r.best->seq)});
        } else {
            row.insert(row.end(), {"", "", "", "", ""});
        }
        row.insert(row.end(), {std::to_string(r.viable.size()), std::to_string(r.nodes_visited),
                               std::to_string(r.nodes_pruned)});
        t.rows.push_back(row);
    }
    return t;
}

Table sim_table(const SimEstimate &s) {
    Table t;
    t.header = {"seed",  "trials",  "completed",  "aborted",  "p_fail", "p_fail_lo", "p_fail_hi",
                "p_out", "p_out_lo", "p_out_hi", "consumed_per_output", "consumed_stderr"};
    t.rows.push_back({std::to_string(s.seed), std::to_string(s.trials), std::to_string(s.completed),
                      std::to_string(s.aborted), num(s.p_fail.value), num(s.p_fail.lo), num(s.p_fail.hi),
                      num(s.p_out.value), num(s.p_out.lo), num(s.p_out.hi), num(s.consumed_per_output),
                      num(s.consumed_stderr)});
    return t;
}

Table pipeline_table(const PipelinePlan &p) {
    Table t;
    t.header = {"stage", "B", "T_input", "T_distill"};
    t.rows.push_back({"0", std::to_string(p.B0), "", ""});
    for (size_t i = 0; i < p.stages.size(); i++) {
        const auto &s = p.stages[i];
        t.rows.push_back({std::to_string(i + 1), num(s.B), num(s.T_input), num(s.T_distill)});
    }
    t.rows.push_back({"total", num(p.B_all), "batch_size=" + std::to_string(p.batch_size),
                      "batch_period=" + num(p.batch_period)});
    return t;
}

Table compare_table(const std::vector<CompareRow> &rows, const std::vector<int64_t> &buffers) {
    Table t;
    t.header = {"network_error", "distill_input", "bdsw_overhead", "bdsw_levels", "bdsw_y_overhead",
                "bdsw_y_memory"};
    for (int64_t b : buffers) {
        t.header.push_back("buffer" + std::to_string(b) + "_overhead");
        t.header.push_back("buffer" + std::to_string(b) + "_memory");
    }
    t.header.insert(t.header.end(), {"surgery_d", "surgery_bell_pairs", "patch_d", "patch_qubits"});
    auto cell = [](const OptimizedCell &c) {
        return std::vector<std::string>{c.overhead ? num(*c.overhead) : "infeasible",
                                        c.overhead ? std::to_string(c.memory) : ""};
    };
    for (const auto &r : rows) {
        std::vector<std::string> row = {num(r.network_error), num(r.distill_input),
                                        r.bdsw.converged ? num(r.bdsw.overhead) : "infeasible",
                                        std::to_string(r.bdsw.levels)};
        auto y = cell(r.bdsw_y);
        row.insert(row.end(), y.begin(), y.end());
        for (const auto &c : r.constant) {
            auto v = cell(c);
            row.insert(row.end(), v.begin(), v.end());
        }
        row.insert(row.end(), {std::to_string(r.surgery.d), std::to_string(r.surgery.bell_pairs),
                               std::to_string(r.patch.d), std::to_string(r.patch.qubits)});
        t.rows.push_back(row);
    }
    return t;
}

}  // namespace report
}  // namespace qed
