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

#include "qedistill/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace qed {

GateSchedule unencode_schedule(int n, int k) {
    if (k < 1 || k >= n) {
        throw std::invalid_argument("unencode schedule needs 1 <= k < n");
    }
    std::map<int, std::vector<Gate>> by_layer;
    for (int i = 1; i <= n; i++) {
        for (int j = 1; j <= n; j++) {
            if (i == j || (i > n - k && j > n - k)) {
                continue;
            }
            int layer = j > i ? i + j - 2 : n + i + j - 2;
            by_layer[layer].push_back(Gate{i - 1, j - 1});
        }
    }
    GateSchedule s;
    s.n = n;
    s.k = k;
    for (auto &[layer, gates] : by_layer) {
        s.layers.push_back(std::move(gates));
    }
    for (int q = n - k; q < n; q++) {
        s.output_slots.push_back(q);
    }
    return s;
}

namespace {

// Pauli that the relabeling taking Z to `b` assigns to letter `p`.
char relabel_letter(char p, Basis b) {
    if (b == Basis::X) {
        return p == 'X' ? 'Z' : p == 'Z' ? 'X' : p;
    }
    if (b == Basis::Y) {
        return p == 'Y' ? 'Z' : p == 'Z' ? 'Y' : p;
    }
    return p;
}

GateSchedule parity_schedule(int n) {
    // Physical roles: `a` gathers the X check, `b` gathers the Z check, and the
    // n-2 middle qubits become the outputs. Slots put the outputs first.
    const int a = n - 2;
    const int b = n - 1;
    auto mid = [](int j) { return j; };  // j-th middle qubit, 0-based
    GateSchedule s;
    s.n = n;
    s.k = n - 2;
    for (int t = 0; t < n - 2; t++) {
        int c = t + 1 < n - 2 ? t + 1 : 0;
        s.layers.push_back({Gate{a, mid(t)}, Gate{mid(c), b}});
    }
    for (int q = 0; q < n - 2; q++) {
        s.output_slots.push_back(q);
    }
    return s;
}

GateSchedule repetition_schedule(int n, Basis basis) {
    GateSchedule s;
    s.n = n;
    s.k = 1;
    for (int j = 1; j < n; j++) {
        s.layers.push_back({Gate{0, j, relabel_letter('Z', basis), relabel_letter('X', basis)}});
    }
    s.output_slots = {0};
    return s;
}

bool anticommutes_letter(char a, char b) {
    return a != 'I' && b != 'I' && a != b;
}

}  // namespace

GateSchedule unencode_schedule(const CodeSpec &code) {
    switch (code.kind) {
        case CodeKind::QuantumParity:
            return parity_schedule(code.n);
        case CodeKind::Repetition:
            return repetition_schedule(code.n, code.basis);
        default:
            return unencode_schedule(code.n, code.k);
    }
}

PauliOp apply_gate(const PauliOp &p, const Gate &g) {
    PauliOp out = p;
    if (anticommutes_letter(p.at(g.control), g.control_pauli)) {
        out *= PauliOp::single(p.size(), g.target, g.target_pauli);
    }
    if (anticommutes_letter(p.at(g.target), g.target_pauli)) {
        out *= PauliOp::single(p.size(), g.control, g.control_pauli);
    }
    return out;
}

PauliOp replay(const GateSchedule &s, PauliOp p) {
    for (const auto &layer : s.layers) {
        for (const auto &g : layer) {
            p = apply_gate(p, g);
        }
    }
    return p;
}

bool verify_unencoding(const StabilizerCode &code, const GateSchedule &s) {
    if (static_cast<size_t>(s.n) != code.n || static_cast<size_t>(s.k) != code.k ||
        s.output_slots.size() != code.k) {
        return false;
    }
    for (const auto &layer : s.layers) {
        std::vector<bool> used(code.n);
        for (const auto &g : layer) {
            if (g.control == g.target || used[g.control] || used[g.target]) {
                return false;
            }
            used[g.control] = used[g.target] = true;
        }
    }
    std::vector<bool> is_output(code.n);
    for (int q : s.output_slots) {
        is_output[q] = true;
    }
    std::vector<PauliOp> stab;
    for (const auto &g : code.stabilizers) {
        stab.push_back(replay(s, g));
    }
    // Each non-output slot must carry a single-qubit element of the image group.
    std::vector<char> check(code.n, 'I');
    for (size_t q = 0; q < code.n; q++) {
        if (is_output[q]) {
            continue;
        }
        for (char c : {'X', 'Y', 'Z'}) {
            if (in_span(stab, PauliOp::single(code.n, q, c))) {
                check[q] = c;
                break;
            }
        }
        if (check[q] == 'I') {
            return false;
        }
    }
    for (size_t j = 0; j < code.k; j++) {
        for (const PauliOp *l : {&code.logical_x[j], &code.logical_z[j]}) {
            PauliOp img = replay(s, *l);
            for (size_t q = 0; q < code.n; q++) {
                if (is_output[q] || img.at(q) == 'I') {
                    continue;
                }
                if (img.at(q) != check[q]) {
                    return false;
                }
                img.set(q, 'I');
            }
            if (img.is_identity()) {
                return false;
            }
        }
    }
    return true;
}

StageThroughput stage_throughput(double T_in, double T_dis, double B, int n, int n_total, int k, double p_fail) {
    if (!(T_in > 0) || !(T_dis >= 0)) {
        throw std::invalid_argument("stage times must be positive");
    }
    if (n < 1 || k < 1 || k > n || n_total < n) {
        throw std::invalid_argument("stage needs 1 <= k <= n <= n_total");
    }
    if (!(p_fail >= 0 && p_fail < 1)) {
        throw std::invalid_argument("p_fail must be in [0,1)");
    }
    if (B < n) {
        throw std::domain_error("buffer " + std::to_string(B) + " is smaller than the block size " +
                                std::to_string(n));
    }
    StageThroughput r;
    double input_bound = n * T_in / ((1 - p_fail) * k);
    double in_flight = n * std::ceil(T_dis / (n * T_in));
    if (T_dis <= n * T_in || B >= in_flight) {
        r.T_out = input_bound;
        return r;
    }
    double copies = std::floor(B / n_total);
    if (copies < 1) {
        throw std::domain_error("buffer cannot hold one block with its ancillas");
    }
    r.limited_space = true;
    r.T_out = std::max(input_bound, T_dis / (copies * (1 - p_fail) * k));
    r.discard_fraction = 1 - input_bound / r.T_out;
    return r;
}

PipelinePlan plan_pipeline(const std::vector<CodeSpec> &seq, const SequenceMetrics &metrics, double T_Bell,
                           double T_gate, double T_inject) {
    if (!(T_Bell > 0) || !(T_gate > 0) || !(T_inject > 0)) {
        throw std::invalid_argument("pipeline times must be positive");
    }
    if (metrics.levels.size() != seq.size()) {
        throw std::invalid_argument("metrics do not belong to this sequence");
    }
    for (size_t i = 0; i < seq.size(); i++) {
        if (!(metrics.levels[i].code == seq[i])) {
            throw std::invalid_argument("metrics do not belong to this sequence");
        }
    }
    PipelinePlan plan;
    plan.B0 = static_cast<int64_t>(std::ceil(T_inject / T_Bell));
    plan.B_all = static_cast<double>(plan.B0);
    // Expected Bell-pair slots spent per block of the previous level.
    double per_block = 1 / (1 - metrics.p0_reject);
    int64_t K = 1;
    for (size_t i = 0; i < seq.size(); i++) {
        const auto &c = seq[i];
        StagePlan st;
        st.T_input = c.n * per_block * T_Bell;
        st.T_distill = (3 * c.n - 2 - c.k) * T_gate;
        st.B = (st.T_distill / st.T_input + 1) * c.n * K;
        plan.B_all += st.B;
        plan.stages.push_back(st);
        per_block *= c.n / (1 - metrics.levels[i].p_fail);
        K *= c.k;
    }
    plan.batch_size = K;
    plan.batch_period = T_Bell * per_block;
    return plan;
}

}  // namespace qed
