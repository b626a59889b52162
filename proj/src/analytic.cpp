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

#include "qedistill/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qed {

namespace {

void check_prob(double p, const char *what) {
    if (!(p >= 0 && p < 1)) {
        throw std::invalid_argument(std::string(what) + " must be in [0,1), got " + std::to_string(p));
    }
}

}  // namespace

double qed_error_bound(int n, int k, int d, double p) {
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument("p must be in [0,1], got " + std::to_string(p));
    }
    if (d < 1 || d > n || k < 0 || k > n) {
        throw std::invalid_argument("code parameters out of range");
    }
    if (p == 0) {
        return 0;
    }
    if (p == 1) {
        return 1;
    }
    // P(at least d errors) / (1-p)^n = sum_{j>=d} C(n,j) r^j with r = p/(1-p).
    // Summing the upper tail directly keeps small p from cancelling against 1.
    double r = p / (1 - p);
    double term = 1;  // C(n,j) r^j
    double tail = 0;
    for (int j = 0; j <= n; j++) {
        if (j >= d) {
            tail += term;
        }
        term = term * (n - j) / (j + 1) * r;
    }
    return std::clamp(tail, 0.0, 1.0);
}

double qed_accept_lower(int n, double p) {
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument("p must be in [0,1], got " + std::to_string(p));
    }
    if (n < 1) {
        throw std::invalid_argument("n must be positive");
    }
    return std::pow(1 - p, n);
}

LevelState LevelState::start(const EvalConfig &cfg) {
    check_prob(cfg.p0_reject, "p0_reject");
    LevelState s;
    s.dist = cfg.p_in;
    s.p = total_error(cfg.p_in);
    s.overhead = 1 / (1 - cfg.p0_reject);
    return s;
}

LevelState LevelState::advance(const CodeSpec &code, double *p_fail) const {
    LevelState next = *this;
    double fail;
    if (code.is_classical()) {
        if (!classical) {
            throw OrderingError("classical code " + code.id() + " may not follow a quantum code");
        }
        auto step = repetition_step(dist, code.n, code.basis);
        fail = 1 - step.accept;
        next.dist = step.out;
        next.p = total_error(step.out);
    } else {
        // Quantum levels see only the scalar error rate.
        next.classical = false;
        fail = 1 - qed_accept_lower(code.n, p);
        next.p = qed_error_bound(code.n, code.k, code.d, p);
    }
    next.K = K * code.k;
    next.M = std::max<int64_t>(code.n * K, (code.n - 1) * K + M);
    next.overhead = overhead * code.n / code.k / (1 - fail);
    if (p_fail) {
        *p_fail = fail;
    }
    return next;
}

SequenceMetrics evaluate_sequence(const std::vector<CodeSpec> &seq, const EvalConfig &cfg) {
    if (!(cfg.p_target > 0)) {
        throw std::invalid_argument("p_target must be positive");
    }
    LevelState s = LevelState::start(cfg);
    SequenceMetrics m;
    m.p_in = s.p;
    m.p0_reject = cfg.p0_reject;
    for (const auto &code : seq) {
        LevelMetrics lv;
        s = s.advance(code, &lv.p_fail);
        lv.code = code;
        lv.p = s.p;
        lv.K = s.K;
        lv.M = s.M;
        lv.overhead = s.overhead;
        lv.dist = s.dist;
        m.levels.push_back(lv);
    }
    m.p_out = s.p;
    m.K = s.K;
    m.M = s.M;
    m.overhead = s.overhead;
    m.p_per_qubit = s.p / static_cast<double>(s.K);
    m.meets_target = m.p_per_qubit < cfg.p_target;
    return m;
}

int64_t memory_footprint(const std::vector<CodeSpec> &seq) {
    int64_t K = 1;
    int64_t M = 1;
    for (const auto &c : seq) {
        M = std::max<int64_t>(c.n * K, (c.n - 1) * K + M);
        K *= c.k;
    }
    return M;
}

std::vector<CodeSpec> quadratic_parity_sequence(int levels) {
    std::vector<CodeSpec> seq;
    for (int i = 1; i <= levels; i++) {
        seq.push_back(CodeSpec::quantum_parity(4 * i * i));
    }
    return seq;
}

TheoremBounds theorem_bounds(int level, double p) {
    if (!(p >= 0 && p <= 1.0 / 2000)) {
        throw std::invalid_argument("theorem bounds need p in [0, 1/2000]");
    }
    if (level < 0) {
        throw std::invalid_argument("level must be nonnegative");
    }
    TheoremBounds b;
    b.p_bound = level == 0 ? p : std::pow(544 * p, std::ldexp(1.0, level)) / 34;
    int64_t K = 1;
    for (int i = 1; i <= level; i++) {
        int64_t n = 4 * i * i;
        b.memory_bound += n * K;
        K *= n - 2;
    }
    return b;
}

AttemptStats attempt_stats(double p_fail, double epsilon) {
    check_prob(p_fail, "p_fail");
    if (!(epsilon > 0 && epsilon < 1)) {
        throw std::invalid_argument("epsilon must be in (0,1)");
    }
    AttemptStats a;
    a.mean = 1 / (1 - p_fail);
    a.tail_quantile = p_fail == 0 ? 1 : std::log(1 / epsilon) / std::log(1 / p_fail);
    return a;
}

}  // namespace qed
