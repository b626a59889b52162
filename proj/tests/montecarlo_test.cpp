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

#include "qedistill/montecarlo.hpp"

#include <cmath>

#include "gtest/gtest.h"
#include "qedistill/analytic.hpp"

using namespace qed;

namespace {

TrialConfig trials(uint64_t n, uint64_t seed = 5, int threads = 1) {
    TrialConfig c;
    c.trials = n;
    c.seed = seed;
    c.threads = threads;
    return c;
}

// Exhaustive sum over all 4^n errors.
ParityStats brute_parity(int n, const PauliDist &d) {
    auto code = parity_code(n);
    std::array<double, 4> w = {d.i, d.x, d.z, d.y};  // indexed by the 2-bit encoding
    ParityStats s{0, 0};
    uint64_t total = uint64_t{1} << (2 * n);
    for (uint64_t m = 0; m < total; m++) {
        PauliOp e(n);
        double prob = 1;
        for (int q = 0; q < n; q++) {
            unsigned v = (m >> (2 * q)) & 3;
            e.set_x(q, v & 1);
            e.set_z(q, v & 2);
            prob *= w[v];
        }
        bool ok = true;
        for (bool b : syndrome(code, e)) {
            ok &= !b;
        }
        if (ok) {
            s.accept += prob;
            if (!logical_effect(code, e).is_identity()) {
                s.block_error += prob;
            }
        }
    }
    return s;
}

}  // namespace

TEST(montecarlo, streams_are_reproducible_and_distinct) {
    auto a = trial_stream(1, 0);
    auto b = trial_stream(1, 0);
    auto c = trial_stream(1, 1);
    auto d = trial_stream(2, 0);
    uint64_t va = a.next();
    ASSERT_EQ(va, b.next());
    ASSERT_NE(va, c.next());
    ASSERT_NE(va, d.next());
    SplitMix64 r(3);
    for (int i = 0; i < 1000; i++) {
        double u = r.uniform();
        ASSERT_GE(u, 0);
        ASSERT_LT(u, 1);
    }
}

TEST(montecarlo, sample_pauli_frequencies) {
    auto d = PauliDist::make(0.4, 0.3, 0.2, 0.1);
    SplitMix64 r(11);
    std::array<int, 4> counts{};
    const int N = 200000;
    for (int i = 0; i < N; i++) {
        counts[sample_pauli(d, r)]++;
    }
    std::array<double, 4> expect = {0.4, 0.3, 0.1, 0.2};  // I, X, Z, Y by encoding
    for (int v = 0; v < 4; v++) {
        double sigma = std::sqrt(expect[v] * (1 - expect[v]) / N);
        ASSERT_NEAR(counts[v] / double(N), expect[v], 4 * sigma);
    }
}

TEST(montecarlo, wilson_interval) {
    auto p = wilson(0, 100);
    ASSERT_EQ(p.value, 0);
    ASSERT_EQ(p.lo, 0);
    ASSERT_GT(p.hi, 0.03);
    ASSERT_LT(p.hi, 0.04);
    auto q = wilson(50, 100);
    ASSERT_NEAR(q.lo, 0.4038, 1e-4);
    ASSERT_NEAR(q.hi, 0.5962, 1e-4);
    auto e = wilson(0, 0);
    ASSERT_EQ(e.total, 0u);
    ASSERT_EQ(e.hi, 1);
}

TEST(montecarlo, exact_parity_stats_matches_enumeration) {
    std::vector<PauliDist> dists = {depolarizing(0.01), depolarizing(0.2), PauliDist::make(0.7, 0.05, 0.1, 0.15),
                                    PauliDist::make(0.9, 0.1, 0, 0)};
    for (int n : {4, 6, 8}) {
        for (const auto &d : dists) {
            auto exact = exact_parity_stats(n, d);
            auto brute = brute_parity(n, d);
            ASSERT_NEAR(exact.accept, brute.accept, 1e-12);
            ASSERT_NEAR(exact.block_error, brute.block_error, 1e-12);
        }
    }
    auto s = exact_parity_stats(4, depolarizing(0.01));
    ASSERT_NEAR(s.accept, 0.9607929125925926, 1e-13);
    ASSERT_NEAR(s.block_error, 0.00019690222222222222, 1e-15);
    ASSERT_THROW(exact_parity_stats(5, depolarizing(0.01)), std::invalid_argument);
}

TEST(montecarlo, simulate_level_agrees_with_exact) {
    for (int n : {4, 8}) {
        auto d = depolarizing(0.05);
        auto est = simulate_level(parity_code(n), d, trials(200000));
        auto exact = exact_parity_stats(n, d);
        double pf = 1 - exact.accept;
        ASSERT_NEAR(est.p_fail.value, pf, 3 * std::sqrt(pf * (1 - pf) / est.trials));
        double po = exact.block_error / exact.accept;
        ASSERT_NEAR(est.p_out.value, po, 3 * std::sqrt(po * (1 - po) / est.p_out.total));
        ASSERT_NEAR(est.consumed_per_output, n / (n - 2.0) / exact.accept, 3 * est.consumed_stderr);
    }
}

TEST(montecarlo, zero_error_input) {
    auto est = simulate_level(parity_code(6), depolarizing(0), trials(1000));
    ASSERT_EQ(est.p_fail.hits, 0u);
    ASSERT_EQ(est.p_out.hits, 0u);
    ASSERT_DOUBLE_EQ(est.consumed_per_output, 1.5);
    auto seq = parse_sequence("r2X,q4.2.2,q16.14.2");
    auto s = simulate_sequence(seq, depolarizing(0), trials(200));
    ASSERT_EQ(s.completed, 200u);
    ASSERT_NEAR(s.consumed_per_output, 2 * 2 * 16.0 / 14, 1e-12);
    ASSERT_EQ(s.consumed_stderr, 0);
    ASSERT_EQ(s.attempt_histogram, std::vector<uint64_t>{200});
}

TEST(montecarlo, classical_chain_agrees_with_closed_form) {
    auto d = depolarizing(0.1);
    auto seq = parse_sequence("r2Z,r2X");
    EvalConfig cfg;
    cfg.p_in = d;
    auto m = evaluate_sequence(seq, cfg);
    auto est = simulate_sequence(seq, d, trials(200000));
    ASSERT_EQ(est.completed, est.trials);
    double po = m.p_out;
    ASSERT_NEAR(est.p_out.value, po, 3.5 * std::sqrt(po * (1 - po) / est.completed));
    ASSERT_NEAR(est.consumed_per_output, m.overhead, 3.5 * est.consumed_stderr);
    double pf = m.levels[1].p_fail;
    ASSERT_NEAR(est.p_fail.value, pf, 3.5 * std::sqrt(pf * (1 - pf) / est.p_fail.total));
}

TEST(montecarlo, attempt_cap_aborts) {
    TrialConfig c = trials(500);
    c.attempt_cap = 1;
    auto est = simulate_sequence(parse_sequence("q4.2.2"), depolarizing(0.3), c);
    ASSERT_GT(est.aborted, 0u);
    ASSERT_EQ(est.aborted + est.completed, est.trials);
}

TEST(montecarlo, non_simulable_codes_are_rejected) {
    ASSERT_THROW(simulate_sequence(parse_sequence("q17.9.4"), depolarizing(0.01), trials(10)), std::invalid_argument);
    TrialConfig c = trials(10);
    c.trials = 0;
    ASSERT_THROW(simulate_sequence(parse_sequence("q4.2.2"), depolarizing(0.01), c), std::invalid_argument);
}

TEST(montecarlo, thread_count_does_not_change_results) {
    auto seq = parse_sequence("r2Z,q4.2.2");
    auto one = simulate_sequence(seq, depolarizing(0.03), trials(20000, 9, 1));
    for (int t : {3, 8}) {
        auto many = simulate_sequence(seq, depolarizing(0.03), trials(20000, 9, t));
        ASSERT_EQ(one.p_out.hits, many.p_out.hits);
        ASSERT_EQ(one.p_fail.hits, many.p_fail.hits);
        ASSERT_EQ(one.consumed_per_output, many.consumed_per_output);
        ASSERT_EQ(one.attempt_histogram, many.attempt_histogram);
    }
    auto lvl1 = simulate_level(parity_code(4), depolarizing(0.03), trials(10000, 2, 1));
    auto lvl4 = simulate_level(parity_code(4), depolarizing(0.03), trials(10000, 2, 4));
    ASSERT_EQ(lvl1.p_out.hits, lvl4.p_out.hits);
    ASSERT_EQ(lvl1.p_fail.hits, lvl4.p_fail.hits);
}

TEST(montecarlo, empirical_attempts_geometric) {
    auto h = empirical_attempts(0.5, trials(100000));
    ASSERT_EQ(h.capped, 0u);
    ASSERT_NEAR(h.mean, 2, 4 * h.stderr_mean);
    double tail = h.tail_fraction(10);
    ASSERT_NEAR(tail, std::ldexp(1.0, -10), 4 * std::sqrt(std::ldexp(1.0, -10) / 100000));
    auto z = empirical_attempts(0, trials(100));
    ASSERT_EQ(z.mean, 1);
    ASSERT_EQ(z.counts, std::vector<uint64_t>{100});
    TrialConfig capped = trials(1000);
    capped.attempt_cap = 2;
    auto c = empirical_attempts(0.9, capped);
    ASSERT_GT(c.capped, 0u);
    ASSERT_THROW(empirical_attempts(1, trials(10)), std::invalid_argument);
}
