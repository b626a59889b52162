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

#include <cmath>
#include <random>

#include "gtest/gtest.h"

using namespace qed;

namespace {

EvalConfig config(double p, double p0 = 0, double target = 1e-12) {
    EvalConfig c;
    c.p_in = depolarizing(p);
    c.p0_reject = p0;
    c.p_target = target;
    return c;
}

std::vector<CodeSpec> small_buffer_sequence() {
    return parse_sequence("r3X,r2Y,r2X,q4.2.2");
}

// Random sequence respecting the classical-before-quantum rule.
std::vector<CodeSpec> random_sequence(std::mt19937_64 &rng) {
    std::vector<CodeSpec> seq;
    int classical = static_cast<int>(rng() % 3);
    int quantum = static_cast<int>(rng() % 3);
    for (int i = 0; i < classical; i++) {
        seq.push_back(CodeSpec::repetition(2 + static_cast<int>(rng() % 4), static_cast<Basis>(rng() % 3)));
    }
    for (int i = 0; i < quantum; i++) {
        int choice = static_cast<int>(rng() % 3);
        if (choice == 0) {
            seq.push_back(CodeSpec::quantum_parity(4 + 2 * static_cast<int>(rng() % 6)));
        } else if (choice == 1) {
            seq.push_back(CodeSpec::quantum_hamming(3 + static_cast<int>(rng() % 2)));
        } else {
            seq.push_back(CodeSpec::catalog(17, 9, 4));
        }
    }
    return seq;
}

}  // namespace

TEST(analytic, qed_error_bound_examples) {
    ASSERT_EQ(qed_error_bound(4, 2, 2, 0), 0);
    ASSERT_NEAR(qed_error_bound(4, 2, 2, 0.01), 6.163152811763189e-4, 1e-16);
    ASSERT_LE(qed_error_bound(4, 2, 2, 0.01), std::pow(4 * 0.01 / 0.99, 2));
    ASSERT_LE(qed_error_bound(4, 2, 2, 0.9), 1);
    ASSERT_EQ(qed_error_bound(4, 2, 2, 1), 1);
    ASSERT_THROW(qed_error_bound(4, 2, 2, 1.5), std::invalid_argument);
    ASSERT_THROW(qed_error_bound(4, 2, 5, 0.1), std::invalid_argument);
}

TEST(analytic, qed_error_bound_matches_complement_form) {
    // The bound is written as [1 - P(fewer than d errors)] / (1-p)^n; the
    // implementation sums the upper tail instead.
    for (int n : {4, 8, 17, 30}) {
        for (int d : {2, 3, 4}) {
            for (double p : {0.05, 0.1, 0.2}) {
                double head = 0;
                for (int j = 0; j < d; j++) {
                    head += std::tgamma(n + 1.0) / std::tgamma(j + 1.0) / std::tgamma(n - j + 1.0) *
                            std::pow(p, j) * std::pow(1 - p, n - j);
                }
                double expected = std::min(1.0, (1 - head) / std::pow(1 - p, n));
                ASSERT_NEAR(qed_error_bound(n, n - 2, d, p), expected, 1e-12 * std::max(1.0, expected));
            }
        }
    }
}

TEST(analytic, qed_accept_lower_examples) {
    ASSERT_EQ(qed_accept_lower(4, 0), 1);
    ASSERT_NEAR(qed_accept_lower(4, 0.0125), 0.9509297119140625, 1e-15);
    ASSERT_EQ(qed_accept_lower(4, 1), 0);
    ASSERT_DOUBLE_EQ(qed_accept_lower(16, 1.0 / 32), std::pow(31.0 / 32, 16));
}

TEST(analytic, evaluate_empty_sequence) {
    auto m = evaluate_sequence({}, config(0.01));
    ASSERT_EQ(m.overhead, 1);
    ASSERT_EQ(m.M, 1);
    ASSERT_DOUBLE_EQ(m.p_out, 0.01);
    auto m2 = evaluate_sequence({}, config(0.01, 0.2));
    ASSERT_DOUBLE_EQ(m2.overhead, 1 / 0.8);
}

TEST(analytic, evaluate_small_buffer_sequence) {
    auto m = evaluate_sequence(small_buffer_sequence(), config(0.01));
    ASSERT_EQ(m.M, 8);
    ASSERT_NEAR(m.overhead, 25, 25 * 0.05);
    ASSERT_EQ(m.K, 2);
    ASSERT_EQ(m.levels.size(), 4u);
    ASSERT_EQ(m.levels[0].M, 3);
    ASSERT_EQ(m.levels[1].M, 4);
    ASSERT_EQ(m.levels[2].M, 5);
}

TEST(analytic, evaluate_quadratic_sequence) {
    auto m = evaluate_sequence(quadratic_parity_sequence(2), config(1.0 / 2000));
    ASSERT_LE(m.overhead, 3);
    ASSERT_EQ(m.K, 2 * 14);
    ASSERT_EQ(m.M, 34);
}

TEST(analytic, ordering_rule) {
    ASSERT_THROW(evaluate_sequence(parse_sequence("q4.2.2,r2X"), config(0.01)), OrderingError);
    ASSERT_NO_THROW(evaluate_sequence(parse_sequence("r2X,q4.2.2,q16.14.2"), config(0.01)));
}

TEST(analytic, classical_levels_use_the_exact_step) {
    auto cfg = config(0.05);
    auto m = evaluate_sequence(parse_sequence("r2Z,r3X"), cfg);
    auto s1 = repetition_step(cfg.p_in, 2, Basis::Z);
    auto s2 = repetition_step(s1.out, 3, Basis::X);
    ASSERT_EQ(m.levels[0].p_fail, 1 - s1.accept);
    ASSERT_EQ(m.levels[1].p, total_error(s2.out));
    ASSERT_DOUBLE_EQ(m.overhead, 2 / s1.accept * 3 / s2.accept);
}

TEST(analytic, memory_footprint_examples) {
    ASSERT_EQ(memory_footprint({CodeSpec::quantum_parity(4)}), 4);
    ASSERT_EQ(memory_footprint(small_buffer_sequence()), 8);
    ASSERT_EQ(memory_footprint(quadratic_parity_sequence(2)), 34);
}

TEST(analytic, theorem_bounds_examples) {
    ASSERT_NEAR(theorem_bounds(1, 1.0 / 2000).p_bound, 0.002176, 1e-15);
    ASSERT_DOUBLE_EQ(theorem_bounds(0, 1.0 / 3000).p_bound, 1.0 / 3000);
    ASSERT_NEAR(theorem_bounds(3, 1.0 / 2000).p_bound, 8.811955904095191e-07, 1e-20);
    ASSERT_EQ(theorem_bounds(2, 1e-4).overhead_bound, 3);
    ASSERT_EQ(theorem_bounds(2, 1e-4).memory_bound, 4 + 16 * 2);
    ASSERT_GE(theorem_bounds(2, 1e-4).memory_bound, memory_footprint(quadratic_parity_sequence(2)));
    ASSERT_THROW(theorem_bounds(1, 0.001), std::invalid_argument);
}

TEST(analytic, attempt_stats_examples) {
    ASSERT_EQ(attempt_stats(0.5, 0.1).mean, 2);
    ASSERT_NEAR(attempt_stats(0.5, std::ldexp(1.0, -10)).tail_quantile, 10, 1e-12);
    auto z = attempt_stats(0, 0.1);
    ASSERT_EQ(z.mean, 1);
    ASSERT_EQ(z.tail_quantile, 1);
    ASSERT_THROW(attempt_stats(1, 0.1), std::invalid_argument);
    ASSERT_THROW(attempt_stats(0.5, 0), std::invalid_argument);
}

TEST(analytic, metrics_invariants_on_random_sequences) {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 500; t++) {
        auto seq = random_sequence(rng);
        double p = 1e-4 + 0.05 * (rng() % 1000) / 1000.0;
        auto m = evaluate_sequence(seq, config(p, 0.1));
        double ratio = 1;
        int64_t K = 1;
        int64_t prev_M = 1;
        for (size_t i = 0; i < seq.size(); i++) {
            ratio *= static_cast<double>(seq[i].n) / seq[i].k;
            K *= seq[i].k;
            ASSERT_EQ(m.levels[i].K, K);
            ASSERT_GT(m.levels[i].M, prev_M);
            prev_M = m.levels[i].M;
            ASSERT_GE(m.levels[i].p, 0);
            ASSERT_LE(m.levels[i].p, 1);
        }
        ASSERT_GE(m.overhead, ratio);
        ASSERT_EQ(m.M, memory_footprint(seq));
    }
}

TEST(analytic, output_error_is_monotone_in_input_error) {
    std::mt19937_64 rng(19);
    for (int t = 0; t < 300; t++) {
        auto seq = random_sequence(rng);
        double prev = -1;
        for (double p = 0; p <= 0.2; p += 0.005) {
            double out = evaluate_sequence(seq, config(p)).p_out;
            ASSERT_GE(out, prev * (1 - 1e-12)) << format_sequence(seq) << " p=" << p;
            prev = out;
        }
    }
}

TEST(analytic, misc_inequalities_on_grids) {
    for (int n = 1; n <= 60; n++) {
        for (int i = 1; i < 200; i++) {
            double x = i / 200.0;
            ASSERT_LE(std::pow(1 - x, -n), std::exp(n * x / (1 - x)) * (1 + 1e-12));
            if (n >= 4 && x < 1.0 / n) {
                ASSERT_LE(std::pow(1 - x, -n), 3 * n * x + 1);
            }
        }
    }
    for (int i = 0; i <= 1000; i++) {
        double x = i / 1000.0;
        ASSERT_LE(std::expm1(x) - x, (std::exp(1.0) - 2) * x * x * (1 + 1e-12) + 1e-300);
    }
}
