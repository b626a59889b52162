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

#include "qedistill/channels.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "qedistill/codes.hpp"

using namespace qed;

namespace {

PauliDist random_dist(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0, 1);
    double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    double s = a + b + c + d;
    return PauliDist::make(a / s, b / s, c / s, d / s);
}

double prob_of(const PauliDist &d, char p) {
    switch (p) {
        case 'X':
            return d.x;
        case 'Y':
            return d.y;
        case 'Z':
            return d.z;
    }
    return d.i;
}

// Joint enumeration over all 4^n errors using the stabilizer machinery only.
RepetitionStep enumerate_step(const PauliDist &d, int n, Basis basis) {
    auto code = repetition_code(n, basis);
    double accept = 0;
    double out[4] = {0, 0, 0, 0};  // I, X, Y, Z
    uint64_t total = uint64_t{1} << (2 * n);
    for (uint64_t idx = 0; idx < total; idx++) {
        PauliOp e(n);
        double pr = 1;
        uint64_t v = idx;
        for (int q = 0; q < n; q++) {
            char c = "IXYZ"[v & 3];
            v >>= 2;
            e.set(q, c);
            pr *= prob_of(d, c);
        }
        bool detected = false;
        for (bool b : syndrome(code, e)) {
            detected |= b;
        }
        if (detected) {
            continue;
        }
        accept += pr;
        auto l = logical_effect(code, e);
        // Logical frame of the code, mapped back to the physical letter of the output pair.
        char logical = l.at(0);
        PauliOp phys(1);
        phys.set(0, logical);
        char letter = relabel(phys, basis).at(0);
        out[std::string("IXYZ").find(letter)] += pr;
    }
    RepetitionStep s;
    s.accept = accept;
    s.out = PauliDist::make(out[0] / accept, out[1] / accept, out[2] / accept, out[3] / accept);
    return s;
}

void expect_dist_near(const PauliDist &a, const PauliDist &b, double tol) {
    EXPECT_NEAR(a.i, b.i, tol);
    EXPECT_NEAR(a.x, b.x, tol);
    EXPECT_NEAR(a.y, b.y, tol);
    EXPECT_NEAR(a.z, b.z, tol);
}

}  // namespace

TEST(channels, depolarizing_examples) {
    ASSERT_EQ(depolarizing(0), (PauliDist{1, 0, 0, 0}));
    auto d = depolarizing(0.0125);
    ASSERT_DOUBLE_EQ(d.i, 0.9875);
    ASSERT_DOUBLE_EQ(d.x, 1.0 / 240);
    ASSERT_DOUBLE_EQ(d.y, 1.0 / 240);
    ASSERT_DOUBLE_EQ(d.z, 1.0 / 240);
    auto m = depolarizing(0.75);
    ASSERT_DOUBLE_EQ(m.i, 0.25);
    ASSERT_DOUBLE_EQ(m.z, 0.25);
    ASSERT_THROW(depolarizing(0.8), std::invalid_argument);
    ASSERT_THROW(depolarizing(-0.1), std::invalid_argument);
}

TEST(channels, total_error_examples) {
    ASSERT_EQ(total_error({1, 0, 0, 0}), 0);
    ASSERT_DOUBLE_EQ(total_error(depolarizing(0.03)), 0.03);
    ASSERT_NEAR(total_error(PauliDist::make(0.9, 0.05, 0.03, 0.02)), 0.10, 1e-15);
}

TEST(channels, make_validates_and_renormalizes) {
    auto d = PauliDist::make(0.9 + 5e-9, 0.05, 0.03, 0.02);
    ASSERT_NEAR(d.i + d.x + d.y + d.z, 1, 1e-15);
    ASSERT_THROW(PauliDist::make(0.9, 0.05, 0.03, 0.03), std::invalid_argument);
    ASSERT_THROW(PauliDist::make(1.1, -0.1, 0, 0), std::invalid_argument);
}

TEST(channels, repetition_step_examples) {
    for (Basis b : {Basis::X, Basis::Y, Basis::Z}) {
        for (int n = 2; n <= 6; n++) {
            auto s = repetition_step({1, 0, 0, 0}, n, b);
            ASSERT_EQ(s.accept, 1);
            ASSERT_EQ(s.out, (PauliDist{1, 0, 0, 0}));
        }
    }
    auto s = repetition_step(depolarizing(0.1), 2, Basis::Z);
    ASSERT_NEAR(s.accept, 0.8755555555555555, 1e-12);
    expect_dist_near(s.out, {0.9263959390862944, 0.0025380710659898475, 0.0025380710659898475, 0.06852791878172589},
                     1e-12);

    auto t = repetition_step({0.9, 0.1, 0, 0}, 2, Basis::Z);
    ASSERT_NEAR(t.accept, 0.82, 1e-15);
    expect_dist_near(t.out, {0.81 / 0.82, 0.01 / 0.82, 0, 0}, 1e-15);
}

TEST(channels, two_pair_step_matches_sixteen_event_table) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 500; t++) {
        auto d = random_dist(rng);
        auto s = repetition_step(d, 2, Basis::Z);
        double A = (d.i + d.z) * (d.i + d.z) + (d.i + d.z - 1) * (d.i + d.z - 1);
        ASSERT_NEAR(s.accept, A, 1e-14);
        ASSERT_NEAR(s.out.z, 2 * d.i * d.z / A, 1e-12);
        ASSERT_NEAR(s.out.x, (d.x * d.x + d.y * d.y) / A, 1e-12);
        ASSERT_NEAR(s.out.y, 2 * d.x * d.y / A, 1e-12);
    }
}

TEST(channels, repetition_step_matches_enumeration) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; t++) {
        auto d = random_dist(rng);
        for (int n = 2; n <= 4; n++) {
            for (Basis b : {Basis::X, Basis::Y, Basis::Z}) {
                auto fast = repetition_step(d, n, b);
                auto slow = enumerate_step(d, n, b);
                ASSERT_NEAR(fast.accept, slow.accept, 1e-13);
                expect_dist_near(fast.out, slow.out, 1e-12);
            }
        }
    }
}

TEST(channels, repetition_step_output_is_a_distribution) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 2000; t++) {
        auto d = random_dist(rng);
        int n = 2 + static_cast<int>(rng() % 11);
        Basis b = static_cast<Basis>(rng() % 3);
        auto s = repetition_step(d, n, b);
        ASSERT_GT(s.accept, 0);
        ASSERT_LE(s.accept, 1 + 1e-15);
        ASSERT_NEAR(s.out.i + s.out.x + s.out.y + s.out.z, 1, 1e-12);
    }
}

TEST(channels, basis_covariance) {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 500; t++) {
        auto d = random_dist(rng);
        int n = 2 + static_cast<int>(rng() % 8);
        for (Basis b : {Basis::X, Basis::Y}) {
            auto direct = repetition_step(d, n, b);
            auto via_z = repetition_step(relabel(d, b), n, Basis::Z);
            ASSERT_DOUBLE_EQ(direct.accept, via_z.accept);
            ASSERT_EQ(direct.out, relabel(via_z.out, b));
        }
    }
}

TEST(channels, small_errors_keep_relative_precision) {
    // Deep in a recurrence the Z weight is tiny next to p_I.
    PauliDist d = PauliDist::make(1 - 3e-14, 1e-14, 1e-14, 1e-14);
    auto s = repetition_step(d, 2, Basis::Z);
    ASSERT_NEAR(s.out.z / (2 * d.i * d.z / s.accept), 1, 1e-12);
}

TEST(channels, z_step_reduces_error_when_z_is_smallest) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0, 1);
    int checked = 0;
    while (checked < 2000) {
        double total = 0.499 * u(rng);
        double a = u(rng), b = u(rng), c = u(rng);
        double s = a + b + c;
        double v[3] = {total * a / s, total * b / s, total * c / s};
        std::sort(v, v + 3);
        double z = v[0], x = v[1], y = v[2];
        auto d = PauliDist::make(1 - x - y - z, x, y, z);
        if (total_error(d) == 0) {
            continue;
        }
        checked++;
        auto step = repetition_step(d, 2, Basis::Z);
        ASSERT_LT(total_error(step.out), total_error(d));
        ASSERT_GT(bdsw_error_gap(d), 0);
    }
}

TEST(channels, bdsw_error_gap_examples) {
    ASSERT_GT(bdsw_error_gap(depolarizing(0.3)), 0);
    ASSERT_EQ(bdsw_error_gap(depolarizing(0)), 0);
    PauliDist d = PauliDist::make(0.6, 0.15, 0.15, 0.10);
    ASSERT_DOUBLE_EQ(bdsw_error_gap(d), repetition_step(d, 2, Basis::Z).out.i - d.i);
    ASSERT_THROW(bdsw_error_gap(PauliDist::make(0.6, 0.1, 0.15, 0.15)), std::domain_error);
    ASSERT_THROW(bdsw_error_gap(depolarizing(0.6)), std::domain_error);
}
