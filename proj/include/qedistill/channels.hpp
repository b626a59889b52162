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

#ifndef QEDISTILL_CHANNELS_HPP
#define QEDISTILL_CHANNELS_HPP

#include <array>

#include "qedistill/codes.hpp"

namespace qed {

// Pauli error distribution on one half of a Bell pair.
struct PauliDist {
    double i = 1;
    double x = 0;
    double y = 0;
    double z = 0;

    // Validates and renormalizes. Components must be in [0,1] and sum to 1
    // within 1e-6; anything off by more than 1e-12 is rescaled.
    static PauliDist make(double i, double x, double y, double z);

    std::array<double, 4> as_array() const { return {i, x, y, z}; }
    bool operator==(const PauliDist &) const = default;
};

PauliDist depolarizing(double p);
double total_error(const PauliDist &d);

// Swaps the Z component with the component named by `b`. Self-inverse.
PauliDist relabel(const PauliDist &d, Basis b);

struct RepetitionStep {
    double accept = 1;
    PauliDist out;
};

// Exact post-selected output of n-to-1 repetition-code distillation on i.i.d. pairs.
RepetitionStep repetition_step(const PauliDist &d, int n, Basis basis);

// p_I' - p_I after one two-pair Z-check step.
double bdsw_error_gap(const PauliDist &d);

}  // namespace qed

#endif
