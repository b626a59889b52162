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

#include <cmath>
#include <stdexcept>
#include <string>

namespace qed {

PauliDist PauliDist::make(double i, double x, double y, double z) {
    for (double v : {i, x, y, z}) {
        if (!(v >= 0 && v <= 1)) {
            throw std::invalid_argument("Pauli probability out of [0,1]: " + std::to_string(v));
        }
    }
    double s = i + x + y + z;
    if (std::abs(s - 1) > 1e-6) {
        throw std::invalid_argument("Pauli probabilities sum to " + std::to_string(s));
    }
    if (std::abs(s - 1) > 1e-12) {
        i /= s;
        x /= s;
        y /= s;
        z /= s;
    }
    PauliDist d;
    d.i = i;
    d.x = x;
    d.y = y;
    d.z = z;
    return d;
}

PauliDist depolarizing(double p) {
    if (!(p >= 0 && p <= 0.75)) {
        throw std::invalid_argument("depolarizing p must be in [0, 3/4], got " + std::to_string(p));
    }
    return PauliDist{1 - p, p / 3, p / 3, p / 3};
}

double total_error(const PauliDist &d) {
    return d.x + d.y + d.z;
}

PauliDist relabel(const PauliDist &d, Basis b) {
    PauliDist out = d;
    if (b == Basis::X) {
        std::swap(out.x, out.z);
    } else if (b == Basis::Y) {
        std::swap(out.y, out.z);
    }
    return out;
}

RepetitionStep repetition_step(const PauliDist &d, int n, Basis basis) {
    if (n < 2) {
        throw std::invalid_argument("repetition step needs n >= 2");
    }
    PauliDist r = relabel(d, basis);
    // Z-basis checks accept iff every pair has no X part or every pair has one.
    // Within each branch the logical Z factor is the parity of Z parts. Summing
    // the even and odd binomial terms directly avoids the cancellation in
    // ((a+b)^n - (a-b)^n)/2 when b is tiny.
    double pi = 0, pz = 0, px = 0, py = 0;
    double binom = 1;
    for (int j = 0; j <= n; j++) {
        double no_x = binom * std::pow(r.i, n - j) * std::pow(r.z, j);
        double all_x = binom * std::pow(r.x, n - j) * std::pow(r.y, j);
        if (j % 2) {
            pz += no_x;
            py += all_x;
        } else {
            pi += no_x;
            px += all_x;
        }
        binom = binom * (n - j) / (j + 1);
    }
    double accept = pi + px + py + pz;
    RepetitionStep s;
    s.accept = accept;
    s.out = relabel(PauliDist::make(pi / accept, px / accept, py / accept, pz / accept), basis);
    return s;
}

double bdsw_error_gap(const PauliDist &d) {
    if (d.z > d.x || d.z > d.y || total_error(d) >= 0.5) {
        throw std::domain_error("error gap needs p_z <= p_x, p_y and total error < 1/2");
    }
    return repetition_step(d, 2, Basis::Z).out.i - d.i;
}

}  // namespace qed
