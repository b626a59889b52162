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

#ifndef QEDISTILL_ESTIMATORS_HPP
#define QEDISTILL_ESTIMATORS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qedistill/codes.hpp"
#include "qedistill/optimizer.hpp"

namespace qed {

struct InjectionParams {
    double p1 = 0.001;
    double p2 = 0.001;
    double p_bell = 0.01;
    double p_reject = 0.08;
};

double injection_error(const InjectionParams &p);
double bell_injection_reject(double p_reject);

struct PatchSize {
    int d = 0;
    int64_t qubits = 0;
};

// Smallest distance whose fitted logical error is below p_target.
PatchSize surface_code_distance(double p_gate, double p_target);

struct SurgeryParams {
    double p_gate = 0.001;
    double p_bell = 0.01;
    double p_target = 1e-12;
};

struct SurgeryResult {
    int d = 0;
    int64_t bell_pairs = 0;
    bool fit_unreliable = false;  // Bell error above 1%, where the fit's prefactor is not validated
};

SurgeryResult lattice_surgery_overhead(const SurgeryParams &s);

struct Bottleneck {
    bool limited_by_network = false;
    double ratio = 0;
};

Bottleneck bottleneck(double beta, double t_e, double alpha_overhead, double t_intra);

struct BdswResult {
    double overhead = 0;
    int levels = 0;
    Basis first_basis = Basis::Z;
    double p_per_qubit = 0;
    bool converged = false;
};

// Two-pair recurrence with alternating checks, stopped at the first level below
// p_target (at most `max_levels`).
BdswResult bdsw_overhead(const PauliDist &input, double p0_reject, double p_target, Basis first = Basis::Z,
                         int max_levels = 60);

struct CompareConfig {
    std::vector<double> network_errors = {0.001, 0.01, 0.05, 0.10, 0.15};
    std::vector<int64_t> buffers = {10, 30, 50, 100};
    double p_gate = 0.001;
    double p_reject = 0.08;
    double p_target = 1e-12;
    int l_max = 7;
    // The basis-choice recurrence only ever needs a handful of slots, but the
    // high-error columns need more levels than the quantum searches.
    int64_t y_basis_buffer = 64;
    int y_basis_l_max = 14;
    int threads = 1;
};

struct OptimizedCell {
    std::optional<double> overhead;  // none when infeasible
    std::string sequence;
    int64_t memory = 0;
};

struct CompareRow {
    double network_error = 0;
    double distill_input = 0;
    double p0_reject = 0;
    BdswResult bdsw;
    OptimizedCell bdsw_y;
    std::vector<OptimizedCell> constant;  // one per buffer
    SurgeryResult surgery;
    PatchSize patch;
};

std::vector<CompareRow> comparison_table(const CodeCatalog &catalog, const CompareConfig &cfg);

}  // namespace qed

#endif
