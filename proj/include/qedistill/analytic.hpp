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

#ifndef QEDISTILL_ANALYTIC_HPP
#define QEDISTILL_ANALYTIC_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qedistill/channels.hpp"
#include "qedistill/codes.hpp"

namespace qed {

struct OrderingError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Upper bound on the block error of an [[n,k,d]] detection step, conditioned on acceptance.
double qed_error_bound(int n, int k, int d, double p);
// Lower bound on the acceptance probability: (1-p)^n.
double qed_accept_lower(int n, double p);

struct EvalConfig {
    PauliDist p_in;          // error of pairs entering the first level
    double p0_reject = 0;    // rejection rate of the pair injection, charged once
    double p_target = 1e-12;
};

struct LevelMetrics {
    CodeSpec code;
    double p = 0;           // block error after this level
    double p_fail = 0;
    int64_t K = 1;          // logical pairs per block after this level
    int64_t M = 1;          // memory needed up to and including this level
    double overhead = 1;    // cumulative
    PauliDist dist;         // exact output distribution, valid while all levels so far are classical
};

struct SequenceMetrics {
    std::vector<LevelMetrics> levels;
    double p_in = 0;  // total input error
    double p0_reject = 0;
    double p_out = 0;
    double p_per_qubit = 0;
    int64_t K = 1;
    int64_t M = 1;
    double overhead = 1;
    bool meets_target = false;
};

// Running state of the level recursion, shared by the evaluator and the search.
struct LevelState {
    PauliDist dist;
    bool classical = true;  // no quantum level seen yet
    double p = 0;
    int64_t K = 1;
    int64_t M = 1;
    double overhead = 1;

    static LevelState start(const EvalConfig &cfg);
    // Throws OrderingError for a classical code after a quantum one.
    LevelState advance(const CodeSpec &code, double *p_fail = nullptr) const;
};

SequenceMetrics evaluate_sequence(const std::vector<CodeSpec> &seq, const EvalConfig &cfg);
int64_t memory_footprint(const std::vector<CodeSpec> &seq);

// Parity codes of length (2i)^2 at level i.
std::vector<CodeSpec> quadratic_parity_sequence(int levels);

struct TheoremBounds {
    double p_bound = 0;
    double overhead_bound = 3;
    int64_t memory_bound = 0;
};
TheoremBounds theorem_bounds(int level, double p);

struct AttemptStats {
    double mean = 1;
    double tail_quantile = 1;
};
AttemptStats attempt_stats(double p_fail, double epsilon);

}  // namespace qed

#endif
