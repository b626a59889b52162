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

#ifndef QEDISTILL_OPTIMIZER_HPP
#define QEDISTILL_OPTIMIZER_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qedistill/analytic.hpp"
#include "qedistill/codes.hpp"

namespace qed {

struct SearchConstraints {
    int64_t M_max = 30;
    int l_max = 7;
    EvalConfig cfg;  // cfg.p_target is the per-qubit target
    int threads = 1;
};

struct Candidate {
    std::vector<CodeSpec> seq;
    std::vector<int> order;  // positions in the canonical code list, for tie-breaking
    SequenceMetrics metrics;
};

struct SearchResult {
    std::optional<Candidate> best;
    std::vector<Candidate> viable;
    uint64_t nodes_visited = 0;
    uint64_t nodes_pruned = 0;
};

// Relative slack when checking that a level did not raise the error. Some
// levels leave it mathematically unchanged (an odd repetition code on a
// depolarized input), and rounding must not decide whether they survive.
constexpr double kErrorTieTolerance = 1e-12;

inline bool error_increased(double before, double after) {
    return after > before * (1 + kErrorTieTolerance);
}

// Classical codes first by (n, basis), then quantum codes by (n, -k, -d).
// Repeated parameter sets are dropped, keeping the first in that order.
std::vector<CodeSpec> canonical_order(const std::vector<CodeSpec> &codes);

// Strict ordering: lower overhead, then smaller M, then shorter, then smaller order tuple.
bool better_candidate(const Candidate &a, const Candidate &b);

SearchResult optimize(const CodeCatalog &catalog, const SearchConstraints &c);

std::vector<std::pair<int64_t, SearchResult>> pareto_sweep(
    const CodeCatalog &catalog, const SearchConstraints &base, const std::vector<int64_t> &buffers);

}  // namespace qed

#endif
