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

#include "qedistill/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace qed {

std::vector<CodeSpec> canonical_order(const std::vector<CodeSpec> &codes) {
    std::vector<CodeSpec> sorted = codes;
    auto key = [](const CodeSpec &c) {
        return std::make_tuple(!c.is_classical(), c.n, c.is_classical() ? 0 : -c.k, -c.d, static_cast<int>(c.basis),
                               static_cast<int>(c.kind));
    };
    std::stable_sort(sorted.begin(), sorted.end(), [&](const CodeSpec &a, const CodeSpec &b) { return key(a) < key(b); });
    std::vector<CodeSpec> out;
    std::set<std::tuple<bool, int, int, int, int>> seen;
    for (const auto &c : sorted) {
        int b = c.is_classical() ? static_cast<int>(c.basis) : -1;
        if (seen.insert({c.is_classical(), c.n, c.k, c.d, b}).second) {
            out.push_back(c);
        }
    }
    return out;
}

bool better_candidate(const Candidate &a, const Candidate &b) {
    if (a.metrics.overhead != b.metrics.overhead) {
        return a.metrics.overhead < b.metrics.overhead;
    }
    if (a.metrics.M != b.metrics.M) {
        return a.metrics.M < b.metrics.M;
    }
    if (a.seq.size() != b.seq.size()) {
        return a.seq.size() < b.seq.size();
    }
    return a.order < b.order;
}

namespace {

struct Subtree {
    const std::vector<CodeSpec> &codes;
    const SearchConstraints &c;
    SearchResult result;
    std::vector<int> path;

    void record() {
        Candidate cand;
        cand.order = path;
        for (int i : path) {
            cand.seq.push_back(codes[i]);
        }
        cand.metrics = evaluate_sequence(cand.seq, c.cfg);
        if (!result.best || better_candidate(cand, *result.best)) {
            result.best = cand;
        }
        result.viable.push_back(std::move(cand));
    }

    // Expands child `i` of a node in state `s`.
    void visit(const LevelState &s, int i) {
        const CodeSpec &code = codes[i];
        if (code.is_classical() && !s.classical) {
            return;
        }
        result.nodes_visited++;
        int64_t M = std::max<int64_t>(code.n * s.K, (code.n - 1) * s.K + s.M);
        if (M > c.M_max) {
            result.nodes_pruned++;
            return;
        }
        LevelState next = s.advance(code);
        if (error_increased(s.p, next.p)) {
            result.nodes_pruned++;
            return;
        }
        path.push_back(i);
        if (next.p / static_cast<double>(next.K) < c.cfg.p_target) {
            record();
        } else if (static_cast<int>(path.size()) < c.l_max) {
            // Every extension multiplies the overhead by more than 1.
            if (result.best && next.overhead >= result.best->metrics.overhead) {
                result.nodes_pruned++;
            } else {
                for (int j = 0; j < static_cast<int>(codes.size()); j++) {
                    visit(next, j);
                }
            }
        }
        path.pop_back();
    }
};

}  // namespace

SearchResult optimize(const CodeCatalog &catalog, const SearchConstraints &c) {
    if (catalog.entries.empty()) {
        throw std::invalid_argument("catalog is empty");
    }
    if (c.M_max < 1) {
        throw std::invalid_argument("M_max must be at least 1");
    }
    if (c.l_max < 1) {
        throw std::invalid_argument("l_max must be at least 1");
    }
    if (!(c.cfg.p_target > 0)) {
        throw std::invalid_argument("p_target must be positive");
    }
    const std::vector<CodeSpec> codes = canonical_order(catalog.entries);
    const LevelState root = LevelState::start(c.cfg);

    SearchResult merged;
    // Each first-level code gets its own subtree and incumbent, so the counters
    // and the result do not depend on how subtrees are spread over threads.
    std::vector<SearchResult> parts(codes.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (size_t i; (i = next.fetch_add(1)) < codes.size();) {
            Subtree t{codes, c, {}, {}};
            t.visit(root, static_cast<int>(i));
            parts[i] = std::move(t.result);
        }
    };
    int threads = std::clamp<int>(c.threads, 1, static_cast<int>(codes.size()));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; t++) {
            pool.emplace_back(worker);
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    for (auto &p : parts) {
        merged.nodes_visited += p.nodes_visited;
        merged.nodes_pruned += p.nodes_pruned;
        if (p.best && (!merged.best || better_candidate(*p.best, *merged.best))) {
            merged.best = p.best;
        }
        std::move(p.viable.begin(), p.viable.end(), std::back_inserter(merged.viable));
    }
    return merged;
}

std::vector<std::pair<int64_t, SearchResult>> pareto_sweep(
    const CodeCatalog &catalog, const SearchConstraints &base, const std::vector<int64_t> &buffers) {
    if (buffers.empty()) {
        throw std::invalid_argument("buffer list is empty");
    }
    if (!std::is_sorted(buffers.begin(), buffers.end())) {
        throw std::invalid_argument("buffer list must be ascending");
    }
    std::vector<std::pair<int64_t, SearchResult>> out;
    for (int64_t m : buffers) {
        SearchConstraints c = base;
        c.M_max = m;
        out.emplace_back(m, optimize(catalog, c));
    }
    return out;
}

}  // namespace qed
