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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace qed {

SplitMix64 trial_stream(uint64_t master, uint64_t index) {
    SplitMix64 mix(master ^ 0x6A09E667F3BCC909ull);
    uint64_t a = mix.next();
    SplitMix64 mix2(a + index * 0xD1B54A32D192ED03ull);
    return SplitMix64(mix2.next());
}

uint8_t sample_pauli(const PauliDist &d, SplitMix64 &rng) {
    double u = rng.uniform();
    if (u < d.i) {
        return 0;
    }
    u -= d.i;
    if (u < d.x) {
        return 1;
    }
    u -= d.x;
    if (u < d.z) {
        return 2;
    }
    return 3;
}

Proportion wilson(uint64_t hits, uint64_t total) {
    Proportion p;
    p.hits = hits;
    p.total = total;
    if (total == 0) {
        return p;
    }
    const double z = 1.959963984540054;
    double n = static_cast<double>(total);
    double ph = hits / n;
    double denom = 1 + z * z / n;
    double center = (ph + z * z / (2 * n)) / denom;
    double half = z / denom * std::sqrt(ph * (1 - ph) / n + z * z / (4 * n * n));
    p.value = ph;
    p.lo = hits == 0 ? 0 : std::max(0.0, center - half);
    p.hi = hits == total ? 1 : std::min(1.0, center + half);
    p.radius = half;
    return p;
}

namespace {

constexpr uint64_t kChunk = 4096;

// Runs fn(begin, end) over fixed-size chunks of [0, trials) and folds the
// per-chunk results in chunk order, so the outcome ignores the thread count.
template <typename Acc, typename Fn>
Acc run_chunks(uint64_t trials, int threads, Fn fn) {
    uint64_t num_chunks = (trials + kChunk - 1) / kChunk;
    std::vector<Acc> parts(num_chunks);
    std::atomic<uint64_t> next{0};
    auto worker = [&]() {
        for (uint64_t c; (c = next.fetch_add(1)) < num_chunks;) {
            parts[c] = fn(c * kChunk, std::min(trials, (c + 1) * kChunk));
        }
    };
    int t = static_cast<int>(std::clamp<uint64_t>(threads < 1 ? 1 : threads, 1, std::max<uint64_t>(num_chunks, 1)));
    if (t == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < t; i++) {
            pool.emplace_back(worker);
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    Acc total;
    for (auto &p : parts) {
        total.merge(p);
    }
    return total;
}

void check_trials(const TrialConfig &cfg) {
    if (cfg.trials < 1) {
        throw std::invalid_argument("trials must be at least 1");
    }
    if (cfg.attempt_cap < 1) {
        throw std::invalid_argument("attempt_cap must be at least 1");
    }
}

struct LevelAcc {
    uint64_t accepted = 0;
    uint64_t logical_errors = 0;
    void merge(const LevelAcc &o) {
        accepted += o.accepted;
        logical_errors += o.logical_errors;
    }
};

}  // namespace

SimEstimate simulate_level(const StabilizerCode &code, const PauliDist &input, const TrialConfig &cfg) {
    check_trials(cfg);
    validate_code(code);
    auto acc = run_chunks<LevelAcc>(cfg.trials, cfg.threads, [&](uint64_t begin, uint64_t end) {
        LevelAcc a;
        PauliOp e(code.n);
        for (uint64_t t = begin; t < end; t++) {
            auto rng = trial_stream(cfg.seed, t);
            for (size_t q = 0; q < code.n; q++) {
                uint8_t s = sample_pauli(input, rng);
                e.set_x(q, s & 1);
                e.set_z(q, s & 2);
            }
            bool detected = false;
            for (const auto &s : code.stabilizers) {
                detected |= s.anticommutes(e);
            }
            if (!detected) {
                a.accepted++;
                a.logical_errors += !logical_effect(code, e).is_identity();
            }
        }
        return a;
    });
    SimEstimate est;
    est.seed = cfg.seed;
    est.trials = cfg.trials;
    est.completed = cfg.trials;
    est.p_fail = wilson(cfg.trials - acc.accepted, cfg.trials);
    est.p_out = wilson(acc.logical_errors, acc.accepted);
    double ratio = static_cast<double>(code.n) / static_cast<double>(code.k);
    if (acc.accepted > 0) {
        double pass = static_cast<double>(acc.accepted) / cfg.trials;
        est.consumed_per_output = ratio / pass;
        // Delta method on n / (k * acceptance).
        est.consumed_stderr = ratio / (pass * pass) * std::sqrt(pass * (1 - pass) / cfg.trials);
    } else {
        est.consumed_per_output = INFINITY;
        est.consumed_stderr = INFINITY;
    }
    return est;
}

ParityStats exact_parity_stats(int n, const PauliDist &d) {
    if (n < 4 || n % 2) {
        throw std::invalid_argument("parity code needs even n >= 4");
    }
    // Characteristic sums of the X-part parity, Z-part parity, and their sum.
    double sx = d.i + d.z - d.x - d.y;
    double sz = d.i + d.x - d.y - d.z;
    double sy = d.i + d.y - d.x - d.z;
    ParityStats s;
    s.accept = (1 + std::pow(sx, n) + std::pow(sz, n) + std::pow(sy, n)) / 4;
    double in_group = std::pow(d.i, n) + std::pow(d.x, n) + std::pow(d.y, n) + std::pow(d.z, n);
    s.block_error = std::max(0.0, s.accept - in_group);
    return s;
}

namespace {

struct SeqAcc {
    uint64_t completed = 0;
    uint64_t aborted = 0;
    uint64_t attempts = 0;
    uint64_t failures = 0;
    uint64_t block_errors = 0;
    double consumed_sum = 0;
    double consumed_sq = 0;
    std::vector<uint64_t> hist;
    void merge(const SeqAcc &o) {
        completed += o.completed;
        aborted += o.aborted;
        attempts += o.attempts;
        failures += o.failures;
        block_errors += o.block_errors;
        consumed_sum += o.consumed_sum;
        consumed_sq += o.consumed_sq;
        if (hist.size() < o.hist.size()) {
            hist.resize(o.hist.size());
        }
        for (size_t i = 0; i < o.hist.size(); i++) {
            hist[i] += o.hist[i];
        }
    }
};

struct SequenceRunner {
    std::vector<StabilizerCode> codes;
    std::vector<size_t> width;  // width[i] = K after i levels
    PauliDist input;
    uint64_t cap;

    struct Trial {
        SplitMix64 rng;
        uint64_t raw = 0;
        uint64_t top_attempts = 0;
        uint64_t top_failures = 0;
    };

    // Produces one successful block of level `level` into `out`. False on abort.
    bool produce(size_t level, Trial &t, std::vector<uint8_t> &out) const {
        if (level == 0) {
            out.assign(1, sample_pauli(input, t.rng));
            t.raw++;
            return true;
        }
        const StabilizerCode &code = codes[level - 1];
        size_t w = width[level - 1];
        bool top = level == codes.size();
        std::vector<std::vector<uint8_t>> rows(code.n);
        PauliOp e(code.n);
        for (uint64_t attempt = 1;; attempt++) {
            if (attempt > cap) {
                return false;
            }
            for (auto &row : rows) {
                if (!produce(level - 1, t, row)) {
                    return false;
                }
            }
            if (top) {
                t.top_attempts++;
            }
            out.assign(w * code.k, 0);
            bool detected = false;
            for (size_t col = 0; col < w && !detected; col++) {
                for (size_t r = 0; r < code.n; r++) {
                    e.set_x(r, rows[r][col] & 1);
                    e.set_z(r, rows[r][col] & 2);
                }
                for (const auto &s : code.stabilizers) {
                    detected |= s.anticommutes(e);
                }
                if (!detected) {
                    PauliOp l = logical_effect(code, e);
                    for (size_t j = 0; j < code.k; j++) {
                        out[col * code.k + j] = l.x(j) | (l.z(j) << 1);
                    }
                }
            }
            if (!detected) {
                return true;
            }
            if (top) {
                t.top_failures++;
            }
        }
    }
};

}  // namespace

SimEstimate simulate_sequence(const std::vector<CodeSpec> &seq, const PauliDist &input, const TrialConfig &cfg) {
    check_trials(cfg);
    SequenceRunner runner;
    runner.input = input;
    runner.cap = cfg.attempt_cap;
    runner.width.push_back(1);
    for (const auto &c : seq) {
        if (!c.is_simulable()) {
            throw std::invalid_argument("code " + c.id() + " is not simulable");
        }
        runner.codes.push_back(build_code(c));
        runner.width.push_back(runner.width.back() * c.k);
    }
    const double K = static_cast<double>(runner.width.back());
    auto acc = run_chunks<SeqAcc>(cfg.trials, cfg.threads, [&](uint64_t begin, uint64_t end) {
        SeqAcc a;
        std::vector<uint8_t> out;
        for (uint64_t i = begin; i < end; i++) {
            SequenceRunner::Trial t{trial_stream(cfg.seed, i)};
            bool ok = runner.produce(runner.codes.size(), t, out);
            a.attempts += t.top_attempts;
            a.failures += t.top_failures;
            if (!ok) {
                a.aborted++;
                continue;
            }
            a.completed++;
            a.block_errors += std::any_of(out.begin(), out.end(), [](uint8_t v) { return v != 0; });
            double c = t.raw / K;
            a.consumed_sum += c;
            a.consumed_sq += c * c;
            // An empty sequence has no attempts; count it as one.
            size_t att = std::max<uint64_t>(t.top_attempts, 1);
            if (a.hist.size() < att) {
                a.hist.resize(att);
            }
            a.hist[att - 1]++;
        }
        return a;
    });
    SimEstimate est;
    est.seed = cfg.seed;
    est.trials = cfg.trials;
    est.completed = acc.completed;
    est.aborted = acc.aborted;
    est.p_fail = wilson(acc.failures, acc.attempts);
    est.p_out = wilson(acc.block_errors, acc.completed);
    est.attempt_histogram = acc.hist;
    if (acc.completed > 0) {
        double n = static_cast<double>(acc.completed);
        double mean = acc.consumed_sum / n;
        double var = std::max(0.0, acc.consumed_sq / n - mean * mean);
        est.consumed_per_output = mean;
        est.consumed_stderr = n > 1 ? std::sqrt(var * n / (n - 1) / n) : 0;
    } else {
        est.consumed_per_output = INFINITY;
        est.consumed_stderr = INFINITY;
    }
    return est;
}

double AttemptHistogram::tail_fraction(double threshold) const {
    uint64_t over = capped;
    for (size_t i = 0; i < counts.size(); i++) {
        if (static_cast<double>(i + 1) > threshold) {
            over += counts[i];
        }
    }
    return trials ? static_cast<double>(over) / trials : 0;
}

namespace {

struct AttemptAcc {
    std::vector<uint64_t> hist;
    uint64_t capped = 0;
    double sum = 0;
    double sq = 0;
    void merge(const AttemptAcc &o) {
        if (hist.size() < o.hist.size()) {
            hist.resize(o.hist.size());
        }
        for (size_t i = 0; i < o.hist.size(); i++) {
            hist[i] += o.hist[i];
        }
        capped += o.capped;
        sum += o.sum;
        sq += o.sq;
    }
};

}  // namespace

AttemptHistogram empirical_attempts(double p_fail, const TrialConfig &cfg) {
    check_trials(cfg);
    if (!(p_fail >= 0 && p_fail < 1)) {
        throw std::invalid_argument("p_fail must be in [0,1)");
    }
    auto acc = run_chunks<AttemptAcc>(cfg.trials, cfg.threads, [&](uint64_t begin, uint64_t end) {
        AttemptAcc a;
        for (uint64_t i = begin; i < end; i++) {
            auto rng = trial_stream(cfg.seed, i);
            uint64_t att = 1;
            while (rng.uniform() < p_fail && att <= cfg.attempt_cap) {
                att++;
            }
            if (att > cfg.attempt_cap) {
                a.capped++;
                continue;
            }
            if (a.hist.size() < att) {
                a.hist.resize(att);
            }
            a.hist[att - 1]++;
            a.sum += att;
            a.sq += static_cast<double>(att) * att;
        }
        return a;
    });
    AttemptHistogram h;
    h.counts = acc.hist;
    h.trials = cfg.trials;
    h.capped = acc.capped;
    double n = static_cast<double>(cfg.trials - acc.capped);
    if (n > 0) {
        h.mean = acc.sum / n;
        double var = std::max(0.0, acc.sq / n - h.mean * h.mean);
        h.stderr_mean = std::sqrt(var / n);
    }
    return h;
}

}  // namespace qed
