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

#ifndef QEDISTILL_MONTECARLO_HPP
#define QEDISTILL_MONTECARLO_HPP

#include <cstdint>
#include <vector>

#include "qedistill/channels.hpp"
#include "qedistill/codes.hpp"

namespace qed {

class SplitMix64 {
   public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}
    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    // Uniform in [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

   private:
    uint64_t state_;
};

// Independent stream for trial `index` of a run seeded with `master`.
SplitMix64 trial_stream(uint64_t master, uint64_t index);

// Pauli as two bits: 1 = X part, 2 = Z part (so 3 is Y).
uint8_t sample_pauli(const PauliDist &d, SplitMix64 &rng);

struct TrialConfig {
    uint64_t seed = 1;
    uint64_t trials = 100000;
    uint64_t attempt_cap = 1000000;
    int threads = 1;
};

// Binomial proportion with a 95% Wilson score interval.
struct Proportion {
    uint64_t hits = 0;
    uint64_t total = 0;
    double value = 0;
    double lo = 0;
    double hi = 1;
    double radius = 0.5;
};
Proportion wilson(uint64_t hits, uint64_t total);

struct SimEstimate {
    uint64_t seed = 0;
    uint64_t trials = 0;
    uint64_t completed = 0;  // trials that produced an output block
    uint64_t aborted = 0;    // trials stopped by the attempt cap
    Proportion p_fail;       // per final-level attempt
    Proportion p_out;        // block error among accepted outputs
    double consumed_per_output = 0;
    double consumed_stderr = 0;
    std::vector<uint64_t> attempt_histogram;  // [a-1] = outputs that took a final-level attempts
};

// One detection attempt per trial.
SimEstimate simulate_level(const StabilizerCode &code, const PauliDist &input, const TrialConfig &cfg);

// One output block per trial, with every level retried until it succeeds.
SimEstimate simulate_sequence(const std::vector<CodeSpec> &seq, const PauliDist &input, const TrialConfig &cfg);

struct ParityStats {
    double accept = 1;
    double block_error = 0;  // joint: accepted and not in the stabilizer group
};
ParityStats exact_parity_stats(int n, const PauliDist &d);

struct AttemptHistogram {
    std::vector<uint64_t> counts;  // [a-1] = trials that needed a attempts
    uint64_t trials = 0;
    uint64_t capped = 0;
    double mean = 0;
    double stderr_mean = 0;
    // Fraction of trials needing more than `threshold` attempts.
    double tail_fraction(double threshold) const;
};
AttemptHistogram empirical_attempts(double p_fail, const TrialConfig &cfg);

}  // namespace qed

#endif
