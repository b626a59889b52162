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

#ifndef QEDISTILL_PIPELINE_HPP
#define QEDISTILL_PIPELINE_HPP

#include <cstdint>
#include <vector>

#include "qedistill/analytic.hpp"
#include "qedistill/codes.hpp"

namespace qed {

// Controlled-Pauli gate: applies `target_pauli` to `target` when `control` is in
// the -1 eigenstate of `control_pauli`. CNOT is control Z, target X.
struct Gate {
    int control = 0;
    int target = 0;
    char control_pauli = 'Z';
    char target_pauli = 'X';
    bool operator==(const Gate &) const = default;
};

struct GateSchedule {
    int n = 0;
    int k = 0;
    std::vector<std::vector<Gate>> layers;
    std::vector<int> output_slots;  // qubits holding the unencoded logical pairs
    int depth() const { return static_cast<int>(layers.size()); }
};

// Staircase schedule for a generic [[n,k]] code in canonical form. Gate C_{i,j}
// sits in layer i+j-2 (j > i) or n+i+j-2 (j <= i); pairs among the last k
// qubits are never needed.
GateSchedule unencode_schedule(int n, int k);
// Shorter schedules for parity (depth n-2) and repetition (depth n-1) codes,
// with the logical pairs ending on slots 0..k-1. Other codes use the staircase.
GateSchedule unencode_schedule(const CodeSpec &code);

// Conjugates a Pauli through one gate / a whole schedule, ignoring phases.
PauliOp apply_gate(const PauliOp &p, const Gate &g);
PauliOp replay(const GateSchedule &s, PauliOp p);

// True iff the schedule maps the code's stabilizer group onto single-qubit
// checks on every non-output slot and each logical onto the output slots.
bool verify_unencoding(const StabilizerCode &code, const GateSchedule &s);

struct StageThroughput {
    double T_out = 0;
    bool limited_space = false;
    double discard_fraction = 0;  // share of inputs dropped in steady state
};

StageThroughput stage_throughput(double T_in, double T_dis, double B, int n, int n_total, int k, double p_fail);

struct StagePlan {
    double B = 0;
    double T_input = 0;
    double T_distill = 0;
};

struct PipelinePlan {
    int64_t B0 = 1;
    std::vector<StagePlan> stages;
    double B_all = 0;
    int64_t batch_size = 1;
    double batch_period = 0;
};

PipelinePlan plan_pipeline(const std::vector<CodeSpec> &seq, const SequenceMetrics &metrics, double T_Bell,
                           double T_gate, double T_inject);

}  // namespace qed

#endif
