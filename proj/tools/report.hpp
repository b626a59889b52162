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

// JSON and CSV encodings of the library's report types.

#ifndef QEDISTILL_TOOLS_REPORT_HPP
#define QEDISTILL_TOOLS_REPORT_HPP

#include <string>
#include <vector>

#include "json.hpp"
#include "qedistill/analytic.hpp"
#include "qedistill/estimators.hpp"
#include "qedistill/montecarlo.hpp"
#include "qedistill/optimizer.hpp"
#include "qedistill/pipeline.hpp"

namespace qed {

using json = nlohmann::ordered_json;

void to_json(json &j, const CodeSpec &c);
void from_json(const json &j, CodeSpec &c);
void to_json(json &j, const PauliDist &d);
void from_json(const json &j, PauliDist &d);
void to_json(json &j, const LevelMetrics &m);
void from_json(const json &j, LevelMetrics &m);
void to_json(json &j, const SequenceMetrics &m);
void from_json(const json &j, SequenceMetrics &m);
void to_json(json &j, const Candidate &c);
void from_json(const json &j, Candidate &c);
void to_json(json &j, const Proportion &p);
void from_json(const json &j, Proportion &p);
void to_json(json &j, const SimEstimate &s);
void from_json(const json &j, SimEstimate &s);
void to_json(json &j, const StagePlan &s);
void from_json(const json &j, StagePlan &s);
void to_json(json &j, const PipelinePlan &p);
void from_json(const json &j, PipelinePlan &p);
void to_json(json &j, const BdswResult &b);
void from_json(const json &j, BdswResult &b);
void to_json(json &j, const OptimizedCell &c);
void from_json(const json &j, OptimizedCell &c);
void to_json(json &j, const CompareRow &r);
void from_json(const json &j, CompareRow &r);

namespace report {

// Shortest decimal that parses back to the same double; locale independent.
std::string num(double v);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::string str() const;
};

Table metrics_table(const SequenceMetrics &m);
Table search_table(const std::vector<std::pair<int64_t, SearchResult>> &sweep);
Table sim_table(const SimEstimate &s);
Table pipeline_table(const PipelinePlan &p);
Table compare_table(const std::vector<CompareRow> &rows, const std::vector<int64_t> &buffers);

}  // namespace report
}  // namespace qed

#endif
