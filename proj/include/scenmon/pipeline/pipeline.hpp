// Copyright 2026 The scenmon Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "scenmon/pipeline/highd.hpp"
#include "scenmon/pipeline/trace_io.hpp"
#include "scenmon/pipeline/types.hpp"
#include "scenmon/scenarios.hpp"

namespace scenmon
{

/// Runs fn(0..n-1) on up to jobs threads (0 = hardware concurrency). The
/// first exception thrown by any task is rethrown after all workers stop.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)> & fn);

struct CandidatePair
{
  std::size_t direction_index = 0;  ///< into Recording::directions
  VehicleId sv;
  VehicleId pov;
  long first_frame = 0;  ///< co-presence window, inclusive
  long last_frame = 0;
};

struct PairScan
{
  std::vector<CandidatePair> pairs;  ///< ordered pairs with some RSS violation
  std::size_t scanned = 0;           ///< ordered co-present pairs examined
};

/// Ordered (SV, POV) pairs of the same direction that are co-present and
/// violate the RSS distance at some frame. Both orders are emitted.
PairScan enumerate_pairs(const Recording & rec, const PipelineParams & params, unsigned jobs = 1);

/// Applies the dangerArises filter to one pair and trims it to
/// [first sample where initSafe & F danger holds, end of the last maximal
/// rssViolation interval]. Returns nothing when the pair is dropped.
std::optional<DisturbTrace> filter_and_trim(
  const Recording & rec, const CandidatePair & pair, const PipelineParams & params);

/// ingest + enumerate_pairs + filter_and_trim over every recording in dir.
/// Throws ConfigError when dir holds no recordings.
TraceSet filter_directory(
  const std::filesystem::path & dir, const PipelineParams & params, unsigned jobs = 1);

struct TraceVerdicts
{
  std::string name;
  std::vector<bool> scenarios;  ///< aligned with EvaluationReport::indices
  bool matching = false;
};

struct EvaluationReport
{
  std::string spec_set;
  double min_danger = 0.0;
  std::vector<int> indices;
  std::size_t traces = 0;
  std::size_t matching = 0;
  std::vector<std::size_t> counts;  ///< aligned with indices
  std::vector<TraceVerdicts> per_trace;

  /// matching / traces; empty when there are no traces.
  std::optional<double> recall() const;
};

/// Scenario indices evaluated by default: 1 and 3..8, plus 2 when the
/// three-vehicle mode is on.
std::vector<int> default_indices(bool three_vehicle);

/// Evaluates every scenario of every variant at the start of each trace. The
/// lane role L ranges over all lanes of the trace's map; for Scenario 2 POV1
/// ranges over the trace's pov1_candidates.
std::vector<EvaluationReport> evaluate(const std::vector<SpecVariant> & variants,
  const std::vector<int> & indices, const std::vector<DisturbTrace> & traces,
  const PipelineParams & params, unsigned jobs = 1);

/// Truth of scenario `index` under `variant` at the start of one trace.
bool scenario_holds(int index, SpecVariant variant, const DisturbTrace & trace,
  const PipelineParams & params);

void write_report_table(std::ostream & out, const std::vector<EvaluationReport> & reports);
void write_report_jsonl(std::ostream & out, const std::vector<EvaluationReport> & reports);
void write_match_csv(std::ostream & out, const std::vector<EvaluationReport> & reports);

}  // namespace scenmon
