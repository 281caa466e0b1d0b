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

#include <gtest/gtest.h>

#include <filesystem>
#include <set>
#include <sstream>

#include <unistd.h>

#include "scenmon/errors.hpp"
#include "scenmon/pipeline/highd.hpp"
#include "scenmon/pipeline/pipeline.hpp"
#include "scenmon/synth/generator.hpp"

namespace scenmon
{
namespace
{

namespace fs = std::filesystem;

fs::path scratch(const std::string & name)
{
  const fs::path p = fs::temp_directory_path() / ("scenmon_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string reports_text(const std::vector<EvaluationReport> & reports)
{
  std::ostringstream out;
  write_report_table(out, reports);
  write_report_jsonl(out, reports);
  write_match_csv(out, reports);
  return out.str();
}

TEST(Pipeline, ParallelForVisitsEveryIndexOnce)
{
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) {
    EXPECT_EQ(h, 1);
  }
  EXPECT_THROW(parallel_for(10, 3, [](std::size_t i) {
    if (i == 7) {
      throw InternalError("boom");
    }
  }),
    InternalError);
}

TEST(Pipeline, TrimFixture)
{
  const fs::path dir = scratch("trim");
  write_highd(dir, "01", synth::trim_fixture());
  const PipelineParams params;
  const Recording rec = ingest(highd_files(dir, "01"), "01", params);
  const PairScan scan = enumerate_pairs(rec, params);
  ASSERT_EQ(scan.pairs.size(), 2u);
  EXPECT_EQ(scan.scanned, 2u);

  std::vector<DisturbTrace> kept;
  for (const CandidatePair & p : scan.pairs) {
    if (auto t = filter_and_trim(rec, p, params)) {
      kept.push_back(*t);
    }
  }
  // rssViolation is symmetric, so both orders survive with the same window
  ASSERT_EQ(kept.size(), 2u);
  EXPECT_EQ(kept[0].name, "01_2_1_2");
  EXPECT_EQ(kept[1].name, "01_2_2_1");
  for (const DisturbTrace & t : kept) {
    EXPECT_EQ(t.trace->domain(), (TimeInterval{2.0, 10.0}));
  }
  fs::remove_all(dir);
}

TEST(Pipeline, PairsComeInBothOrders)
{
  const fs::path dir = scratch("pairs");
  synth::write_corpus(dir, {1, 3, 5}, 9);
  const PipelineParams params;
  for (const std::string & id : list_recordings(dir)) {
    const Recording rec = ingest(highd_files(dir, id), id, params);
    std::set<std::tuple<std::size_t, VehicleId, VehicleId>> seen;
    for (const CandidatePair & p : enumerate_pairs(rec, params).pairs) {
      seen.emplace(p.direction_index, p.sv, p.pov);
    }
    for (const auto & [d, a, b] : seen) {
      EXPECT_EQ(seen.count({d, b, a}), 1u) << id << " " << a << " " << b;
    }
  }
  fs::remove_all(dir);
}

TEST(Pipeline, EmptyDirectory)
{
  const fs::path dir = scratch("empty");
  EXPECT_THROW(filter_directory(dir, PipelineParams{}), ConfigError);
  fs::remove_all(dir);
}

TEST(Pipeline, LongMinSafeKeepsNothing)
{
  const fs::path dir = scratch("minsafe");
  synth::write_corpus(dir, {1, 3}, 2);
  PipelineParams params;
  params.scenario.min_safe = 1000.0;
  const TraceSet set = filter_directory(dir, params);
  EXPECT_TRUE(set.traces.empty());
  EXPECT_GT(set.stats.pairs_violating, 0u);
  EXPECT_EQ(set.stats.pairs_kept, 0u);
  fs::remove_all(dir);
}

TEST(Pipeline, FilterAndEvaluateAreDeterministic)
{
  const fs::path dir = scratch("determinism");
  synth::write_corpus(dir, {1, 3, 4, 5, 6, 7, 8}, 3);
  PipelineParams params;
  const TraceSet one = filter_directory(dir, params, 1);
  const TraceSet many = filter_directory(dir, params, 4);
  EXPECT_EQ(one.stats, many.stats);
  ASSERT_EQ(one.traces.size(), many.traces.size());
  for (std::size_t i = 0; i < one.traces.size(); ++i) {
    EXPECT_EQ(one.traces[i].name, many.traces[i].name);
    EXPECT_EQ(*one.traces[i].trace, *many.traces[i].trace);
  }
  const std::vector<SpecVariant> all = {SpecVariant::kBase, SpecVariant::kExtA, SpecVariant::kExt};
  const std::vector<int> indices = default_indices(false);
  EXPECT_EQ(reports_text(evaluate(all, indices, one.traces, params, 1)),
    reports_text(evaluate(all, indices, many.traces, params, 4)));
  fs::remove_all(dir);
}

TEST(Pipeline, SyntheticTracesAreRecalled)
{
  PipelineParams params;
  params.three_vehicle = true;
  std::vector<DisturbTrace> traces;
  for (int i = 1; i <= 8; ++i) {
    traces.push_back(synth::generate(i, 17));
    traces.push_back(synth::generate(i, 18));
  }
  const auto reports = evaluate({SpecVariant::kBase, SpecVariant::kExt}, default_indices(true), traces, params, 2);
  ASSERT_EQ(reports.size(), 2u);
  EXPECT_EQ(reports[1].traces, traces.size());
  EXPECT_EQ(reports[1].matching, traces.size());
  EXPECT_EQ(reports[1].recall(), std::optional<double>(1.0));
  EXPECT_LE(reports[0].matching, reports[1].matching);
  for (std::size_t t = 0; t < traces.size(); ++t) {
    const int index = static_cast<int>(t / 2) + 1;
    const auto & idx = reports[1].indices;
    const std::size_t col = static_cast<std::size_t>(std::find(idx.begin(), idx.end(), index) - idx.begin());
    EXPECT_TRUE(reports[1].per_trace[t].scenarios[col]) << traces[t].name;
  }
}

TEST(Pipeline, ReportFormats)
{
  EvaluationReport r;
  r.spec_set = "ISO34502-STL";
  r.indices = {1, 3};
  r.traces = 2;
  r.matching = 1;
  r.counts = {1, 0};
  r.per_trace = {{"a", {true, false}, true}, {"b", {false, false}, false}};
  std::ostringstream table, jsonl, csv;
  write_report_table(table, {r});
  write_report_jsonl(jsonl, {r});
  write_match_csv(csv, {r});
  EXPECT_NE(table.str().find("50.0%"), std::string::npos);
  EXPECT_EQ(jsonl.str(),
    "{\"spec_set\":\"ISO34502-STL\",\"min_danger\":0.0,\"traces\":2,\"matching\":1,"
    "\"recall\":0.5,\"scenarios\":{\"s1\":1,\"s3\":0}}\n");
  EXPECT_EQ(csv.str(), "trace,spec_set,s1,s3,matching\na,ISO34502-STL,1,0,1\nb,ISO34502-STL,0,0,0\n");

  EvaluationReport empty;
  empty.spec_set = "x";
  EXPECT_FALSE(empty.recall().has_value());
}

}  // namespace
}  // namespace scenmon
