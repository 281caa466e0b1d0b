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

#include <random>

#include "scenmon/errors.hpp"
#include "scenmon/pipeline/pipeline.hpp"
#include "scenmon/scenarios.hpp"
#include "scenmon/stl/monitor.hpp"
#include "scenmon/synth/generator.hpp"

namespace scenmon
{
namespace
{

stl::EvalContext context_of(const DisturbTrace & t, const PipelineParams & params)
{
  stl::EvalContext ctx;
  ctx.trace = t.trace;
  ctx.road = t.road;
  ctx.rss = params.rss;
  ctx.scenario = params.scenario;
  return ctx;
}

TEST(Scenarios, VariantNames)
{
  EXPECT_EQ(variant_from_string("ISO34502-STL"), SpecVariant::kBase);
  EXPECT_EQ(variant_from_string("extA"), SpecVariant::kExtA);
  EXPECT_EQ(variant_from_string(to_string(SpecVariant::kExt)), SpecVariant::kExt);
  EXPECT_THROW(variant_from_string("extB"), ConfigError);
}

TEST(Scenarios, RoleArity)
{
  EXPECT_EQ(pov_count(1), 1u);
  EXPECT_EQ(pov_count(2), 2u);
  EXPECT_EQ(pov_count(10), 2u);
  EXPECT_EQ(pov_count(18), 2u);
  EXPECT_THROW(scenario(2, SpecVariant::kBase), ArityMismatch);
  ScenarioRoles two;
  two.povs = {"A", "B"};
  EXPECT_THROW(scenario(1, SpecVariant::kBase, two), ArityMismatch);
  EXPECT_THROW(scenario(25, SpecVariant::kBase), ConfigError);
  EXPECT_THROW((SpecSet{SpecVariant::kBase, {}}.validate()), ConfigError);
}

TEST(Scenarios, RoadSectors)
{
  EXPECT_STREQ(road_sector_name(1), "mainRoad");
  EXPECT_STREQ(road_sector_name(9), "mergeZone");
  EXPECT_STREQ(road_sector_name(17), "departZone");
}

TEST(Scenarios, CompactAndExpandedAgree)
{
  const PipelineParams params;
  for (int index : {1, 3, 5, 7}) {
    const DisturbTrace t = synth::generate(index, 5);
    stl::EvalContext ctx = context_of(t, params);
    ctx.bindings = {{"L", t.road->lanes().begin()->first}};
    for (const auto & [lane, unused] : t.road->lanes()) {
      ctx.bindings["L"] = lane;
      ctx.bindings["POV"] = t.pov;
      ctx.bindings["SV"] = t.sv;
      const double t0 = t.trace->domain().lo;
      const stl::Formula compact = scenario(index, SpecVariant::kExt);
      const stl::Formula expanded =
        scenario_expanded(index, SpecVariant::kExt, ScenarioRoles{}, params.scenario);
      EXPECT_EQ(stl::eval_bool(compact, ctx, t0), stl::eval_bool(expanded, ctx, t0));
      EXPECT_EQ(stl::eval_robust(compact, ctx, t0), stl::eval_robust(expanded, ctx, t0));
    }
  }
}

// accel holds when SV is slower than POV and POV stays in L; the ext form
// also accepts a positive POV acceleration.
TEST(Scenarios, AccelMatchesSpeedOracle)
{
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> speed(10.0, 40.0);
  std::uniform_real_distribution<double> acc(-3.0, 3.0);
  std::uniform_int_distribution<int> lane(0, synth::kLaneCount - 1);
  int slower = 0;
  for (int k = 0; k < 500; ++k) {
    const VehicleState sv{0.0, speed(rng), acc(rng), synth::lane_center_left(0), 0.0};
    const int pov_lane = lane(rng);
    const VehicleState pov{40.0, speed(rng), acc(rng), synth::lane_center_left(pov_lane), 0.0};
    TraceBuilder b({0.0, 1.0});
    for (const auto & [id, st] : {std::pair{"SV", sv}, std::pair{"POV", pov}}) {
      b.add_vehicle(id, VehicleDims{});
      b.set_state(id, 0, st);
      b.set_state(id, 1, st);
    }
    stl::EvalContext ctx;
    ctx.trace = std::make_shared<const Trace>(std::move(b).build());
    ctx.road = synth::main_road();
    ctx.bindings = {{"SV", "SV"}, {"POV", "POV"}, {"L", "lane0"}};

    const bool in_lane = pov_lane == 0;
    const bool accel = sv.v < pov.v && in_lane;
    const bool accel_ext = (sv.v < pov.v || pov.a > 0.0) && in_lane;
    slower += sv.v < pov.v ? 1 : 0;
    EXPECT_EQ(stl::eval_bool(scenarios::accel("POV", "SV", "L"), ctx, 0.0), accel);
    EXPECT_EQ(stl::eval_bool(scenarios::accel_ext("POV", "SV", "L"), ctx, 0.0), accel_ext);
    EXPECT_EQ(stl::eval_bool(scenarios::decel("POV", "SV", "L"), ctx, 0.0),
      pov.v < sv.v && in_lane);
  }
  EXPECT_GT(slower, 100);
  EXPECT_LT(slower, 400);
}

TEST(Scenarios, GeneratedTracesAreDetected)
{
  PipelineParams params;
  params.three_vehicle = true;
  for (int index = 1; index <= 24; ++index) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const DisturbTrace t = synth::generate(index, seed);
      EXPECT_TRUE(scenario_holds(index, SpecVariant::kExt, t, params)) << index << " " << seed;
      const stl::EvalContext ctx = context_of(t, params);
      EXPECT_TRUE(stl::eval_bool(danger_arises(t.sv, t.pov), ctx, t.trace->domain().lo));
    }
  }
}

TEST(Scenarios, VariantsAndThresholdsAreOrdered)
{
  PipelineParams loose;
  PipelineParams strict;
  strict.scenario.min_danger = 0.6;
  std::mt19937_64 rng(21);
  for (int i = 0; i < 40; ++i) {
    const DisturbTrace t = synth::random_pair(rng);
    for (int index : {1, 3, 4, 5, 6, 7, 8}) {
      const bool base = scenario_holds(index, SpecVariant::kBase, t, loose);
      const bool ext_a = scenario_holds(index, SpecVariant::kExtA, t, loose);
      const bool ext = scenario_holds(index, SpecVariant::kExt, t, loose);
      EXPECT_TRUE(!base || ext_a);
      EXPECT_TRUE(!ext_a || ext);
      EXPECT_TRUE(!scenario_holds(index, SpecVariant::kExt, t, strict) || ext);
    }
  }
}

}  // namespace
}  // namespace scenmon
