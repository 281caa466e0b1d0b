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

#include "scenmon/errors.hpp"
#include "scenmon/stl/exemplify.hpp"
#include "scenmon/stl/monitor.hpp"
#include "scenmon/stl/parser.hpp"

namespace scenmon::stl
{
namespace
{

SignalTemplate two_cars()
{
  SignalTemplate t;
  for (const char * id : {"SV", "POV"}) {
    VehicleTemplate v;
    v.id = id;
    t.vehicles.push_back(v);
  }
  return t;
}

bool verifies(const Formula & f, const ExemplifyResult & r)
{
  EvalContext ctx;
  ctx.trace = std::make_shared<const Trace>(*r.trace);
  ctx.road = std::make_shared<const RoadNetwork>(straight_road(3));
  return eval_bool(f, ctx, 0.0);
}

TEST(Exemplify, FindsSatisfyingSignal)
{
  for (const char * text : {"F(v_gt(SV,5))", "G[0,2](v_lt(SV,10)) & F[5,6](v_gt(SV,30))",
         "aheadOf(SV,POV) & F(aheadOf(POV,SV))", "F(atLane(SV,lane2)) & G[0,1](atLane(SV,lane0))"}) {
    const Formula f = parse(text);
    const ExemplifyResult r = exemplify(f, two_cars(), ExemplifyOptions{20, 200, 5, 0.0});
    ASSERT_TRUE(r.success) << text;
    EXPECT_GT(r.robustness, 0.0) << text;
    EXPECT_TRUE(verifies(f, r)) << text;
  }
}

TEST(Exemplify, SameSeedSameSignal)
{
  const Formula f = parse("F(v_gt(SV,5))");
  const ExemplifyResult a = exemplify(f, two_cars(), ExemplifyOptions{5, 50, 9, 0.0});
  const ExemplifyResult b = exemplify(f, two_cars(), ExemplifyOptions{5, 50, 9, 0.0});
  ASSERT_TRUE(a.success && b.success);
  EXPECT_EQ(*a.trace, *b.trace);
}

TEST(Exemplify, ContradictionFails)
{
  const ExemplifyResult r =
    exemplify(parse("v_gt(SV,5) & !v_gt(SV,5)"), two_cars(), ExemplifyOptions{3, 30, 1, 0.0});
  EXPECT_FALSE(r.success);
  EXPECT_FALSE(r.trace.has_value());
  EXPECT_LE(r.robustness, 0.0);
  EXPECT_GT(r.evaluations, 0);
}

TEST(Exemplify, TimeLimitStopsTheSearch)
{
  const ExemplifyResult r = exemplify(
    parse("v_gt(SV,5) & !v_gt(SV,5)"), two_cars(), ExemplifyOptions{100000, 1000, 1, 0.05});
  EXPECT_FALSE(r.success);
  EXPECT_TRUE(r.timed_out);
}

TEST(Exemplify, TemplateChecks)
{
  SignalTemplate t = two_cars();
  t.vehicles[0].v = {10.0, 5.0};
  EXPECT_THROW(exemplify(parse("true"), t), InvalidTemplate);
  t = two_cars();
  t.dt = 0.0;
  EXPECT_THROW(exemplify(parse("true"), t), InvalidTemplate);
  t = two_cars();
  t.vehicles.clear();
  EXPECT_THROW(exemplify(parse("true"), t), InvalidTemplate);
}

}  // namespace
}  // namespace scenmon::stl
