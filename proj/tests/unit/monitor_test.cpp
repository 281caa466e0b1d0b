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

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "scenmon/errors.hpp"
#include "scenmon/stl/monitor.hpp"
#include "scenmon/stl/parser.hpp"

namespace scenmon::stl
{
namespace
{

EvalContext context_for(const Trace & trace)
{
  EvalContext ctx;
  ctx.trace = std::make_shared<const Trace>(trace);
  ctx.road = std::make_shared<const RoadNetwork>(straight_road(3));
  return ctx;
}

/// One vehicle "SV" with per-sample speeds at the given times.
Trace speed_trace(const std::vector<double> & times, const std::vector<double> & speeds)
{
  TraceBuilder b(times);
  b.add_vehicle("SV", VehicleDims{});
  for (std::size_t k = 0; k < times.size(); ++k) {
    VehicleState st;
    st.v = speeds[k];
    b.set_state("SV", k, st);
  }
  return std::move(b).build();
}

TEST(Monitor, GloballyWindowOnStepSignal)
{
  const Formula f = parse("G[2,3](v_gt(SV, 5))");
  const Trace good = speed_trace({0, 2, 3, 4}, {0, 6, 6, 4});
  EXPECT_TRUE(eval_bool(f, context_for(good), 0.0));
  // v drops to 4 at 2.9, inside the window
  const Trace bad = speed_trace({0, 2, 2.9, 4}, {0, 6, 4, 4});
  EXPECT_FALSE(eval_bool(f, context_for(bad), 0.0));
}

TEST(Monitor, AtomMarginIsRobustness)
{
  const Trace tr = speed_trace({0, 1}, {7, 7});
  EXPECT_DOUBLE_EQ(eval_robust(parse("v_gt(SV, 5)"), context_for(tr), 0.0), 2.0);
  EXPECT_DOUBLE_EQ(eval_robust(parse("v(SV) > 5"), context_for(tr), 0.0), 2.0);
  EXPECT_DOUBLE_EQ(eval_robust(parse("v_gt(SV, 5) & v_lt(SV, 6)"), context_for(tr), 0.0), -1.0);
}

TEST(Monitor, UntilTrivialWhenRhsHoldsNow)
{
  const Trace tr = speed_trace({0, 1, 2}, {9, 0, 0});
  EXPECT_TRUE(eval_bool(parse("false U v_gt(SV, 5)"), context_for(tr), 0.0));
  EXPECT_FALSE(eval_bool(parse("true U v_gt(SV, 50)"), context_for(tr), 0.0));
}

TEST(Monitor, FiniteTraceTruncation)
{
  const Trace tr = speed_trace({0, 1, 2}, {0, 0, 0});
  const EvalContext ctx = context_for(tr);
  // Windows entirely past the end: G is true, F and U are false.
  EXPECT_TRUE(eval_bool(parse("G[5,6] false"), ctx, 0.0));
  EXPECT_FALSE(eval_bool(parse("F[5,6] true"), ctx, 0.0));
  EXPECT_FALSE(eval_bool(parse("true U[5,6] true"), ctx, 0.0));
  // A window reaching past the end is cut to the domain.
  EXPECT_TRUE(eval_bool(parse("F[1,100] true"), ctx, 0.5));
}

TEST(Monitor, OutOfDomainQuery)
{
  const Trace tr = speed_trace({0, 1}, {0, 0});
  EXPECT_THROW(eval_bool(parse("true"), context_for(tr), 2.0), OutOfDomain);
}

TEST(Monitor, UnknownAtomAndUnboundName)
{
  const Trace tr = speed_trace({0, 1}, {0, 0});
  EXPECT_THROW(eval_bool(parse("warp(SV)"), context_for(tr), 0.0), UnboundName);
  EXPECT_THROW(eval_bool(parse("v_gt(POV, 1)"), context_for(tr), 0.0), UnboundName);
  EXPECT_THROW(eval_bool(parse("v_gt(SV)"), context_for(tr), 0.0), ArityMismatch);
  EvalContext ctx = context_for(tr);
  ctx.bindings["EGO"] = "SV";
  EXPECT_TRUE(eval_bool(parse("v_lt(EGO, 1)"), ctx, 0.0));
}

TEST(Monitor, AbsentVehicleReadsFalse)
{
  TraceBuilder b({0, 1, 2});
  b.add_vehicle("SV", VehicleDims{});
  b.set_state("SV", 1, VehicleState{0, 10, 0, 0, 0});
  const EvalContext ctx = context_for(std::move(b).build());
  EXPECT_FALSE(eval_bool(parse("v_gt(SV, 1)"), ctx, 0.0));
  EXPECT_TRUE(eval_bool(parse("!v_gt(SV, 1)"), ctx, 0.0));
  EXPECT_TRUE(eval_bool(parse("v_gt(SV, 1)"), ctx, 1.0));
  EXPECT_EQ(eval_robust(parse("v_gt(SV, 1)"), ctx, 2.0), -kInfinity);
}

TEST(Monitor, SeriesAreKeyedByPreorder)
{
  const Trace tr = speed_trace({0, 1, 2}, {1, 4, 2});
  const Formula f = parse("v_gt(SV, 2) & v_lt(SV, 3)");
  const Series<double> s = eval_series_robust(f, context_for(tr));
  ASSERT_EQ(s.nodes.size(), 3u);
  ASSERT_EQ(s.times.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_DOUBLE_EQ(s.nodes[0][k], std::min(s.nodes[1][k], s.nodes[2][k]));
  }
  EXPECT_DOUBLE_EQ(s.nodes[1][1], 2.0);
}

TEST(Monitor, SharedSubformulasAreBoundOnce)
{
  const Trace tr = speed_trace({0, 1}, {0, 0});
  Monitor m(parse("(v_gt(SV, 1) & v_gt(SV, 1)) | F v_gt(SV, 1)"), context_for(tr));
  // true-free DAG: atom, and, F, or
  EXPECT_EQ(m.bound_size(), 4u);
}

TEST(Monitor, MatchesDenseOracleOnRandomFormulas)
{
  std::mt19937_64 rng(20260501);
  for (int n = 0; n < 300; ++n) {
    const Trace trace = testing::random_single_vehicle_trace(rng);
    const Formula f = testing::random_formula(rng, 4);
    const testing::DenseOracle oracle(f, trace, "X");
    Monitor m(f, context_for(trace));
    const auto & pts = oracle.critical_times();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      ASSERT_EQ(m.eval_bool(pts[i]), oracle.holds(pts[i])) << print(f) << " at " << pts[i];
      if (i + 1 < pts.size()) {
        const double mid = 0.5 * (pts[i] + pts[i + 1]);
        ASSERT_EQ(m.eval_bool(mid), oracle.holds(mid)) << print(f) << " at " << mid;
      }
    }
  }
}

TEST(Monitor, RobustSignAgreesWithBoolean)
{
  std::mt19937_64 rng(7);
  for (int n = 0; n < 300; ++n) {
    const Trace trace = testing::random_single_vehicle_trace(rng);
    const Formula f = testing::random_formula(rng, 4);
    Monitor m(f, context_for(trace));
    for (double t : trace.sample_times()) {
      const double r = m.eval_robust(t);
      if (r != 0.0) {
        ASSERT_EQ(r > 0.0, m.eval_bool(t)) << print(f) << " at " << t;
      }
    }
  }
}

TEST(Monitor, DualityAndWindowMonotonicity)
{
  std::mt19937_64 rng(11);
  for (int n = 0; n < 200; ++n) {
    const Trace trace = testing::random_single_vehicle_trace(rng);
    const Formula p = testing::random_formula(rng, 3);
    const EvalContext ctx = context_for(trace);
    const TimeInterval j{0.25, 1.5};
    Monitor lhs(!Formula::globally(p, j), ctx);
    Monitor rhs(Formula::finally(!p, j), ctx);
    Monitor wide(Formula::globally(p, {0.0, 2.0}), ctx);
    Monitor narrow(Formula::globally(p, {0.0, 0.5}), ctx);
    Monitor base(p, ctx);
    for (double t : trace.sample_times()) {
      ASSERT_EQ(lhs.eval_bool(t), rhs.eval_bool(t));
      if (wide.eval_bool(t)) {
        ASSERT_TRUE(narrow.eval_bool(t));
        ASSERT_TRUE(base.eval_bool(t));
      }
    }
  }
}

}  // namespace
}  // namespace scenmon::stl
