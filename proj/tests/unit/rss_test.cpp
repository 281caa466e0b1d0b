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

#include "scenmon/rss.hpp"

namespace scenmon
{
namespace
{

// Independent transcription of the RSS distances.
double lon_oracle(double vr, double vf, const RssParams & p)
{
  const double d = vr * p.rho + p.a_max * p.rho * p.rho / 2.0 +
                   (vr + p.rho * p.a_max) * (vr + p.rho * p.a_max) / (2.0 * p.b_min) -
                   vf * vf / (2.0 * p.b_max);
  return d > 0.0 ? d : 0.0;
}

double lat_oracle(double v1, double v2, const RssParams & p)
{
  const double v1r = v1 + p.rho * p.a_max_lat;
  const double v2r = v2 - p.rho * p.a_max_lat;
  const double d = (v1 + v1r) / 2.0 * p.rho + v1r * v1r / (2.0 * p.b_min_lat) -
                   ((v2 + v2r) / 2.0 * p.rho - v2r * v2r / (2.0 * p.b_min_lat));
  return d > 0.0 ? d : 0.0;
}

VehicleSnapshot car(double s, double d, double v)
{
  VehicleSnapshot x;
  x.state.s = s;
  x.state.d = d;
  x.state.v = v;
  return x;
}

TEST(Rss, HighwayCalibration)
{
  const RssParams p;
  EXPECT_NEAR(d_rss_lon(27.78, 27.78, p), 48.29, 0.01);
  EXPECT_NEAR(d_rss_lat(0.0, 0.0, p), 1.08, 0.01);
}

TEST(Rss, MatchesOracleOnRandomInputs)
{
  const RssParams p;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> speed(0.0, 50.0);
  std::uniform_real_distribution<double> lat(-3.0, 3.0);
  for (int i = 0; i < 2000; ++i) {
    const double a = speed(rng), b = speed(rng);
    EXPECT_NEAR(d_rss_lon(a, b, p), lon_oracle(a, b, p), 1e-9);
    const double c = lat(rng), d = lat(rng);
    EXPECT_NEAR(d_rss_lat(c, d, p), lat_oracle(c, d, p), 1e-9);
  }
}

TEST(Rss, WorkedValues)
{
  const RssParams p;
  EXPECT_NEAR(d_rss_lat(1.0, -1.0, p), 2.0 * 0.6 + 0.54 + (1.9 * 1.9 + 1.9 * 1.9) / 3.0, 1e-12);
  EXPECT_NEAR(d_rss_lat(1.0, -1.0, p), 4.147, 0.01);
  EXPECT_EQ(d_rss_lon(0.0, 30.0, p), 0.0);

  VehicleSnapshot a = car(0.0, 1.0, 27.78);
  VehicleSnapshot b = car(30.0, 1.0, 27.78);
  b.dims.length = 5.0;
  EXPECT_TRUE(danger_ahead(a, b, p));
  b.state.s = 200.0;
  EXPECT_FALSE(danger_ahead(a, b, p));

  VehicleSnapshot left = car(0.0, 11.0, 0.0);
  left.dims.width = 2.0;
  EXPECT_FALSE(danger_left(car(0.0, 1.0, 0.0), left, p));
  EXPECT_FALSE(rss_violation_lat(car(0.0, 1.0, 0.0), left, p));
  EXPECT_TRUE(rss_violation_lat(car(0.0, 1.0, 0.0), car(0.0, 1.0, 0.0), p));
  EXPECT_EQ(danger_ahead_rs(a, car(0.0, 1.0, 27.78), p), kInfinity);
}

TEST(Rss, ClampsAtZero)
{
  const RssParams p;
  EXPECT_EQ(d_rss_lon(0.0, 60.0, p), 0.0);
  EXPECT_EQ(d_rss_lat(-0.9, 0.9, p), 0.0);
}

TEST(Rss, DangerAheadWindow)
{
  const RssParams p;
  const VehicleSnapshot a = car(0.0, 1.0, 27.78);
  const double reach = 4.5 + lon_oracle(27.78, 27.78, p);
  EXPECT_TRUE(danger_ahead(a, car(reach - 0.01, 1.0, 27.78), p));
  EXPECT_FALSE(danger_ahead(a, car(reach + 0.01, 1.0, 27.78), p));
  EXPECT_FALSE(danger_ahead(a, car(-1.0, 1.0, 27.78), p));
  EXPECT_NEAR(danger_ahead_margin(a, car(10.0, 1.0, 27.78), p), 10.0, 1e-12);
}

TEST(Rss, ViolationIsSymmetric)
{
  const RssParams p;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> pos(-60.0, 60.0);
  std::uniform_real_distribution<double> off(0.0, 10.0);
  std::uniform_real_distribution<double> speed(0.0, 40.0);
  for (int i = 0; i < 2000; ++i) {
    const VehicleSnapshot a = car(pos(rng), off(rng), speed(rng));
    const VehicleSnapshot b = car(pos(rng), off(rng), speed(rng));
    EXPECT_EQ(rss_violation(a, b, p), rss_violation(b, a, p));
  }
}

TEST(Rss, ReciprocalFormSharesSignWithMargin)
{
  const RssParams p;
  const VehicleSnapshot a = car(0.0, 1.0, 27.78);
  double prev = kInfinity;
  for (int i = 0; i < 200; ++i) {
    const double gap = 1.0 + 149.0 * i / 199.0;
    const VehicleSnapshot b = car(gap, 1.0, 27.78);
    const double rs = danger_ahead_rs(a, b, p);
    EXPECT_LE(rs, prev);
    prev = rs;
    const double m = danger_ahead_margin(a, b, p);
    if (m != 0.0) {
      EXPECT_EQ(rs > 0.0, m > 0.0) << gap;
    }
  }
}

}  // namespace
}  // namespace scenmon
