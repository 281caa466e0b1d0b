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

#include "scenmon/errors.hpp"
#include "scenmon/trace.hpp"

namespace scenmon
{
namespace
{

Trace ramp()
{
  TraceBuilder b({0.0, 1.0, 2.0, 3.0});
  b.add_vehicle("A", VehicleDims{});
  for (std::size_t k = 0; k < 4; ++k) {
    VehicleState st;
    st.s = 10.0 * static_cast<double>(k);
    st.v = 10.0;
    b.set_state("A", k, st);
  }
  b.add_vehicle("B", VehicleDims{4.0, 2.0});
  for (std::size_t k = 1; k < 3; ++k) {
    VehicleState st;
    st.s = 50.0;
    b.set_state("B", k, st);
  }
  return std::move(b).build();
}

TEST(Trace, StepHoldAndLinearLookup)
{
  const Trace t = ramp();
  EXPECT_EQ(t.value_at("A", 1.5).s, 10.0);
  EXPECT_EQ(t.value_at("A", 1.5, InterpolationMode::kLinear).s, 15.0);
  EXPECT_EQ(t.value_at("A", 3.0).s, 30.0);
  EXPECT_EQ(t.sample_index(2.999), 2u);
}

TEST(Trace, DomainErrors)
{
  const Trace t = ramp();
  EXPECT_THROW(t.value_at("A", 3.5), OutOfDomain);
  EXPECT_THROW(t.value_at("A", -0.1), OutOfDomain);
  EXPECT_THROW(t.value_at("C", 1.0), VehicleAbsent);
  EXPECT_THROW(t.value_at("B", 0.5), VehicleAbsent);
  EXPECT_NO_THROW(t.value_at("B", 2.5));
}

TEST(Trace, ConstructionChecks)
{
  EXPECT_THROW(TraceBuilder({0.0}).build(), InvalidTrace);
  EXPECT_THROW(TraceBuilder({0.0, 1.0}).set_state("A", 0, {}), InvalidTrace);
  EXPECT_THROW(
    {
      TraceBuilder b({0.0, 1.0, 1.0});
      std::move(b).build();
    },
    InvalidTrace);
  TraceBuilder b({0.0, 1.0});
  b.add_vehicle("A", VehicleDims{0.0, 1.0});
  EXPECT_THROW(std::move(b).build(), InvalidTrace);
}

TEST(Trace, TrimInsertsHeldOrInterpolatedSample)
{
  const Trace t = ramp();
  const Trace held = t.trim({0.5, 2.0});
  EXPECT_EQ(held.domain(), (TimeInterval{0.5, 2.0}));
  ASSERT_EQ(held.size(), 3u);
  EXPECT_EQ(held.value_at("A", 0.5).s, 0.0);

  const Trace lin = t.trim({0.5, 2.0}, InterpolationMode::kLinear);
  EXPECT_EQ(lin.value_at("A", 0.5, InterpolationMode::kLinear).s, 5.0);

  EXPECT_THROW(t.trim({1.0, 4.0}), OutOfDomain);
  EXPECT_THROW(t.trim({1.2, 1.8}), EmptyDomain);
}

TEST(Trace, SelectKeepsListedVehicles)
{
  const Trace t = ramp().select({"B"});
  EXPECT_TRUE(t.has_vehicle("B"));
  EXPECT_FALSE(t.has_vehicle("A"));
}

TEST(Trace, VelocityComponents)
{
  VehicleState st;
  st.v = 10.0;
  st.theta = std::atan2(3.0, 4.0);
  const VelocityComponents pa = longitudinal_lateral_velocity(st);
  EXPECT_NEAR(pa.lon, 8.0, 1e-12);
  EXPECT_NEAR(pa.lat, 6.0, 1e-12);
  const VelocityComponents lit = longitudinal_lateral_velocity(st, AngleConvention::kLiteral);
  EXPECT_NEAR(lit.lon, 6.0, 1e-12);
  EXPECT_NEAR(lit.lat, 8.0, 1e-12);
}

TEST(Trace, FrontRearOfStraightVehicle)
{
  VehicleState st;
  st.s = 100.0;
  const Extent e = front_rear(st, VehicleDims{4.5, 1.8});
  EXPECT_EQ(e.front, 100.0);
  EXPECT_EQ(e.rear, 95.5);
}

}  // namespace
}  // namespace scenmon
