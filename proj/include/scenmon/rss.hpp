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

#include "scenmon/params.hpp"
#include "scenmon/stl/atoms.hpp"
#include "scenmon/trace.hpp"

namespace scenmon
{

/// Longitudinal RSS safe distance for rear speed v_r and front speed v_f.
double d_rss_lon(double v_r, double v_f, const RssParams & p);

/// Lateral RSS safe distance; vehicle 1 is the left one. Lateral velocities
/// may be negative. The stability factor is not modelled.
double d_rss_lat(double v1, double v2, const RssParams & p);

struct VehicleSnapshot
{
  VehicleState state;
  VehicleDims dims;
};

/// b is ahead of a within length(b) + dRSS_lon. The margin is the smaller of
/// the two conjunct margins and reads true when >= 0.
double danger_ahead_margin(const VehicleSnapshot & a, const VehicleSnapshot & b, const RssParams & p,
  AngleConvention angle = AngleConvention::kPathAligned);
bool danger_ahead(const VehicleSnapshot & a, const VehicleSnapshot & b, const RssParams & p,
  AngleConvention angle = AngleConvention::kPathAligned);

/// b is left of a within width(b) + dRSS_lat(v_lat_b, v_lat_a).
double danger_left_margin(const VehicleSnapshot & a, const VehicleSnapshot & b, const RssParams & p,
  AngleConvention angle = AngleConvention::kPathAligned);
bool danger_left(const VehicleSnapshot & a, const VehicleSnapshot & b, const RssParams & p,
  AngleConvention angle = AngleConvention::kPathAligned);

/// Reciprocal forms: same sign as the margins above, but the value
/// decreases monotonically with the gap. 1/0 is taken as +inf.
double danger_ahead_rs(const VehicleSnapshot & a, const VehicleSnapshot & b, const RssParams & p,
  AngleConvention angle = AngleConvention::kPathAligned);
double danger_left_rs(const VehicleSnapshot & a, const VehicleSnapshot & b, const RssParams & p,
  AngleConvention angle = AngleConvention::kPathAligned);

bool rss_violation_lon(const VehicleSnapshot & a, const VehicleSnapshot & b, const RssParams & p,
  AngleConvention angle = AngleConvention::kPathAligned);
bool rss_violation_lat(const VehicleSnapshot & a, const VehicleSnapshot & b, const RssParams & p,
  AngleConvention angle = AngleConvention::kPathAligned);
bool rss_violation(const VehicleSnapshot & a, const VehicleSnapshot & b, const RssParams & p,
  AngleConvention angle = AngleConvention::kPathAligned);

/// dangerAhead, dangerLeft, their _rs variants and the rssViolation family.
void register_rss_atoms(stl::AtomRegistry & registry);

}  // namespace scenmon
