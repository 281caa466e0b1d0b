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

#include <cstdint>
#include <filesystem>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "scenmon/pipeline/highd.hpp"
#include "scenmon/pipeline/types.hpp"
#include "scenmon/road.hpp"
#include "scenmon/trace.hpp"

namespace scenmon::synth
{

inline constexpr double kLaneWidth = 3.5;
inline constexpr int kLaneCount = 3;

/// d of the left edge of a default-sized car centred in lane j.
double lane_center_left(int lane, const VehicleDims & dims = {});

/// Straight main-road map with lanes lane0 (rightmost) .. lane2.
std::shared_ptr<const RoadNetwork> main_road();

/// Three lanes, each a chain main -> zone -> main, the zone lanelets covering
/// s in [0, 300]. The rightmost zone lanelet carries the merge or departure
/// attribute.
std::shared_ptr<const RoadNetwork> zone_road(Zone zone);

/// One lateral manoeuvre: from t_start, move d towards target at speed.
struct LateralMove
{
  double t_start = 0.0;
  double target = 0.0;
  double speed = 1.0;
};

/// One speed change: from t_start, ramp v towards target at |accel|.
struct SpeedChange
{
  double t_start = 0.0;
  double target = 0.0;
  double accel = 1.0;
};

struct VehicleScript
{
  VehicleId id;
  VehicleDims dims;
  double s0 = 0.0;  ///< front position at t = 0
  double d0 = 0.0;
  double v0 = 0.0;  ///< longitudinal speed at t = 0
  std::vector<LateralMove> lateral;
  std::vector<SpeedChange> speed;
};

/// Samples the scripts on k / rate_hz, k = 0..floor(duration * rate_hz).
Trace simulate(const std::vector<VehicleScript> & scripts, double duration, double rate_hz = 25.0);

/// Trace of scenario `index` (1..24) generated from the seed. SV is "SV",
/// the POV is "POV"; scenario 2 rows add "POV1" as a pov1 candidate. Zone
/// rows (9..24) use zone_road.
DisturbTrace generate(int index, std::uint64_t seed);

/// Two vehicles "SV" and "POV" with random piecewise motion on the main
/// road, for property tests.
DisturbTrace random_pair(std::mt19937_64 & rng);

/// highD-schema copy of a trace in the given driving direction. Vehicle ids
/// are renumbered from first_id in map order; markings follow kLaneCount
/// lanes of kLaneWidth.
HighdRecording to_highd(const Trace & trace, int direction, int first_id = 1);

/// Two-car highD recording whose filtered trace is [2.0, 10.0]: violation on
/// [0, 2.0), safe on [2.0, 5.0), violation on [5.0, 10.0), safe to 12.0.
HighdRecording trim_fixture();

/// Writes a small highD corpus: one recording per entry of `indices`, built
/// from generated scenarios, alternating driving directions, each with an
/// extra truck and a far-away car.
void write_corpus(const std::filesystem::path & dir, const std::vector<int> & indices,
  std::uint64_t seed);

}  // namespace scenmon::synth
