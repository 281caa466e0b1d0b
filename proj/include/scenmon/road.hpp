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

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "scenmon/trace.hpp"

namespace scenmon
{

using LaneletId = std::string;
using LaneId = std::string;

enum class Zone { kMainZone, kMergeZone, kDepartZone };
enum class LaneAttr { kMain, kMerge, kDeparture };

const char * to_string(Zone zone);
const char * to_string(LaneAttr attr);
Zone zone_from_string(const std::string & text);
LaneAttr attr_from_string(const std::string & text);

/// Lanelet as an axis-aligned box in (s, d) curvilinear coordinates.
struct Lanelet
{
  LaneletId id;
  Zone zone = Zone::kMainZone;
  LaneAttr attr = LaneAttr::kMain;
  double s_min = 0.0;
  double s_max = 0.0;
  double d_right = 0.0;
  double d_left = 0.0;
  std::optional<LaneletId> pred;
  std::optional<LaneletId> succ;
};

struct Lane
{
  LaneId id;
  std::vector<LaneletId> lanelets;  ///< ordered from first predecessor to last successor
};

/// Footprint [s - length, s] x [d - width, d] of a vehicle at one instant.
struct Footprint
{
  double s_lo = 0.0;
  double s_hi = 0.0;
  double d_lo = 0.0;
  double d_hi = 0.0;
};

Footprint footprint(const VehicleState & state, const VehicleDims & dims);

/// Signed overlap of a footprint with a lanelet: the smaller of the two axis
/// overlaps. Positive iff the vehicle occupies the lanelet; touching gives 0.
double occupancy_margin(const Footprint & fp, const Lanelet & lanelet);
bool occ(const Footprint & fp, const Lanelet & lanelet);

class RoadNetwork
{
public:
  RoadNetwork() = default;

  const std::map<LaneletId, Lanelet> & lanelets() const { return lanelets_; }
  const std::map<LaneId, Lane> & lanes() const { return lanes_; }
  const Lanelet & lanelet(const LaneletId & id) const;
  const Lane & lane(const LaneId & id) const;
  bool has_lane(const LaneId & id) const { return lanes_.count(id) != 0; }
  const LaneId & lane_of(const LaneletId & id) const;

  /// Lanes sharing a boundary with `id` (symmetric, irreflexive).
  const std::set<LaneId> & adjacent_lanes(const LaneId & id) const;

  double at_lane_margin(const Footprint & fp, const LaneId & lane) const;
  bool at_lane(const Footprint & fp, const LaneId & lane) const;
  double zone_margin(const Footprint & fp, Zone zone) const;
  bool in_zone(const Footprint & fp, Zone zone) const;
  bool on_main_road(const Footprint & fp) const { return in_zone(fp, Zone::kMainZone); }
  bool in_merge_zone(const Footprint & fp) const { return in_zone(fp, Zone::kMergeZone); }
  bool in_depart_zone(const Footprint & fp) const { return in_zone(fp, Zone::kDepartZone); }

  /// Lane with the largest occupancy margin, if any is occupied.
  std::optional<LaneId> primary_lane(const Footprint & fp) const;

private:
  friend RoadNetwork build_lanes(const std::vector<Lanelet> & lanelets);

  std::map<LaneletId, Lanelet> lanelets_;
  std::map<LaneId, Lane> lanes_;
  std::map<LaneletId, LaneId> lane_of_;
  std::map<LaneId, std::set<LaneId>> adjacency_;
};

/// Groups lanelets into lanes along pred/succ chains and derives lane
/// adjacency from shared boundaries. Lane ids are the id of the first lanelet
/// of each chain.
RoadNetwork build_lanes(const std::vector<Lanelet> & lanelets);

/// Lanelet left-adjacency in the box representation: overlapping s-extents,
/// and left's right boundary coincides with right's left boundary.
bool left_adjacent(const Lanelet & left, const Lanelet & right);

/// Map file: one JSON object per line with keys id, zone, attr, s_min, s_max,
/// d_right, d_left, pred, succ.
std::vector<Lanelet> read_map(std::istream & in);
std::vector<Lanelet> read_map_file(const std::string & path);
void write_map(std::ostream & out, const std::vector<Lanelet> & lanelets);
std::vector<Lanelet> lanelets_of(const RoadNetwork & road);

/// Straight multi-lane main road: lane j spans d in [j*w, (j+1)*w], lanelet
/// and lane ids "lane<j>".
RoadNetwork straight_road(int lane_count, double lane_width = 3.5, double s_min = -1.0e4,
  double s_max = 1.0e4, Zone zone = Zone::kMainZone);

}  // namespace scenmon
