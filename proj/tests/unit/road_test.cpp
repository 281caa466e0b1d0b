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

#include <sstream>

#include "scenmon/errors.hpp"
#include "scenmon/road.hpp"

namespace scenmon
{
namespace
{

Lanelet box(const std::string & id, double s0, double s1, double d0, double d1)
{
  Lanelet l;
  l.id = id;
  l.s_min = s0;
  l.s_max = s1;
  l.d_right = d0;
  l.d_left = d1;
  return l;
}

TEST(Road, StraightRoadAdjacency)
{
  const RoadNetwork road = straight_road(3);
  ASSERT_EQ(road.lanes().size(), 3u);
  EXPECT_EQ(road.adjacent_lanes("lane0"), (std::set<LaneId>{"lane1"}));
  EXPECT_EQ(road.adjacent_lanes("lane1"), (std::set<LaneId>{"lane0", "lane2"}));
  EXPECT_EQ(road.adjacent_lanes("lane2"), (std::set<LaneId>{"lane1"}));
}

TEST(Road, OccupancyMargin)
{
  const Lanelet l = box("x", 0.0, 100.0, 0.0, 3.5);
  // footprint [45, 50] x [1, 2.8]: lateral overlap 1.8 is the smaller one
  EXPECT_DOUBLE_EQ(occupancy_margin(Footprint{45.0, 50.0, 1.0, 2.8}, l), 1.8);
  // touching the left boundary is not occupancy
  EXPECT_DOUBLE_EQ(occupancy_margin(Footprint{45.0, 50.0, 3.5, 5.3}, l), 0.0);
  EXPECT_FALSE(occ(Footprint{45.0, 50.0, 3.5, 5.3}, l));
  EXPECT_TRUE(occ(Footprint{45.0, 50.0, 3.4, 5.2}, l));
}

TEST(Road, VehicleStraddlingTwoLanes)
{
  const RoadNetwork road = straight_road(3);
  VehicleState st;
  st.s = 10.0;
  st.d = 4.5;  // occupies [2.7, 4.5]
  const Footprint fp = footprint(st, VehicleDims{});
  EXPECT_TRUE(road.at_lane(fp, "lane0"));
  EXPECT_TRUE(road.at_lane(fp, "lane1"));
  EXPECT_FALSE(road.at_lane(fp, "lane2"));
  EXPECT_EQ(road.primary_lane(fp), std::optional<LaneId>("lane1"));
}

TEST(Road, ChainsFormLanes)
{
  Lanelet a = box("a", 0.0, 10.0, 0.0, 3.5);
  Lanelet b = box("b", 10.0, 20.0, 0.0, 3.5);
  a.succ = "b";
  b.pred = "a";
  Lanelet c = box("c", 0.0, 20.0, 3.5, 7.0);
  const RoadNetwork road = build_lanes({b, c, a});
  ASSERT_EQ(road.lanes().size(), 2u);
  EXPECT_EQ(road.lane("a").lanelets, (std::vector<LaneletId>{"a", "b"}));
  EXPECT_EQ(road.lane_of("b"), "a");
  EXPECT_EQ(road.adjacent_lanes("a"), (std::set<LaneId>{"c"}));
}

TEST(Road, BadChains)
{
  Lanelet a = box("a", 0.0, 10.0, 0.0, 3.5);
  a.succ = "zz";
  EXPECT_THROW(build_lanes({a}), InvalidChain);

  Lanelet p = box("p", 0.0, 10.0, 0.0, 3.5);
  Lanelet q = box("q", 10.0, 20.0, 0.0, 3.5);
  Lanelet r = box("r", 10.0, 20.0, 3.5, 7.0);
  q.pred = "p";
  r.pred = "p";
  EXPECT_THROW(build_lanes({p, q, r}), DuplicateMembership);

  EXPECT_THROW(build_lanes({box("d", 0.0, 0.0, 0.0, 3.5)}), InvalidMap);
  EXPECT_THROW(build_lanes({box("d", 0.0, 1.0, 0.0, 3.5), box("d", 1.0, 2.0, 0.0, 3.5)}), InvalidMap);
}

TEST(Road, ZonesAndAttributes)
{
  EXPECT_EQ(zone_from_string(to_string(Zone::kMergeZone)), Zone::kMergeZone);
  EXPECT_EQ(attr_from_string(to_string(LaneAttr::kDeparture)), LaneAttr::kDeparture);
  EXPECT_THROW(zone_from_string("nowhere"), InvalidMap);

  const RoadNetwork road = straight_road(2, 3.5, 0.0, 100.0, Zone::kMergeZone);
  VehicleState st;
  st.s = 50.0;
  st.d = 2.0;
  const Footprint fp = footprint(st, VehicleDims{});
  EXPECT_TRUE(road.in_merge_zone(fp));
  EXPECT_FALSE(road.on_main_road(fp));
}

TEST(Road, MapFileRoundTrip)
{
  Lanelet a = box("a", 0.0, 10.0, 0.0, 3.5);
  Lanelet b = box("b", 10.0, 20.0, 0.0, 3.5);
  a.succ = "b";
  b.pred = "a";
  b.zone = Zone::kDepartZone;
  b.attr = LaneAttr::kDeparture;
  a.attr = LaneAttr::kDeparture;
  std::stringstream io;
  write_map(io, {a, b});
  const std::vector<Lanelet> back = read_map(io);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].zone, Zone::kDepartZone);
  EXPECT_EQ(back[0].succ, std::optional<LaneletId>("b"));
  EXPECT_EQ(back[1].s_max, 20.0);

  std::istringstream bad("{\"id\": \"x\"}\n");
  EXPECT_THROW(read_map(bad), InvalidMap);
  std::istringstream junk("not json\n");
  EXPECT_THROW(read_map(junk), ParseError);
}

}  // namespace
}  // namespace scenmon
