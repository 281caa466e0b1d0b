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

#include "scenmon/road.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "scenmon/errors.hpp"

namespace scenmon
{

namespace
{

constexpr double kBoundaryTolerance = 1e-6;

double overlap(double lo1, double hi1, double lo2, double hi2)
{
  return std::min(hi1, hi2) - std::max(lo1, lo2);
}

}  // namespace

const char * to_string(Zone zone)
{
  switch (zone) {
    case Zone::kMainZone:
      return "mainZone";
    case Zone::kMergeZone:
      return "mergeZone";
    case Zone::kDepartZone:
      return "departZone";
  }
  return "?";
}

const char * to_string(LaneAttr attr)
{
  switch (attr) {
    case LaneAttr::kMain:
      return "main";
    case LaneAttr::kMerge:
      return "merge";
    case LaneAttr::kDeparture:
      return "departure";
  }
  return "?";
}

Zone zone_from_string(const std::string & text)
{
  if (text == "mainZone" || text == "mainRoad") {
    return Zone::kMainZone;
  }
  if (text == "mergeZone") {
    return Zone::kMergeZone;
  }
  if (text == "departZone") {
    return Zone::kDepartZone;
  }
  throw InvalidMap("unknown zone '" + text + "'");
}

LaneAttr attr_from_string(const std::string & text)
{
  if (text == "main") {
    return LaneAttr::kMain;
  }
  if (text == "merge") {
    return LaneAttr::kMerge;
  }
  if (text == "departure") {
    return LaneAttr::kDeparture;
  }
  throw InvalidMap("unknown lanelet attribute '" + text + "'");
}

Footprint footprint(const VehicleState & state, const VehicleDims & dims)
{
  return {state.s - dims.length, state.s, state.d - dims.width, state.d};
}

double occupancy_margin(const Footprint & fp, const Lanelet & lanelet)
{
  return std::min(
    overlap(fp.s_lo, fp.s_hi, lanelet.s_min, lanelet.s_max),
    overlap(fp.d_lo, fp.d_hi, lanelet.d_right, lanelet.d_left));
}

bool occ(const Footprint & fp, const Lanelet & lanelet) { return occupancy_margin(fp, lanelet) > 0.0; }

bool left_adjacent(const Lanelet & left, const Lanelet & right)
{
  return overlap(left.s_min, left.s_max, right.s_min, right.s_max) > 0.0 &&
         std::abs(left.d_right - right.d_left) <= kBoundaryTolerance;
}

const Lanelet & RoadNetwork::lanelet(const LaneletId & id) const
{
  auto it = lanelets_.find(id);
  if (it == lanelets_.end()) {
    throw InvalidMap("unknown lanelet '" + id + "'");
  }
  return it->second;
}

const Lane & RoadNetwork::lane(const LaneId & id) const
{
  auto it = lanes_.find(id);
  if (it == lanes_.end()) {
    throw InvalidMap("unknown lane '" + id + "'");
  }
  return it->second;
}

const LaneId & RoadNetwork::lane_of(const LaneletId & id) const
{
  auto it = lane_of_.find(id);
  if (it == lane_of_.end()) {
    throw InvalidMap("unknown lanelet '" + id + "'");
  }
  return it->second;
}

const std::set<LaneId> & RoadNetwork::adjacent_lanes(const LaneId & id) const
{
  static const std::set<LaneId> kEmpty;
  auto it = adjacency_.find(id);
  return it == adjacency_.end() ? kEmpty : it->second;
}

double RoadNetwork::at_lane_margin(const Footprint & fp, const LaneId & id) const
{
  double best = -kInfinity;
  for (const auto & ll : lane(id).lanelets) {
    best = std::max(best, occupancy_margin(fp, lanelets_.at(ll)));
  }
  return best;
}

bool RoadNetwork::at_lane(const Footprint & fp, const LaneId & id) const
{
  return at_lane_margin(fp, id) > 0.0;
}

double RoadNetwork::zone_margin(const Footprint & fp, Zone zone) const
{
  double best = -kInfinity;
  for (const auto & [id, ll] : lanelets_) {
    if (ll.zone == zone) {
      best = std::max(best, occupancy_margin(fp, ll));
    }
  }
  return best;
}

bool RoadNetwork::in_zone(const Footprint & fp, Zone zone) const { return zone_margin(fp, zone) > 0.0; }

std::optional<LaneId> RoadNetwork::primary_lane(const Footprint & fp) const
{
  std::optional<LaneId> best;
  double best_margin = 0.0;
  for (const auto & [id, lane] : lanes_) {
    const double m = at_lane_margin(fp, id);
    if (m > best_margin) {
      best_margin = m;
      best = id;
    }
  }
  return best;
}

RoadNetwork build_lanes(const std::vector<Lanelet> & lanelets)
{
  RoadNetwork net;
  for (const auto & ll : lanelets) {
    if (!(ll.d_right < ll.d_left) || !(ll.s_min < ll.s_max)) {
      throw InvalidMap("lanelet '" + ll.id + "' has a degenerate extent");
    }
    if (!net.lanelets_.emplace(ll.id, ll).second) {
      throw InvalidMap("duplicate lanelet id '" + ll.id + "'");
    }
  }

  // Resolve each link to a single predecessor/successor relation.
  std::map<LaneletId, LaneletId> next;
  std::map<LaneletId, LaneletId> prev;
  auto link = [&](const LaneletId & from, const LaneletId & to) {
    const Lanelet & a = net.lanelets_.at(from);
    const Lanelet & b = net.lanelets_.at(to);
    if (a.attr != b.attr) {
      throw InvalidChain(
        "lanelets '" + from + "' and '" + to + "' are linked but have different attributes");
    }
    auto [it_n, new_n] = next.emplace(from, to);
    if (!new_n && it_n->second != to) {
      throw DuplicateMembership("lanelet '" + from + "' has two successors");
    }
    auto [it_p, new_p] = prev.emplace(to, from);
    if (!new_p && it_p->second != from) {
      throw DuplicateMembership("lanelet '" + to + "' would join two lanes");
    }
  };
  for (const auto & [id, ll] : net.lanelets_) {
    for (const auto * ref : {&ll.pred, &ll.succ}) {
      if (*ref && net.lanelets_.count(**ref) == 0) {
        throw InvalidChain("lanelet '" + id + "' references unknown lanelet '" + **ref + "'");
      }
    }
    if (ll.succ) {
      link(id, *ll.succ);
    }
    if (ll.pred) {
      link(*ll.pred, id);
    }
  }

  for (const auto & [id, ll] : net.lanelets_) {
    if (prev.count(id) != 0) {
      continue;
    }
    Lane lane;
    lane.id = id;
    LaneletId cur = id;
    while (true) {
      if (net.lane_of_.count(cur) != 0) {
        throw DuplicateMembership("lanelet '" + cur + "' would join two lanes");
      }
      net.lane_of_[cur] = lane.id;
      lane.lanelets.push_back(cur);
      auto it = next.find(cur);
      if (it == next.end()) {
        break;
      }
      cur = it->second;
    }
    net.lanes_.emplace(lane.id, std::move(lane));
  }
  if (net.lane_of_.size() != net.lanelets_.size()) {
    throw InvalidChain("predecessor/successor links form a cycle");
  }

  for (const auto & [id1, l1] : net.lanelets_) {
    for (const auto & [id2, l2] : net.lanelets_) {
      const LaneId & lane1 = net.lane_of_.at(id1);
      const LaneId & lane2 = net.lane_of_.at(id2);
      if (lane1 == lane2 || !left_adjacent(l1, l2)) {
        continue;
      }
      net.adjacency_[lane1].insert(lane2);
      net.adjacency_[lane2].insert(lane1);
    }
  }
  return net;
}

namespace
{

Lanelet lanelet_from_json(const nlohmann::json & j)
{
  for (const char * key : {"id", "zone", "attr", "s_min", "s_max", "d_right", "d_left"}) {
    if (!j.contains(key)) {
      throw InvalidMap(std::string("map entry lacks key '") + key + "'");
    }
  }
  Lanelet ll;
  ll.id = j.at("id").get<std::string>();
  ll.zone = zone_from_string(j.at("zone").get<std::string>());
  ll.attr = attr_from_string(j.at("attr").get<std::string>());
  ll.s_min = j.at("s_min").get<double>();
  ll.s_max = j.at("s_max").get<double>();
  ll.d_right = j.at("d_right").get<double>();
  ll.d_left = j.at("d_left").get<double>();
  if (j.contains("pred") && !j.at("pred").is_null()) {
    ll.pred = j.at("pred").get<std::string>();
  }
  if (j.contains("succ") && !j.at("succ").is_null()) {
    ll.succ = j.at("succ").get<std::string>();
  }
  return ll;
}

}  // namespace

std::vector<Lanelet> read_map(std::istream & in)
{
  std::vector<Lanelet> out;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    try {
      out.push_back(lanelet_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception & e) {
      throw ParseError(std::string("malformed map entry: ") + e.what(), row);
    }
  }
  return out;
}

std::vector<Lanelet> read_map_file(const std::string & path)
{
  std::ifstream in(path);
  if (!in) {
    throw InvalidMap("cannot open map file '" + path + "'");
  }
  return read_map(in);
}

void write_map(std::ostream & out, const std::vector<Lanelet> & lanelets)
{
  for (const auto & ll : lanelets) {
    nlohmann::ordered_json j;
    j["id"] = ll.id;
    j["zone"] = to_string(ll.zone);
    j["attr"] = to_string(ll.attr);
    j["s_min"] = ll.s_min;
    j["s_max"] = ll.s_max;
    j["d_right"] = ll.d_right;
    j["d_left"] = ll.d_left;
    j["pred"] = ll.pred ? nlohmann::ordered_json(*ll.pred) : nlohmann::ordered_json(nullptr);
    j["succ"] = ll.succ ? nlohmann::ordered_json(*ll.succ) : nlohmann::ordered_json(nullptr);
    out << j.dump() << '\n';
  }
}

std::vector<Lanelet> lanelets_of(const RoadNetwork & road)
{
  std::vector<Lanelet> out;
  for (const auto & [id, ll] : road.lanelets()) {
    out.push_back(ll);
  }
  return out;
}

RoadNetwork straight_road(int lane_count, double lane_width, double s_min, double s_max, Zone zone)
{
  std::vector<Lanelet> lls;
  for (int j = 0; j < lane_count; ++j) {
    Lanelet ll;
    ll.id = "lane" + std::to_string(j);
    ll.zone = zone;
    ll.s_min = s_min;
    ll.s_max = s_max;
    ll.d_right = j * lane_width;
    ll.d_left = (j + 1) * lane_width;
    lls.push_back(ll);
  }
  return build_lanes(lls);
}

}  // namespace scenmon
