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

#include "scenmon/stl/atoms.hpp"

#include <algorithm>

#include "scenmon/errors.hpp"

namespace scenmon::stl
{

VehicleId EvalContext::resolve_vehicle(const std::string & name) const
{
  auto it = bindings.find(name);
  const std::string & id = it != bindings.end() ? it->second : name;
  if (trace && trace->has_vehicle(id)) {
    return id;
  }
  if (it != bindings.end()) {
    throw UnboundName("name '" + name + "' is bound to '" + id + "', which is not a vehicle of the trace");
  }
  throw UnboundName("no vehicle bound to name '" + name + "'");
}

LaneId EvalContext::resolve_lane(const std::string & name) const
{
  auto it = bindings.find(name);
  const std::string & id = it != bindings.end() ? it->second : name;
  if (road && road->has_lane(id)) {
    return id;
  }
  if (it != bindings.end()) {
    throw UnboundName("name '" + name + "' is bound to '" + id + "', which is not a lane of the road");
  }
  throw UnboundName("no lane bound to name '" + name + "'");
}

const char * to_string(ArgKind kind)
{
  switch (kind) {
    case ArgKind::kVehicle:
      return "vehicle";
    case ArgKind::kLane:
      return "lane";
    case ArgKind::kNumber:
      return "number";
  }
  return "?";
}

std::string signature(const std::string & name, const std::vector<ArgKind> & params)
{
  std::string out = name + "(";
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i > 0) {
      out += ", ";
    }
    out += to_string(params[i]);
  }
  return out + ")";
}

AtomInputs::AtomInputs(const EvalContext & ctx, const std::vector<ResolvedArg> & args)
: ctx_(ctx), args_(args), tracks_(args.size(), nullptr)
{
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i].kind == ArgKind::kVehicle) {
      tracks_[i] = &ctx.trace->track(args[i].id);
    }
  }
}

const VehicleState & AtomInputs::state(std::size_t arg, std::size_t sample) const
{
  return tracks_[arg]->states[sample];
}

const VehicleDims & AtomInputs::dims(std::size_t arg) const { return tracks_[arg]->dims; }

bool AtomInputs::present(std::size_t arg, std::size_t sample) const
{
  return tracks_[arg]->present[sample];
}

void AtomRegistry::add(PrimitiveAtom atom)
{
  macros_.erase(atom.name);
  std::string name = atom.name;
  primitives_[name] = std::move(atom);
}

void AtomRegistry::add(MacroAtom atom)
{
  primitives_.erase(atom.name);
  std::string name = atom.name;
  macros_[name] = std::move(atom);
}

const PrimitiveAtom * AtomRegistry::primitive(const std::string & name) const
{
  auto it = primitives_.find(name);
  return it == primitives_.end() ? nullptr : &it->second;
}

const MacroAtom * AtomRegistry::macro(const std::string & name) const
{
  auto it = macros_.find(name);
  return it == macros_.end() ? nullptr : &it->second;
}

bool AtomRegistry::contains(const std::string & name) const
{
  return primitives_.count(name) != 0 || macros_.count(name) != 0;
}

std::vector<std::string> AtomRegistry::names() const
{
  std::vector<std::string> out;
  for (const auto & [name, atom] : primitives_) {
    out.push_back(name);
  }
  for (const auto & [name, atom] : macros_) {
    out.push_back(name);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace
{

using Channel = double (*)(const AtomInputs &, std::size_t arg, std::size_t k);

double ch_s(const AtomInputs & in, std::size_t i, std::size_t k) { return in.state(i, k).s; }
double ch_v(const AtomInputs & in, std::size_t i, std::size_t k) { return in.state(i, k).v; }
double ch_a(const AtomInputs & in, std::size_t i, std::size_t k) { return in.state(i, k).a; }
double ch_d(const AtomInputs & in, std::size_t i, std::size_t k) { return in.state(i, k).d; }
double ch_theta(const AtomInputs & in, std::size_t i, std::size_t k) { return in.state(i, k).theta; }
double ch_v_lon(const AtomInputs & in, std::size_t i, std::size_t k)
{
  return longitudinal_lateral_velocity(in.state(i, k), in.ctx().angle).lon;
}
double ch_v_lat(const AtomInputs & in, std::size_t i, std::size_t k)
{
  return longitudinal_lateral_velocity(in.state(i, k), in.ctx().angle).lat;
}
double ch_front(const AtomInputs & in, std::size_t i, std::size_t k)
{
  return front_rear(in.state(i, k), in.dims(i)).front;
}
double ch_rear(const AtomInputs & in, std::size_t i, std::size_t k)
{
  return front_rear(in.state(i, k), in.dims(i)).rear;
}

Footprint fp(const AtomInputs & in, std::size_t i, std::size_t k)
{
  return footprint(in.state(i, k), in.dims(i));
}

void add_channel(AtomRegistry & reg, const std::string & name, Channel ch, const std::string & what)
{
  const std::vector<ArgKind> one = {ArgKind::kVehicle};
  const std::vector<ArgKind> cmp = {ArgKind::kVehicle, ArgKind::kNumber};
  reg.add(PrimitiveAtom{name, one, true, what + " of the vehicle; compare with > c, < c",
    [ch](const AtomInputs & in, std::size_t k) { return ch(in, 0, k); }});
  reg.add(PrimitiveAtom{name + "_gt", cmp, true, what + " greater than the constant",
    [ch](const AtomInputs & in, std::size_t k) { return ch(in, 0, k) - in.number(1); }});
  reg.add(PrimitiveAtom{name + "_lt", cmp, true, what + " less than the constant",
    [ch](const AtomInputs & in, std::size_t k) { return in.number(1) - ch(in, 0, k); }});
}

}  // namespace

void register_kinematic_atoms(AtomRegistry & reg)
{
  add_channel(reg, "s", ch_s, "longitudinal position");
  add_channel(reg, "v", ch_v, "speed");
  add_channel(reg, "a", ch_a, "acceleration");
  add_channel(reg, "d", ch_d, "lateral offset");
  add_channel(reg, "theta", ch_theta, "heading relative to the path");
  add_channel(reg, "v_lon", ch_v_lon, "longitudinal velocity");
  add_channel(reg, "v_lat", ch_v_lat, "lateral velocity");
  add_channel(reg, "front", ch_front, "front position");
  add_channel(reg, "rear", ch_rear, "rear position");

  const std::vector<ArgKind> vv = {ArgKind::kVehicle, ArgKind::kVehicle};
  const std::vector<ArgKind> vl = {ArgKind::kVehicle, ArgKind::kLane};
  const std::vector<ArgKind> v1 = {ArgKind::kVehicle};

  reg.add(PrimitiveAtom{"aheadOf", vv, false, "front(a) <= rear(b)",
    [](const AtomInputs & in, std::size_t k) { return ch_rear(in, 1, k) - ch_front(in, 0, k); }});
  reg.add(PrimitiveAtom{"aheadOf_ext", vv, true, "front(a) < front(b)",
    [](const AtomInputs & in, std::size_t k) { return ch_front(in, 1, k) - ch_front(in, 0, k); }});
  reg.add(PrimitiveAtom{"fasterThan", vv, true, "v_a < v_b",
    [](const AtomInputs & in, std::size_t k) { return ch_v(in, 1, k) - ch_v(in, 0, k); }});
  reg.add(PrimitiveAtom{"accelerates", v1, true, "a > 0",
    [](const AtomInputs & in, std::size_t k) { return ch_a(in, 0, k); }});
  reg.add(PrimitiveAtom{"decelerates", v1, true, "a < 0",
    [](const AtomInputs & in, std::size_t k) { return -ch_a(in, 0, k); }});

  reg.add(PrimitiveAtom{"atLane", vl, true, "vehicle box overlaps some lanelet of the lane",
    [](const AtomInputs & in, std::size_t k) {
      return in.road().at_lane_margin(fp(in, 0, k), in.lane(1));
    }});
  reg.add(PrimitiveAtom{"atAdjLane", vl, true, "vehicle occupies some lane adjacent to the lane",
    [](const AtomInputs & in, std::size_t k) {
      const Footprint f = fp(in, 0, k);
      double best = -kInfinity;
      for (const auto & other : in.road().adjacent_lanes(in.lane(1))) {
        best = std::max(best, in.road().at_lane_margin(f, other));
      }
      return best;
    }});
  reg.add(PrimitiveAtom{"onMainRoad", v1, true, "vehicle occupies a main-zone lanelet",
    [](const AtomInputs & in, std::size_t k) {
      return in.road().zone_margin(fp(in, 0, k), Zone::kMainZone);
    }});
  reg.add(PrimitiveAtom{"inMergeZone", v1, true, "vehicle occupies a merge-zone lanelet",
    [](const AtomInputs & in, std::size_t k) {
      return in.road().zone_margin(fp(in, 0, k), Zone::kMergeZone);
    }});
  reg.add(PrimitiveAtom{"inDepartZone", v1, true, "vehicle occupies a depart-zone lanelet",
    [](const AtomInputs & in, std::size_t k) {
      return in.road().zone_margin(fp(in, 0, k), Zone::kDepartZone);
    }});
}

}  // namespace scenmon::stl
