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

#include "scenmon/scenarios.hpp"

#include "scenmon/errors.hpp"
#include "scenmon/rss.hpp"
#include "scenmon/stl/monitor.hpp"

namespace scenmon
{

const char * to_string(SpecVariant variant)
{
  switch (variant) {
    case SpecVariant::kBase:
      return "ISO34502-STL";
    case SpecVariant::kExtA:
      return "ISO34502-STL-extA";
    case SpecVariant::kExt:
      return "ISO34502-STL-ext";
  }
  return "?";
}

SpecVariant variant_from_string(const std::string & text)
{
  if (text == "ISO34502-STL" || text == "base") {
    return SpecVariant::kBase;
  }
  if (text == "ISO34502-STL-extA" || text == "extA") {
    return SpecVariant::kExtA;
  }
  if (text == "ISO34502-STL-ext" || text == "ext") {
    return SpecVariant::kExt;
  }
  throw ConfigError("unknown spec set '" + text + "'");
}

void SpecSet::validate() const
{
  if (indices.empty()) {
    throw ConfigError("scenario index set is empty");
  }
  for (int i : indices) {
    if (i < 1 || i > 24) {
      throw ConfigError("scenario index " + std::to_string(i) + " outside 1..24");
    }
  }
}

namespace scenarios
{

namespace
{

Formula at(const char * name, std::vector<AtomArg> args) { return Formula::atom(name, std::move(args)); }

}  // namespace

Formula atLane(const AtomArg & a, const AtomArg & lane) { return at("atLane", {a, lane}); }
Formula aheadOf(const AtomArg & a, const AtomArg & b) { return at("aheadOf", {a, b}); }
Formula aheadOf_ext(const AtomArg & a, const AtomArg & b) { return at("aheadOf_ext", {a, b}); }
Formula fasterThan(const AtomArg & a, const AtomArg & b) { return at("fasterThan", {a, b}); }

Formula sameLane(const AtomArg & a, const AtomArg & b, const AtomArg & lane)
{
  return atLane(a, lane) & atLane(b, lane);
}

Formula inAdjLanes(const AtomArg & a, const AtomArg & b, const AtomArg & lane)
{
  return atLane(a, lane) & at("atAdjLane", {b, lane});
}

Formula sameLane3(const AtomArg & a, const AtomArg & b, const AtomArg & c, const AtomArg & lane)
{
  return at("sameLane", {a, b, lane}) & at("sameLane", {b, c, lane});
}

Formula laneKeep(const AtomArg & a, const AtomArg & lane) { return atLane(a, lane); }

Formula leavingLane(const AtomArg & a, const AtomArg & lane)
{
  return atLane(a, lane) & Formula::finally(!atLane(a, lane));
}

Formula enteringLane(const AtomArg & a, const AtomArg & lane)
{
  return (!atLane(a, lane)) & Formula::finally(atLane(a, lane));
}

Formula mainRoad(const AtomArg & sv, const AtomArg & pov)
{
  return at("onMainRoad", {sv}) & at("onMainRoad", {pov});
}

Formula mergeZone(const AtomArg & sv, const AtomArg & pov)
{
  return at("inMergeZone", {sv}) | at("inMergeZone", {pov});
}

Formula departZone(const AtomArg & sv, const AtomArg & pov)
{
  return at("inDepartZone", {sv}) | at("inDepartZone", {pov});
}

Formula rssViolation(const AtomArg & a, const AtomArg & b) { return at("rssViolation", {a, b}); }

Formula instSafe(const AtomArg & a, const AtomArg & b) { return !rssViolation(a, b); }

Formula danger(const AtomArg & sv, const AtomArg & pov, const ScenarioParams & params)
{
  return Formula::globally(rssViolation(sv, pov), {0.0, params.min_danger});
}

Formula initSafe(const AtomArg & sv, const AtomArg & pov, const ScenarioParams & params)
{
  return Formula::globally(at("instSafe", {sv, pov}), {0.0, params.min_safe});
}

Formula cutIn(
  const AtomArg & pov, const AtomArg & sv, const AtomArg & lane, const ScenarioParams & params)
{
  const Formula merged = at("sameLane", {sv, pov, lane}) & aheadOf(sv, pov);
  return (!at("sameLane", {pov, sv, lane})) &
         Formula::finally(danger(sv, pov, params) & Formula::finally(merged, {0.0, params.min_danger}));
}

Formula cutIn_ext(
  const AtomArg & pov, const AtomArg & sv, const AtomArg & lane, const ScenarioParams & params)
{
  const Formula merged = at("sameLane", {sv, pov, lane});
  return (!at("sameLane", {pov, sv, lane})) &
         Formula::finally(danger(sv, pov, params) & Formula::finally(merged, {0.0, params.min_danger}));
}

Formula cutOut(
  const AtomArg & pov, const AtomArg & sv, const AtomArg & lane, const ScenarioParams & params)
{
  return at("sameLane", {pov, sv, lane}) &
         Formula::finally(
           danger(pov, sv, params) & Formula::finally(!atLane(pov, lane), {0.0, params.min_danger}));
}

Formula accel(const AtomArg & pov, const AtomArg & sv, const AtomArg & lane)
{
  return fasterThan(sv, pov) & at("laneKeep", {pov, lane});
}

Formula decel(const AtomArg & pov, const AtomArg & sv, const AtomArg & lane)
{
  return fasterThan(pov, sv) & at("laneKeep", {pov, lane});
}

Formula accel_ext(const AtomArg & pov, const AtomArg & sv, const AtomArg & lane)
{
  return (fasterThan(sv, pov) | at("accelerates", {pov})) & at("laneKeep", {pov, lane});
}

Formula decel_ext(const AtomArg & pov, const AtomArg & sv, const AtomArg & lane)
{
  return (fasterThan(pov, sv) | at("decelerates", {pov})) & at("laneKeep", {pov, lane});
}

Formula danger_arises(const AtomArg & sv, const AtomArg & pov, const ScenarioParams & params)
{
  return Formula::finally(initSafe(sv, pov, params) & Formula::finally(danger(sv, pov, params)));
}

}  // namespace scenarios

std::size_t pov_count(int index) { return ((index - 1) % 8) + 1 == 2 ? 2 : 1; }

const char * road_sector_name(int index)
{
  if (index <= 8) {
    return "mainRoad";
  }
  return index <= 16 ? "mergeZone" : "departZone";
}

namespace
{

using stl::AtomArg;
using stl::Formula;

Formula ref(const char * name, std::vector<AtomArg> args) { return Formula::atom(name, std::move(args)); }

struct Disturb
{
  Formula initial;
  Formula behaviour_sv;
  Formula behaviour_pov;
};

Disturb disturb(int row, SpecVariant variant, const ScenarioRoles & r)
{
  const bool ext = variant == SpecVariant::kExt;
  const bool relaxed = variant != SpecVariant::kBase;
  const char * ahead = ext ? "aheadOf_ext" : "aheadOf";
  const char * accel = relaxed ? "accel_ext" : "accel";
  const char * decel = relaxed ? "decel_ext" : "decel";
  const char * cut_in = ext ? "cutIn_ext" : "cutIn";

  const AtomArg sv = r.sv;
  const AtomArg lane = r.lane;
  const AtomArg pov = r.povs.front();
  const Formula danger = ref("danger", {sv, pov});
  const Formula keep = ref("laneKeep", {sv, lane});
  const Formula near = ref("sameLane", {sv, pov, lane}) | ref("inAdjLanes", {sv, pov, lane});

  switch (row) {
    case 1:
      return {Formula::top(), Formula::until(keep, danger), ref(cut_in, {pov, sv, lane})};
    case 2: {
      const AtomArg pov1 = r.povs[0];
      const AtomArg pov2 = r.povs[1];
      const Formula initial = ref("sameLane3", {sv, pov1, pov2, lane}) & ref(ahead, {sv, pov1}) &
                              ref(ahead, {pov1, pov2});
      const Formula sv_part = Formula::until(keep, !ref("sameLane", {sv, pov1, lane}));
      const Formula pov_part =
        ref("leavingLane", {pov1, lane}) &
        Formula::until(ref("laneKeep", {pov2, lane}),
          (!ref("sameLane", {pov2, pov1, lane})) & ref("danger", {sv, pov2}));
      return {initial, sv_part, pov_part};
    }
    case 3:
      return {ref(ahead, {pov, sv}) & near, Formula::until(keep, danger),
        Formula::until(ref(accel, {pov, sv, lane}), danger)};
    case 4:
      return {ref(ahead, {sv, pov}) & near, Formula::until(keep, danger),
        Formula::until(ref(decel, {pov, sv, lane}), danger)};
    case 5:
      return {Formula::top(), ref("leavingLane", {sv, lane}), ref(cut_in, {pov, sv, lane})};
    case 6:
      return {Formula::top(), ref("leavingLane", {sv, lane}), ref("cutOut", {pov, sv, lane})};
    case 7:
      return {ref(ahead, {pov, sv}), ref("enteringLane", {sv, lane}),
        Formula::until(ref(accel, {pov, sv, lane}), danger)};
    case 8:
      return {ref("sameLane", {sv, pov, lane}) & ref(ahead, {sv, pov}), ref("leavingLane", {sv, lane}),
        Formula::until(ref(decel, {pov, sv, lane}), danger)};
    default:
      break;
  }
  throw InternalError("bad scenario row");
}

}  // namespace

Formula scenario(int index, SpecVariant variant, const ScenarioRoles & roles)
{
  if (index < 1 || index > 24) {
    throw ConfigError("scenario index " + std::to_string(index) + " outside 1..24");
  }
  if (roles.povs.size() != pov_count(index)) {
    throw ArityMismatch(
      "scenario " + std::to_string(index) + " takes " + std::to_string(pov_count(index)) +
      " POV(s), got " + std::to_string(roles.povs.size()));
  }
  const int row = (index - 1) % 8 + 1;
  // The danger of scenario 2 is between SV and POV2, so the pair-level parts
  // refer to POV2.
  const AtomArg sv = roles.sv;
  const AtomArg pov = roles.povs.back();
  const Disturb d = disturb(row, variant, roles);
  return ref("initSafe", {sv, pov}) & ref(road_sector_name(index), {sv, pov}) &
         (d.initial & d.behaviour_sv & d.behaviour_pov);
}

Formula scenario_expanded(
  int index, SpecVariant variant, const ScenarioRoles & roles, const ScenarioParams & params)
{
  stl::EvalContext ctx;
  ctx.scenario = params;
  return stl::expand_macros(scenario(index, variant, roles), ctx);
}

Formula danger_arises(const std::string & sv, const std::string & pov)
{
  return ref("dangerArises", {sv, pov});
}

namespace
{

using stl::ArgKind;
using Args = std::vector<AtomArg>;

constexpr ArgKind V = ArgKind::kVehicle;
constexpr ArgKind L = ArgKind::kLane;

template <class Fn>
stl::MacroAtom plain(const char * name, std::vector<ArgKind> params, const char * what, Fn fn)
{
  return stl::MacroAtom{name, std::move(params), what,
    [fn](const Args & a, const stl::EvalContext &) { return fn(a); }};
}

template <class Fn>
stl::MacroAtom timed(const char * name, std::vector<ArgKind> params, const char * what, Fn fn)
{
  return stl::MacroAtom{name, std::move(params), what,
    [fn](const Args & a, const stl::EvalContext & ctx) { return fn(a, ctx.scenario); }};
}

}  // namespace

void register_scenario_atoms(stl::AtomRegistry & reg)
{
  namespace sc = scenarios;
  using P = ScenarioParams;
  reg.add(plain("sameLane", {V, V, L}, "atLane(a,L) & atLane(b,L)",
    [](const Args & a) { return sc::sameLane(a[0], a[1], a[2]); }));
  reg.add(plain("inAdjLanes", {V, V, L}, "a in L and b in a lane adjacent to L",
    [](const Args & a) { return sc::inAdjLanes(a[0], a[1], a[2]); }));
  reg.add(plain("sameLane3", {V, V, V, L}, "sameLane(a,b,L) & sameLane(b,c,L)",
    [](const Args & a) { return sc::sameLane3(a[0], a[1], a[2], a[3]); }));
  reg.add(plain("laneKeep", {V, L}, "atLane(a,L)",
    [](const Args & a) { return sc::laneKeep(a[0], a[1]); }));
  reg.add(plain("leavingLane", {V, L}, "atLane(a,L) & F !atLane(a,L)",
    [](const Args & a) { return sc::leavingLane(a[0], a[1]); }));
  reg.add(plain("enteringLane", {V, L}, "!atLane(a,L) & F atLane(a,L)",
    [](const Args & a) { return sc::enteringLane(a[0], a[1]); }));
  reg.add(plain("mainRoad", {V, V}, "both vehicles on the main road",
    [](const Args & a) { return sc::mainRoad(a[0], a[1]); }));
  reg.add(plain("mergeZone", {V, V}, "either vehicle in a merge zone",
    [](const Args & a) { return sc::mergeZone(a[0], a[1]); }));
  reg.add(plain("departZone", {V, V}, "either vehicle in a depart zone",
    [](const Args & a) { return sc::departZone(a[0], a[1]); }));
  reg.add(plain("instSafe", {V, V}, "!rssViolation(a,b)",
    [](const Args & a) { return sc::instSafe(a[0], a[1]); }));
  reg.add(plain("accel", {V, V, L}, "fasterThan(SV,POV) & laneKeep(POV,L)",
    [](const Args & a) { return sc::accel(a[0], a[1], a[2]); }));
  reg.add(plain("decel", {V, V, L}, "fasterThan(POV,SV) & laneKeep(POV,L)",
    [](const Args & a) { return sc::decel(a[0], a[1], a[2]); }));
  reg.add(plain("accel_ext", {V, V, L}, "accel, or POV accelerating, while keeping L",
    [](const Args & a) { return sc::accel_ext(a[0], a[1], a[2]); }));
  reg.add(plain("decel_ext", {V, V, L}, "decel, or POV decelerating, while keeping L",
    [](const Args & a) { return sc::decel_ext(a[0], a[1], a[2]); }));

  reg.add(timed("danger", {V, V}, "G[0,min_danger] rssViolation(SV,POV)",
    [](const Args & a, const P & p) { return sc::danger(a[0], a[1], p); }));
  reg.add(timed("initSafe", {V, V}, "G[0,min_safe] instSafe(SV,POV)",
    [](const Args & a, const P & p) { return sc::initSafe(a[0], a[1], p); }));
  reg.add(timed("cutIn", {V, V, L}, "POV enters SV's lane ahead of SV, causing danger",
    [](const Args & a, const P & p) { return sc::cutIn(a[0], a[1], a[2], p); }));
  reg.add(timed("cutIn_ext", {V, V, L}, "POV enters SV's lane, causing danger",
    [](const Args & a, const P & p) { return sc::cutIn_ext(a[0], a[1], a[2], p); }));
  reg.add(timed("cutOut", {V, V, L}, "POV leaves SV's lane, causing danger",
    [](const Args & a, const P & p) { return sc::cutOut(a[0], a[1], a[2], p); }));
  reg.add(timed("dangerArises", {V, V}, "F(initSafe(SV,POV) & F danger(SV,POV))",
    [](const Args & a, const P & p) { return sc::danger_arises(a[0], a[1], p); }));
}

const stl::AtomRegistry & stl::standard_registry()
{
  static const AtomRegistry registry = [] {
    AtomRegistry r;
    register_kinematic_atoms(r);
    register_rss_atoms(r);
    register_scenario_atoms(r);
    return r;
  }();
  return registry;
}

}  // namespace scenmon
