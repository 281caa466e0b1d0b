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

#include <string>
#include <vector>

#include "scenmon/params.hpp"
#include "scenmon/stl/atoms.hpp"
#include "scenmon/stl/formula.hpp"

namespace scenmon
{

/// ISO34502-STL and its two relaxations.
enum class SpecVariant { kBase, kExtA, kExt };

const char * to_string(SpecVariant variant);
/// Accepts "ISO34502-STL", "ISO34502-STL-extA", "ISO34502-STL-ext" and the
/// short forms "base", "extA", "ext". Throws ConfigError.
SpecVariant variant_from_string(const std::string & text);

struct SpecSet
{
  SpecVariant variant = SpecVariant::kBase;
  std::vector<int> indices;  ///< scenario numbers in 1..24

  /// Throws ConfigError on an empty or out-of-range index set.
  void validate() const;
};

/// Role names used when building scenario formulas; they are bound to trace
/// ids through EvalContext::bindings.
struct ScenarioRoles
{
  std::string sv = "SV";
  std::vector<std::string> povs = {"POV"};
  std::string lane = "L";
};

namespace scenarios
{

using stl::AtomArg;
using stl::Formula;

Formula atLane(const AtomArg & a, const AtomArg & lane);
Formula aheadOf(const AtomArg & a, const AtomArg & b);
Formula aheadOf_ext(const AtomArg & a, const AtomArg & b);
Formula fasterThan(const AtomArg & a, const AtomArg & b);
Formula sameLane(const AtomArg & a, const AtomArg & b, const AtomArg & lane);
Formula inAdjLanes(const AtomArg & a, const AtomArg & b, const AtomArg & lane);
Formula sameLane3(const AtomArg & a, const AtomArg & b, const AtomArg & c, const AtomArg & lane);
Formula laneKeep(const AtomArg & a, const AtomArg & lane);
Formula leavingLane(const AtomArg & a, const AtomArg & lane);
Formula enteringLane(const AtomArg & a, const AtomArg & lane);

Formula mainRoad(const AtomArg & sv, const AtomArg & pov);
Formula mergeZone(const AtomArg & sv, const AtomArg & pov);
Formula departZone(const AtomArg & sv, const AtomArg & pov);

Formula rssViolation(const AtomArg & a, const AtomArg & b);
Formula instSafe(const AtomArg & a, const AtomArg & b);
Formula danger(const AtomArg & sv, const AtomArg & pov, const ScenarioParams & params);
Formula initSafe(const AtomArg & sv, const AtomArg & pov, const ScenarioParams & params);

Formula cutIn(
  const AtomArg & pov, const AtomArg & sv, const AtomArg & lane, const ScenarioParams & params);
/// cutIn without the aheadOf conjunct.
Formula cutIn_ext(
  const AtomArg & pov, const AtomArg & sv, const AtomArg & lane, const ScenarioParams & params);
Formula cutOut(
  const AtomArg & pov, const AtomArg & sv, const AtomArg & lane, const ScenarioParams & params);

Formula accel(const AtomArg & pov, const AtomArg & sv, const AtomArg & lane);
Formula decel(const AtomArg & pov, const AtomArg & sv, const AtomArg & lane);
Formula accel_ext(const AtomArg & pov, const AtomArg & sv, const AtomArg & lane);
Formula decel_ext(const AtomArg & pov, const AtomArg & sv, const AtomArg & lane);

Formula danger_arises(const AtomArg & sv, const AtomArg & pov, const ScenarioParams & params);

}  // namespace scenarios

/// Number of POVs a scenario takes: 2 for scenario 2 (and 10, 18), else 1.
std::size_t pov_count(int index);

/// The scenario formula in compact form: derived atoms such as danger,
/// cutIn or initSafe appear by name and expand at bind time with the
/// context's ScenarioParams. Throws ArityMismatch on a wrong POV count and
/// ConfigError on an index outside 1..24.
stl::Formula scenario(int index, SpecVariant variant, const ScenarioRoles & roles = {});

/// Same scenario with every derived atom expanded for the given parameters.
stl::Formula scenario_expanded(
  int index, SpecVariant variant, const ScenarioRoles & roles, const ScenarioParams & params);

/// Compact dangerArises(SV, POV) formula.
stl::Formula danger_arises(const std::string & sv = "SV", const std::string & pov = "POV");

/// The road sector name of a scenario: mainRoad, mergeZone or departZone.
const char * road_sector_name(int index);

/// Registers the derived scenario atoms (sameLane, danger, cutIn, ...).
void register_scenario_atoms(stl::AtomRegistry & registry);

}  // namespace scenmon
