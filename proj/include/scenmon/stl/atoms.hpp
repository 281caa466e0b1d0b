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

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "scenmon/stl/context.hpp"
#include "scenmon/stl/formula.hpp"

namespace scenmon::stl
{

enum class ArgKind { kVehicle, kLane, kNumber };

const char * to_string(ArgKind kind);

struct ResolvedArg
{
  ArgKind kind = ArgKind::kNumber;
  std::string id;  ///< vehicle or lane id
  double number = 0.0;
};

/// View handed to margin functions: resolved arguments plus the context.
class AtomInputs
{
public:
  AtomInputs(const EvalContext & ctx, const std::vector<ResolvedArg> & args);

  const EvalContext & ctx() const { return ctx_; }
  const Trace & trace() const { return *ctx_.trace; }
  const RoadNetwork & road() const { return *ctx_.road; }
  const RssParams & rss() const { return ctx_.rss; }

  const VehicleState & state(std::size_t arg, std::size_t sample) const;
  const VehicleDims & dims(std::size_t arg) const;
  bool present(std::size_t arg, std::size_t sample) const;
  const LaneId & lane(std::size_t arg) const { return args_[arg].id; }
  double number(std::size_t arg) const { return args_[arg].number; }
  const std::vector<ResolvedArg> & args() const { return args_; }

private:
  const EvalContext & ctx_;
  const std::vector<ResolvedArg> & args_;
  std::vector<const VehicleTrack *> tracks_;
};

/// A predicate read as `margin > 0` (strict) or `margin >= 0`. The margin is
/// also its robust value. Margins are evaluated per sample and held between
/// samples; a sample where any vehicle argument is absent reads -inf.
struct PrimitiveAtom
{
  std::string name;
  std::vector<ArgKind> params;
  bool strict = true;
  std::string description;
  std::function<double(const AtomInputs &, std::size_t sample)> margin;
};

/// A named formula template expanded at bind time. Arguments are passed
/// through unresolved so the expansion binds like user-written atoms.
struct MacroAtom
{
  std::string name;
  std::vector<ArgKind> params;
  std::string description;
  std::function<Formula(const std::vector<AtomArg> &, const EvalContext &)> expand;
};

class AtomRegistry
{
public:
  void add(PrimitiveAtom atom);
  void add(MacroAtom atom);

  const PrimitiveAtom * primitive(const std::string & name) const;
  const MacroAtom * macro(const std::string & name) const;
  bool contains(const std::string & name) const;

  /// All registered names, sorted.
  std::vector<std::string> names() const;

  const std::map<std::string, PrimitiveAtom> & primitives() const { return primitives_; }
  const std::map<std::string, MacroAtom> & macros() const { return macros_; }

private:
  std::map<std::string, PrimitiveAtom> primitives_;
  std::map<std::string, MacroAtom> macros_;
};

/// Vehicle kinematics, position relations and road occupancy atoms.
void register_kinematic_atoms(AtomRegistry & registry);

/// Kinematic, RSS and scenario atoms together.
const AtomRegistry & standard_registry();

/// Human-readable signature such as "aheadOf(vehicle, vehicle)".
std::string signature(const std::string & name, const std::vector<ArgKind> & params);

}  // namespace scenmon::stl
