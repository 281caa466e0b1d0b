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

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace scenmon
{

using VehicleId = std::string;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Closed time interval [lo, hi]; hi may be +inf.
struct TimeInterval
{
  double lo = 0.0;
  double hi = kInfinity;

  bool unbounded() const { return hi == kInfinity; }
  bool contains(double t) const { return t >= lo && t <= hi; }
  bool operator==(const TimeInterval &) const = default;
};

/// Curvilinear point-mass state of the tracked front-left corner.
struct VehicleState
{
  double s = 0.0;      ///< longitudinal position along the reference path [m]
  double v = 0.0;      ///< speed [m/s]
  double a = 0.0;      ///< acceleration [m/s^2]
  double d = 0.0;      ///< lateral offset, increasing leftward [m]
  double theta = 0.0;  ///< heading relative to the reference path [rad]

  bool operator==(const VehicleState &) const = default;
};

struct VehicleDims
{
  double length = 4.5;
  double width = 1.8;

  bool operator==(const VehicleDims &) const = default;
};

enum class InterpolationMode { kStepHold, kLinear };

/// How heading maps to longitudinal/lateral velocity. kPathAligned: theta = 0
/// means moving along the path (v_lon = v cos theta). kLiteral swaps sin/cos.
enum class AngleConvention { kPathAligned, kLiteral };

struct VelocityComponents
{
  double lon = 0.0;
  double lat = 0.0;
};

VelocityComponents longitudinal_lateral_velocity(
  const VehicleState & state, AngleConvention convention = AngleConvention::kPathAligned);

struct Extent
{
  double front = 0.0;
  double rear = 0.0;
};

Extent front_rear(const VehicleState & state, const VehicleDims & dims);

struct VehicleTrack
{
  VehicleDims dims;
  std::vector<VehicleState> states;  ///< one per sample; ignored where absent
  std::vector<bool> present;         ///< presence flag per sample
};

/// Multi-vehicle signal sampled on a strictly increasing time grid.
///
/// Immutable after construction. The domain is [sample_times.front(),
/// sample_times.back()].
class Trace
{
public:
  Trace() = default;
  Trace(std::vector<double> sample_times, std::map<VehicleId, VehicleTrack> vehicles);

  const std::vector<double> & sample_times() const { return sample_times_; }
  const std::map<VehicleId, VehicleTrack> & vehicles() const { return vehicles_; }
  TimeInterval domain() const { return {sample_times_.front(), sample_times_.back()}; }
  std::size_t size() const { return sample_times_.size(); }

  bool has_vehicle(const VehicleId & id) const { return vehicles_.count(id) != 0; }
  const VehicleTrack & track(const VehicleId & id) const;

  /// Index of the greatest sample time <= t (t must lie in the domain).
  std::size_t sample_index(double t) const;

  VehicleState value_at(
    const VehicleId & id, double t, InterpolationMode mode = InterpolationMode::kStepHold) const;

  /// Restricts the trace to new_domain. In linear mode a sample is inserted at
  /// new_domain.lo by interpolation when it falls between samples; step-hold
  /// inserts the held value.
  Trace trim(
    const TimeInterval & new_domain, InterpolationMode mode = InterpolationMode::kStepHold) const;

  /// Copy keeping only the listed vehicles.
  Trace select(const std::vector<VehicleId> & ids) const;

  bool operator==(const Trace & other) const;

private:
  std::vector<double> sample_times_;
  std::map<VehicleId, VehicleTrack> vehicles_;
};

/// Incremental construction helper used by ingestion and generators.
class TraceBuilder
{
public:
  explicit TraceBuilder(std::vector<double> sample_times);

  void add_vehicle(const VehicleId & id, const VehicleDims & dims);
  void set_state(const VehicleId & id, std::size_t sample, const VehicleState & state);
  std::size_t size() const { return sample_times_.size(); }
  const std::vector<double> & sample_times() const { return sample_times_; }

  Trace build() &&;

private:
  std::vector<double> sample_times_;
  std::map<VehicleId, VehicleTrack> vehicles_;
};

}  // namespace scenmon
