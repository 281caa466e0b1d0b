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

#include <cstddef>
#include <limits>
#include <vector>

#include "scenmon/trace.hpp"

namespace scenmon::stl
{

/// Time tolerance used to identify breakpoints that differ only by rounding
/// (e.g. (t - a) + a versus t).
inline constexpr double kTimeSnap = 1e-9;
/// Breakpoints closer than this are merged when building output grids.
inline constexpr double kTimeMerge = 4e-9;

struct BooleanSemantics
{
  using Value = bool;
  static constexpr Value top() { return true; }
  static constexpr Value bottom() { return false; }
  static Value meet(Value a, Value b) { return a && b; }
  static Value join(Value a, Value b) { return a || b; }
  static Value negate(Value a) { return !a; }
};

struct RobustSemantics
{
  using Value = double;
  static constexpr Value top() { return std::numeric_limits<double>::infinity(); }
  static constexpr Value bottom() { return -std::numeric_limits<double>::infinity(); }
  static Value meet(Value a, Value b) { return a < b ? a : b; }
  static Value join(Value a, Value b) { return a > b ? a : b; }
  static Value negate(Value a) { return -a; }
};

/// Piecewise-constant function on the closed domain [times.front(),
/// times.back()]: `at[i]` holds exactly at times[i], `between[i]` on the open
/// gap (times[i], times[i+1]).
template <class V>
struct Signal
{
  std::vector<double> times;
  std::vector<V> at;
  std::vector<V> between;

  double lo() const { return times.front(); }
  double hi() const { return times.back(); }
  std::size_t size() const { return times.size(); }

  /// Value at t, snapping t onto a breakpoint within kTimeSnap.
  V value(double t) const;

  /// Locates t: returns {index, on_point}. When on_point is false, t lies in
  /// the open gap after times[index].
  std::pair<std::size_t, bool> locate(double t) const;

  bool operator==(const Signal &) const = default;
};

/// Step-hold signal from per-sample values: value k holds on
/// [times[k], times[k+1]) and exactly at the final sample.
template <class V>
Signal<V> step_signal(const std::vector<double> & times, const std::vector<V> & values);

template <class V>
Signal<V> constant_signal(double lo, double hi, V value);

/// Removes interior breakpoints across which the value does not change.
template <class V>
Signal<V> compress(const Signal<V> & s);

template <class Sem>
Signal<typename Sem::Value> negate(const Signal<typename Sem::Value> & s);

template <class Sem>
Signal<typename Sem::Value> meet(
  const Signal<typename Sem::Value> & a, const Signal<typename Sem::Value> & b);

template <class Sem>
Signal<typename Sem::Value> join(
  const Signal<typename Sem::Value> & a, const Signal<typename Sem::Value> & b);

/// G_J: infimum over [t+lo, t+hi] intersected with the domain; an empty
/// window yields top.
template <class Sem>
Signal<typename Sem::Value> always(const Signal<typename Sem::Value> & s, const TimeInterval & j);

/// F_J: supremum over [t+lo, t+hi] intersected with the domain; an empty
/// window yields bottom.
template <class Sem>
Signal<typename Sem::Value> eventually(
  const Signal<typename Sem::Value> & s, const TimeInterval & j);

/// lhs U_J rhs: sup over tau in [t+lo, t+hi] (within the domain) of
/// min(rhs(tau), inf of lhs over [t+lo, tau)).
template <class Sem>
Signal<typename Sem::Value> until(
  const Signal<typename Sem::Value> & lhs, const Signal<typename Sem::Value> & rhs,
  const TimeInterval & j);

/// Samples the signal at each of the given times.
template <class V>
std::vector<V> sample(const Signal<V> & s, const std::vector<double> & times);

}  // namespace scenmon::stl
