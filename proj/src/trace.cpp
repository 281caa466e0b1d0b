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

#include "scenmon/trace.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <sstream>

#include "scenmon/errors.hpp"

namespace scenmon
{

VelocityComponents longitudinal_lateral_velocity(
  const VehicleState & state, AngleConvention convention)
{
  const double c = std::cos(state.theta);
  const double s = std::sin(state.theta);
  if (convention == AngleConvention::kLiteral) {
    return {state.v * s, state.v * c};
  }
  return {state.v * c, state.v * s};
}

Extent front_rear(const VehicleState & state, const VehicleDims & dims)
{
  return {state.s, state.s - dims.length};
}

Trace::Trace(std::vector<double> sample_times, std::map<VehicleId, VehicleTrack> vehicles)
: sample_times_(std::move(sample_times)), vehicles_(std::move(vehicles))
{
  if (sample_times_.size() < 2) {
    throw InvalidTrace("a trace needs at least 2 samples");
  }
  for (std::size_t i = 0; i < sample_times_.size(); ++i) {
    if (!std::isfinite(sample_times_[i])) {
      throw InvalidTrace("non-finite sample time");
    }
    if (i > 0 && !(sample_times_[i] > sample_times_[i - 1])) {
      throw InvalidTrace("sample times must be strictly increasing");
    }
  }
  for (const auto & [id, track] : vehicles_) {
    if (track.states.size() != sample_times_.size() ||
        track.present.size() != sample_times_.size()) {
      throw InvalidTrace("vehicle '" + id + "' does not cover every sample");
    }
    if (!(track.dims.length > 0.0) || !(track.dims.width > 0.0)) {
      throw InvalidTrace("vehicle '" + id + "' has non-positive dimensions");
    }
  }
}

const VehicleTrack & Trace::track(const VehicleId & id) const
{
  auto it = vehicles_.find(id);
  if (it == vehicles_.end()) {
    throw VehicleAbsent("unknown vehicle '" + id + "'");
  }
  return it->second;
}

std::size_t Trace::sample_index(double t) const
{
  if (!domain().contains(t)) {
    std::ostringstream os;
    os << "time " << t << " outside trace domain [" << sample_times_.front() << ", "
       << sample_times_.back() << "]";
    throw OutOfDomain(os.str());
  }
  auto it = std::upper_bound(sample_times_.begin(), sample_times_.end(), t);
  return static_cast<std::size_t>(std::distance(sample_times_.begin(), it)) - 1;
}

namespace
{

VehicleState lerp(const VehicleState & x, const VehicleState & y, double w)
{
  auto mix = [w](double p, double q) { return p + (q - p) * w; };
  return {mix(x.s, y.s), mix(x.v, y.v), mix(x.a, y.a), mix(x.d, y.d), mix(x.theta, y.theta)};
}

}  // namespace

VehicleState Trace::value_at(const VehicleId & id, double t, InterpolationMode mode) const
{
  const std::size_t k = sample_index(t);
  const VehicleTrack & tr = track(id);
  if (!tr.present[k]) {
    throw VehicleAbsent("vehicle '" + id + "' absent at t=" + std::to_string(t));
  }
  if (mode == InterpolationMode::kStepHold || sample_times_[k] == t ||
      k + 1 >= sample_times_.size())
  {
    return tr.states[k];
  }
  if (!tr.present[k + 1]) {
    throw VehicleAbsent("vehicle '" + id + "' has no bracketing sample at t=" + std::to_string(t));
  }
  const double w = (t - sample_times_[k]) / (sample_times_[k + 1] - sample_times_[k]);
  return lerp(tr.states[k], tr.states[k + 1], w);
}

Trace Trace::trim(const TimeInterval & new_domain, InterpolationMode mode) const
{
  const TimeInterval dom = domain();
  if (new_domain.lo > new_domain.hi || new_domain.lo < dom.lo || new_domain.hi > dom.hi) {
    throw OutOfDomain("trim window is not contained in the trace domain");
  }
  auto first = std::lower_bound(sample_times_.begin(), sample_times_.end(), new_domain.lo);
  auto last = std::upper_bound(sample_times_.begin(), sample_times_.end(), new_domain.hi);
  const auto kept = std::distance(first, last);
  if (kept < 2) {
    throw EmptyDomain("fewer than 2 samples inside the trim window");
  }
  const std::size_t i0 = static_cast<std::size_t>(std::distance(sample_times_.begin(), first));
  const std::size_t i1 = static_cast<std::size_t>(std::distance(sample_times_.begin(), last));
  const bool insert_lo = sample_times_[i0] != new_domain.lo;
  const bool insert_hi = sample_times_[i1 - 1] != new_domain.hi;

  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(kept) + 2);
  if (insert_lo) {
    times.push_back(new_domain.lo);
  }
  times.insert(times.end(), first, last);
  if (insert_hi) {
    times.push_back(new_domain.hi);
  }

  std::map<VehicleId, VehicleTrack> out;
  for (const auto & [id, tr] : vehicles_) {
    VehicleTrack nt;
    nt.dims = tr.dims;
    auto push_at = [&](double t) {
      const std::size_t k = sample_index(t);
      bool present = tr.present[k];
      VehicleState st = tr.states[k];
      if (mode == InterpolationMode::kLinear && present && k + 1 < sample_times_.size() &&
          tr.present[k + 1] && sample_times_[k] != t)
      {
        const double w = (t - sample_times_[k]) / (sample_times_[k + 1] - sample_times_[k]);
        st = lerp(tr.states[k], tr.states[k + 1], w);
      }
      nt.states.push_back(st);
      nt.present.push_back(present);
    };
    if (insert_lo) {
      push_at(new_domain.lo);
    }
    for (std::size_t k = i0; k < i1; ++k) {
      nt.states.push_back(tr.states[k]);
      nt.present.push_back(tr.present[k]);
    }
    if (insert_hi) {
      push_at(new_domain.hi);
    }
    out.emplace(id, std::move(nt));
  }
  return Trace(std::move(times), std::move(out));
}

Trace Trace::select(const std::vector<VehicleId> & ids) const
{
  std::map<VehicleId, VehicleTrack> out;
  for (const auto & id : ids) {
    out.emplace(id, track(id));
  }
  return Trace(sample_times_, std::move(out));
}

bool Trace::operator==(const Trace & other) const
{
  if (sample_times_ != other.sample_times_ || vehicles_.size() != other.vehicles_.size()) {
    return false;
  }
  for (const auto & [id, tr] : vehicles_) {
    auto it = other.vehicles_.find(id);
    if (it == other.vehicles_.end()) {
      return false;
    }
    const VehicleTrack & o = it->second;
    if (!(tr.dims == o.dims) || tr.present != o.present) {
      return false;
    }
    for (std::size_t k = 0; k < tr.states.size(); ++k) {
      if (tr.present[k] && !(tr.states[k] == o.states[k])) {
        return false;
      }
    }
  }
  return true;
}

TraceBuilder::TraceBuilder(std::vector<double> sample_times)
: sample_times_(std::move(sample_times))
{
}

void TraceBuilder::add_vehicle(const VehicleId & id, const VehicleDims & dims)
{
  VehicleTrack tr;
  tr.dims = dims;
  tr.states.assign(sample_times_.size(), VehicleState{});
  tr.present.assign(sample_times_.size(), false);
  vehicles_[id] = std::move(tr);
}

void TraceBuilder::set_state(const VehicleId & id, std::size_t sample, const VehicleState & state)
{
  auto it = vehicles_.find(id);
  if (it == vehicles_.end()) {
    throw InvalidTrace("set_state on unknown vehicle '" + id + "'");
  }
  it->second.states.at(sample) = state;
  it->second.present.at(sample) = true;
}

Trace TraceBuilder::build() &&
{
  return Trace(std::move(sample_times_), std::move(vehicles_));
}

}  // namespace scenmon
