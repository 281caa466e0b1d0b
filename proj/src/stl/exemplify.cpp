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

#include "scenmon/stl/exemplify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "scenmon/errors.hpp"
#include "scenmon/stl/monitor.hpp"

namespace scenmon::stl
{

namespace
{

constexpr int kChannels = 5;

const ChannelBounds & channel(const VehicleTemplate & v, int c)
{
  switch (c) {
    case 0:
      return v.s;
    case 1:
      return v.v;
    case 2:
      return v.a;
    case 3:
      return v.d;
    default:
      return v.theta;
  }
}

double & component(VehicleState & st, int c)
{
  switch (c) {
    case 0:
      return st.s;
    case 1:
      return st.v;
    case 2:
      return st.a;
    case 3:
      return st.d;
    default:
      return st.theta;
  }
}

class Search
{
public:
  Search(const Formula & formula, const SignalTemplate & tmpl)
  : formula_(formula), tmpl_(tmpl)
  {
    const int n = static_cast<int>(std::floor(tmpl.duration / tmpl.dt + 1e-9));
    for (int k = 0; k <= n; ++k) {
      times_.push_back(k * tmpl.dt);
    }
    if (times_.back() < tmpl.duration - 1e-9) {
      times_.push_back(tmpl.duration);
    }
    for (const auto & v : tmpl.vehicles) {
      for (int c = 0; c < kChannels; ++c) {
        const ChannelBounds & b = channel(v, c);
        for (int p = 0; p < tmpl.control_points; ++p) {
          lo_.push_back(b.lo);
          hi_.push_back(b.hi);
        }
      }
    }
    road_ = tmpl.road ? tmpl.road : std::make_shared<const RoadNetwork>(straight_road(3));
  }

  std::size_t dimension() const { return lo_.size(); }
  double lo(std::size_t i) const { return lo_[i]; }
  double hi(std::size_t i) const { return hi_[i]; }

  Trace build(const std::vector<double> & x) const
  {
    TraceBuilder b(times_);
    const int cp = tmpl_.control_points;
    const double span = tmpl_.duration;
    std::size_t offset = 0;
    for (const auto & v : tmpl_.vehicles) {
      b.add_vehicle(v.id, v.dims);
      std::vector<VehicleState> states(times_.size());
      for (int c = 0; c < kChannels; ++c) {
        for (std::size_t k = 0; k < times_.size(); ++k) {
          double value = x[offset];
          if (cp > 1) {
            const double u = times_[k] / span * (cp - 1);
            const int i = std::min(static_cast<int>(std::floor(u)), cp - 2);
            const double w = u - i;
            value = (1.0 - w) * x[offset + i] + w * x[offset + i + 1];
          }
          component(states[k], c) = value;
        }
        offset += static_cast<std::size_t>(cp);
      }
      for (std::size_t k = 0; k < times_.size(); ++k) {
        b.set_state(v.id, k, states[k]);
      }
    }
    return std::move(b).build();
  }

  EvalContext context(const Trace & trace) const
  {
    EvalContext ctx;
    ctx.trace = std::make_shared<const Trace>(trace);
    ctx.road = road_;
    ctx.bindings = tmpl_.bindings;
    ctx.rss = tmpl_.rss;
    ctx.scenario = tmpl_.scenario;
    return ctx;
  }

  double robustness(const std::vector<double> & x)
  {
    ++evaluations;
    Monitor m(formula_, context(build(x)));
    const double r = m.eval_robust(0.0);
    return std::isnan(r) ? -kInfinity : r;
  }

  bool verified(const std::vector<double> & x) const
  {
    Monitor m(formula_, context(build(x)));
    return m.eval_bool(0.0);
  }

  int evaluations = 0;

private:
  const Formula & formula_;
  const SignalTemplate & tmpl_;
  std::vector<double> times_;
  std::vector<double> lo_;
  std::vector<double> hi_;
  std::shared_ptr<const RoadNetwork> road_;
};

}  // namespace

void SignalTemplate::validate() const
{
  if (vehicles.empty()) {
    throw InvalidTemplate("template has no vehicles");
  }
  if (!(duration > 0.0) || !(dt > 0.0) || !std::isfinite(duration) || !std::isfinite(dt)) {
    throw InvalidTemplate("template needs positive duration and dt");
  }
  if (control_points < 1) {
    throw InvalidTemplate("template needs at least one control point");
  }
  for (const auto & v : vehicles) {
    for (int c = 0; c < kChannels; ++c) {
      const ChannelBounds & b = channel(v, c);
      if (!(b.lo <= b.hi) || !std::isfinite(b.lo) || !std::isfinite(b.hi)) {
        throw InvalidTemplate("empty bounds for a channel of vehicle '" + v.id + "'");
      }
    }
    if (!(v.dims.length > 0.0) || !(v.dims.width > 0.0)) {
      throw InvalidTemplate("vehicle '" + v.id + "' needs positive dimensions");
    }
  }
}

ExemplifyResult exemplify(
  const Formula & formula, const SignalTemplate & tmpl, const ExemplifyOptions & options)
{
  tmpl.validate();
  Search search(formula, tmpl);
  std::mt19937_64 rng(options.seed);
  ExemplifyResult result;
  const std::size_t n = search.dimension();
  const auto started = std::chrono::steady_clock::now();
  auto out_of_time = [&] {
    if (options.time_limit_s <= 0.0) {
      return false;
    }
    const std::chrono::duration<double> spent = std::chrono::steady_clock::now() - started;
    if (spent.count() > options.time_limit_s) {
      result.timed_out = true;
    }
    return result.timed_out;
  };

  auto accept = [&](const std::vector<double> & x, double r) {
    if (r > 0.0 && search.verified(x)) {
      result.success = true;
      result.robustness = r;
      result.trace = search.build(x);
      return true;
    }
    return false;
  };

  for (int restart = 0; restart < std::max(1, options.restarts) && !out_of_time(); ++restart) {
    std::vector<double> x(n);
    std::vector<double> step(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::uniform_real_distribution<double> u(search.lo(i), search.hi(i));
      x[i] = search.lo(i) < search.hi(i) ? u(rng) : search.lo(i);
      step[i] = 0.25 * (search.hi(i) - search.lo(i));
    }
    double r = search.robustness(x);
    result.robustness = std::max(result.robustness, r);
    if (accept(x, r)) {
      break;
    }
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < n; ++i) {
      if (search.lo(i) < search.hi(i)) {
        free.push_back(i);
      }
    }
    if (free.empty()) {
      continue;
    }
    std::uniform_int_distribution<std::size_t> pick(0, free.size() - 1);
    bool done = false;
    for (int s = 0; s < options.steps && !done && !out_of_time(); ++s) {
      const std::size_t i = free[pick(rng)];
      bool improved = false;
      for (double dir : {1.0, -1.0}) {
        std::vector<double> y = x;
        y[i] = std::clamp(x[i] + dir * step[i], search.lo(i), search.hi(i));
        if (y[i] == x[i]) {
          continue;
        }
        const double ry = search.robustness(y);
        if (ry > r) {
          x = std::move(y);
          r = ry;
          improved = true;
          break;
        }
      }
      if (!improved) {
        step[i] *= 0.5;
        continue;
      }
      result.robustness = std::max(result.robustness, r);
      done = accept(x, r);
    }
    if (done) {
      break;
    }
  }
  result.evaluations = search.evaluations;
  return result;
}

}  // namespace scenmon::stl
