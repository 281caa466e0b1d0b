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

#include "scenmon/rss.hpp"

#include <algorithm>

namespace scenmon
{

double d_rss_lon(double v_r, double v_f, const RssParams & p)
{
  const double reach = v_r + p.a_max * p.rho;
  const double d = v_r * p.rho + 0.5 * p.a_max * p.rho * p.rho + reach * reach / (2.0 * p.b_min) -
                   v_f * v_f / (2.0 * p.b_max);
  return std::max(0.0, d);
}

double d_rss_lat(double v1, double v2, const RssParams & p)
{
  const double w1 = v1 + p.rho * p.a_max_lat;
  const double w2 = v2 - p.rho * p.a_max_lat;
  const double d = (v1 - v2) * p.rho + p.a_max_lat * p.rho * p.rho +
                   (w1 * w1 + w2 * w2) / (2.0 * p.b_min_lat);
  return std::max(0.0, d);
}

namespace
{

double lon(const VehicleSnapshot & x, AngleConvention angle)
{
  return longitudinal_lateral_velocity(x.state, angle).lon;
}

double lat(const VehicleSnapshot & x, AngleConvention angle)
{
  return longitudinal_lateral_velocity(x.state, angle).lat;
}

double ahead_reach(
  const VehicleSnapshot & a, const VehicleSnapshot & b, const RssParams & p, AngleConvention angle)
{
  return b.dims.length + d_rss_lon(lon(a, angle), lon(b, angle), p);
}

double left_reach(
  const VehicleSnapshot & a, const VehicleSnapshot & b, const RssParams & p, AngleConvention angle)
{
  return b.dims.width + d_rss_lat(lat(b, angle), lat(a, angle), p);
}

double reciprocal(double x) { return x == 0.0 ? kInfinity : 1.0 / x; }

/// min(1/g - 0, 1/g - 1/reach): both conjuncts of the reciprocal form.
double reciprocal_margin(double gap, double reach)
{
  const double inv = reciprocal(gap);
  return std::min(inv, inv - 1.0 / reach);
}

}  // namespace

double danger_ahead_margin(
  const VehicleSnapshot & a, const VehicleSnapshot & b, const RssParams & p, AngleConvention angle)
{
  const double gap = b.state.s - a.state.s;
  return std::min(gap, ahead_reach(a, b, p, angle) - gap);
}

bool danger_ahead(
  const VehicleSnapshot & a, const VehicleSnapshot & b, const RssParams & p, AngleConvention angle)
{
  return danger_ahead_margin(a, b, p, angle) >= 0.0;
}

double danger_left_margin(
  const VehicleSnapshot & a, const VehicleSnapshot & b, const RssParams & p, AngleConvention angle)
{
  const double gap = b.state.d - a.state.d;
  return std::min(gap, left_reach(a, b, p, angle) - gap);
}

bool danger_left(
  const VehicleSnapshot & a, const VehicleSnapshot & b, const RssParams & p, AngleConvention angle)
{
  return danger_left_margin(a, b, p, angle) >= 0.0;
}

double danger_ahead_rs(
  const VehicleSnapshot & a, const VehicleSnapshot & b, const RssParams & p, AngleConvention angle)
{
  return reciprocal_margin(b.state.s - a.state.s, ahead_reach(a, b, p, angle));
}

double danger_left_rs(
  const VehicleSnapshot & a, const VehicleSnapshot & b, const RssParams & p, AngleConvention angle)
{
  return reciprocal_margin(b.state.d - a.state.d, left_reach(a, b, p, angle));
}

bool rss_violation_lon(
  const VehicleSnapshot & a, const VehicleSnapshot & b, const RssParams & p, AngleConvention angle)
{
  return danger_ahead(a, b, p, angle) || danger_ahead(b, a, p, angle);
}

bool rss_violation_lat(
  const VehicleSnapshot & a, const VehicleSnapshot & b, const RssParams & p, AngleConvention angle)
{
  return danger_left(a, b, p, angle) || danger_left(b, a, p, angle);
}

bool rss_violation(
  const VehicleSnapshot & a, const VehicleSnapshot & b, const RssParams & p, AngleConvention angle)
{
  return rss_violation_lon(a, b, p, angle) && rss_violation_lat(a, b, p, angle);
}

namespace
{

using MarginFn = double (*)(
  const VehicleSnapshot &, const VehicleSnapshot &, const RssParams &, AngleConvention);

stl::PrimitiveAtom pair_atom(const std::string & name, MarginFn fn, const std::string & what)
{
  return stl::PrimitiveAtom{name, {stl::ArgKind::kVehicle, stl::ArgKind::kVehicle}, false, what,
    [fn](const stl::AtomInputs & in, std::size_t k) {
      const VehicleSnapshot a{in.state(0, k), in.dims(0)};
      const VehicleSnapshot b{in.state(1, k), in.dims(1)};
      return fn(a, b, in.rss(), in.ctx().angle);
    }};
}

stl::MacroAtom symmetric(const std::string & name, const std::string & inner, const std::string & what)
{
  return stl::MacroAtom{name, {stl::ArgKind::kVehicle, stl::ArgKind::kVehicle}, what,
    [inner](const std::vector<stl::AtomArg> & args, const stl::EvalContext &) {
      return stl::Formula::atom(inner, {args[0], args[1]}) |
             stl::Formula::atom(inner, {args[1], args[0]});
    }};
}

stl::MacroAtom both(const std::string & name, const std::string & lon_name,
  const std::string & lat_name, const std::string & what)
{
  return stl::MacroAtom{name, {stl::ArgKind::kVehicle, stl::ArgKind::kVehicle}, what,
    [lon_name, lat_name](const std::vector<stl::AtomArg> & args, const stl::EvalContext &) {
      return stl::Formula::atom(lon_name, args) & stl::Formula::atom(lat_name, args);
    }};
}

}  // namespace

void register_rss_atoms(stl::AtomRegistry & reg)
{
  reg.add(pair_atom("dangerAhead", danger_ahead_margin,
    "b ahead of a closer than length(b) + longitudinal RSS distance"));
  reg.add(pair_atom("dangerLeft", danger_left_margin,
    "b left of a closer than width(b) + lateral RSS distance"));
  reg.add(pair_atom("dangerAhead_rs", danger_ahead_rs, "reciprocal form of dangerAhead"));
  reg.add(pair_atom("dangerLeft_rs", danger_left_rs, "reciprocal form of dangerLeft"));

  reg.add(symmetric("rssViolation_lon", "dangerAhead", "dangerAhead(a,b) | dangerAhead(b,a)"));
  reg.add(symmetric("rssViolation_lat", "dangerLeft", "dangerLeft(a,b) | dangerLeft(b,a)"));
  reg.add(both("rssViolation", "rssViolation_lon", "rssViolation_lat",
    "longitudinal and lateral RSS distances both violated"));
  reg.add(symmetric("rssViolation_lon_rs", "dangerAhead_rs", "reciprocal rssViolation_lon"));
  reg.add(symmetric("rssViolation_lat_rs", "dangerLeft_rs", "reciprocal rssViolation_lat"));
  reg.add(both("rssViolation_rs", "rssViolation_lon_rs", "rssViolation_lat_rs",
    "reciprocal rssViolation"));
}

}  // namespace scenmon
