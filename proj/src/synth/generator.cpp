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

#include "scenmon/synth/generator.hpp"

#include <algorithm>
#include <cmath>

#include "scenmon/errors.hpp"
#include "scenmon/pipeline/trace_io.hpp"
#include "scenmon/rss.hpp"
#include "scenmon/scenarios.hpp"

namespace scenmon::synth
{

double lane_center_left(int lane, const VehicleDims & dims)
{
  return kLaneWidth * lane + 0.5 * (kLaneWidth + dims.width);
}

std::shared_ptr<const RoadNetwork> main_road()
{
  static const auto road = std::make_shared<const RoadNetwork>(straight_road(kLaneCount, kLaneWidth));
  return road;
}

std::shared_ptr<const RoadNetwork> zone_road(Zone zone)
{
  std::vector<Lanelet> lls;
  const char * parts[] = {"a", "b", "c"};
  const double bounds[] = {-2000.0, 0.0, 300.0, 6000.0};
  for (int j = 0; j < kLaneCount; ++j) {
    const std::string base = "lane" + std::to_string(j) + "_";
    for (int p = 0; p < 3; ++p) {
      Lanelet ll;
      ll.id = base + parts[p];
      ll.zone = p == 1 ? zone : Zone::kMainZone;
      ll.attr = j == 0 ? (zone == Zone::kMergeZone ? LaneAttr::kMerge : LaneAttr::kDeparture)
                       : LaneAttr::kMain;
      ll.s_min = bounds[p];
      ll.s_max = bounds[p + 1];
      ll.d_right = j * kLaneWidth;
      ll.d_left = (j + 1) * kLaneWidth;
      if (p > 0) {
        ll.pred = base + parts[p - 1];
      }
      if (p < 2) {
        ll.succ = base + parts[p + 1];
      }
      lls.push_back(ll);
    }
  }
  return std::make_shared<const RoadNetwork>(build_lanes(lls));
}

namespace
{

/// Piecewise-linear profile from a start value and sequential ramps.
struct Ramp
{
  double t_start;
  double target;
  double rate;
};

/// Value and right derivative at t.
std::pair<double, double> profile(double x0, const std::vector<Ramp> & ramps, double t)
{
  double x = x0;
  double now = 0.0;
  for (std::size_t i = 0; i < ramps.size(); ++i) {
    const Ramp & r = ramps[i];
    const double start = std::max(now, r.t_start);
    if (t < start) {
      return {x, 0.0};
    }
    const double dir = r.target > x ? 1.0 : -1.0;
    const double span = std::abs(r.target - x) / r.rate;
    const double end = start + span;
    if (t < end) {
      return {x + dir * r.rate * (t - start), dir * r.rate};
    }
    x = r.target;
    now = end;
  }
  return {x, 0.0};
}

}  // namespace

Trace simulate(const std::vector<VehicleScript> & scripts, double duration, double rate_hz)
{
  const long n = static_cast<long>(std::floor(duration * rate_hz + 1e-9)) + 1;
  std::vector<double> times;
  for (long k = 0; k < n; ++k) {
    times.push_back(static_cast<double>(k) / rate_hz);
  }
  TraceBuilder b(times);
  for (const VehicleScript & vs : scripts) {
    std::vector<Ramp> lat;
    for (const auto & m : vs.lateral) {
      lat.push_back({m.t_start, m.target, m.speed});
    }
    std::vector<Ramp> lon;
    for (const auto & c : vs.speed) {
      lon.push_back({c.t_start, c.target, c.accel});
    }
    b.add_vehicle(vs.id, vs.dims);
    double s = vs.s0;
    for (long k = 0; k < n; ++k) {
      const double t = times[static_cast<std::size_t>(k)];
      const auto [v_lon, a] = profile(vs.v0, lon, t);
      const auto [d, v_lat] = profile(vs.d0, lat, t);
      VehicleState st;
      st.s = s;
      st.d = d;
      st.a = a;
      st.v = std::hypot(v_lon, v_lat);
      st.theta = std::atan2(v_lat, v_lon);
      b.set_state(vs.id, static_cast<std::size_t>(k), st);
      if (k + 1 < n) {
        // exact integral of the piecewise-linear speed over the step
        const double t1 = times[static_cast<std::size_t>(k + 1)];
        const double mid = profile(vs.v0, lon, 0.5 * (t + t1)).first;
        s += mid * (t1 - t);
      }
    }
  }
  return std::move(b).build();
}

namespace
{

const RssParams kRss;

double uniform(std::mt19937_64 & rng, double lo, double hi)
{
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Longitudinal reach of the follower onto the leader (front-to-front).
double lon_reach(double v_rear, double v_front, const VehicleDims & front = {})
{
  return front.length + d_rss_lon(v_rear, v_front, kRss);
}

VehicleScript car(const std::string & id, double s0, int lane, double v0)
{
  VehicleScript vs;
  vs.id = id;
  vs.s0 = s0;
  vs.d0 = lane_center_left(lane);
  vs.v0 = v0;
  return vs;
}

/// Time for a lateral move of `dist` at `speed`.
double move_time(double dist, double speed) { return std::abs(dist) / speed; }

struct Built
{
  std::vector<VehicleScript> scripts;
  double duration = 0.0;
};

// POV cuts in from the left lane ahead of SV. With sv_leaves the SV
// afterwards moves to the right lane.
Built cut_in(std::mt19937_64 & rng, double s_base, bool sv_leaves)
{
  const double v = uniform(rng, 22.0, 32.0);
  const double gap = uniform(rng, 15.0, 30.0);
  const double t_cut = uniform(rng, 1.0, 2.0);
  const double v_lat = uniform(rng, 0.8, 1.5);
  VehicleScript sv = car("SV", s_base, 1, v);
  VehicleScript pov = car("POV", s_base + gap, 2, v + uniform(rng, -0.5, 0.5));
  pov.lateral.push_back({t_cut, lane_center_left(1), v_lat});
  const double t_in = t_cut + move_time(kLaneWidth, v_lat);
  double duration = t_in + 1.5;
  if (sv_leaves) {
    const double t_leave = t_in - uniform(rng, 0.3, 1.0);
    const double sv_lat = uniform(rng, 1.5, 2.5);
    sv.lateral.push_back({t_leave, lane_center_left(0), sv_lat});
    duration = std::max(duration, t_leave + move_time(kLaneWidth, sv_lat) + 0.5);
  }
  return {{sv, pov}, duration};
}

// POV approaches from behind in SV's lane (accel).
Built approach_from_behind(std::mt19937_64 & rng, double s_base)
{
  const double v_sv = uniform(rng, 20.0, 28.0);
  const double v_pov = v_sv + uniform(rng, 6.0, 12.0);
  const double margin = uniform(rng, 10.0, 30.0);
  const double gap = lon_reach(v_pov, v_sv) + margin;
  VehicleScript sv = car("SV", s_base, 1, v_sv);
  VehicleScript pov = car("POV", s_base - gap, 1, v_pov);
  return {{sv, pov}, margin / (v_pov - v_sv) + 2.0};
}

// SV closes in on a slower POV ahead in its lane (decel). With sv_leaves
// the SV changes to the right lane after the danger starts.
Built closing_on_slower(std::mt19937_64 & rng, double s_base, bool sv_leaves)
{
  const double v_sv = uniform(rng, 28.0, 36.0);
  const double v_pov = v_sv - uniform(rng, 6.0, 12.0);
  const double margin = uniform(rng, 10.0, 30.0);
  const double gap = lon_reach(v_sv, v_pov) + margin;
  VehicleScript sv = car("SV", s_base, 1, v_sv);
  VehicleScript pov = car("POV", s_base + gap, 1, v_pov);
  if (uniform(rng, 0.0, 1.0) < 0.5) {
    pov.speed.push_back({0.5, v_pov - 3.0, 2.0});
  }
  const double t_danger = margin / (v_sv - v_pov);
  double duration = t_danger + 2.0;
  if (sv_leaves) {
    const double t_leave = t_danger + uniform(rng, 0.3, 1.0);
    const double sv_lat = uniform(rng, 1.5, 2.5);
    sv.lateral.push_back({t_leave, lane_center_left(0), sv_lat});
    duration = t_leave + move_time(kLaneWidth, sv_lat) + 0.5;
  }
  return {{sv, pov}, duration};
}

// POV ahead in SV's lane leaves to the left while SV closes in; SV then
// moves to the right lane.
Built cut_out(std::mt19937_64 & rng, double s_base)
{
  const double v_sv = uniform(rng, 28.0, 34.0);
  const double v_pov = v_sv - uniform(rng, 8.0, 12.0);
  const double v_lat = uniform(rng, 1.2, 1.8);
  const double t_cut = uniform(rng, 1.0, 1.5);
  // the POV is clear of lane 1 once its right edge passes d = 7
  const double t_out = t_cut + move_time(2.0 * kLaneWidth + 0.0 - lane_center_left(1) + 1.8, v_lat);
  const double t_violation = t_out - uniform(rng, 0.1, 0.4);
  const double gap = lon_reach(v_sv, v_pov) + (v_sv - v_pov) * t_violation;
  VehicleScript sv = car("SV", s_base, 1, v_sv);
  VehicleScript pov = car("POV", s_base + gap, 1, v_pov);
  pov.lateral.push_back({t_cut, lane_center_left(2), v_lat});
  const double t_settled = t_cut + move_time(kLaneWidth, v_lat);
  const double sv_lat = uniform(rng, 1.5, 2.5);
  const double t_leave = t_settled + uniform(rng, 0.2, 0.8);
  sv.lateral.push_back({t_leave, lane_center_left(0), sv_lat});
  return {{sv, pov}, t_leave + move_time(kLaneWidth, sv_lat) + 0.5};
}

// SV changes from the right lane into the lane of a faster POV behind.
Built sv_enters(std::mt19937_64 & rng, double s_base)
{
  const double v_sv = uniform(rng, 22.0, 28.0);
  const double v_pov = v_sv + uniform(rng, 3.0, 7.0);
  const double gap = uniform(rng, 35.0, 50.0);
  const double t_move = uniform(rng, 0.8, 1.5);
  const double sv_lat = uniform(rng, 0.8, 1.5);
  VehicleScript sv = car("SV", s_base, 0, v_sv);
  VehicleScript pov = car("POV", s_base - gap, 1, v_pov);
  sv.lateral.push_back({t_move, lane_center_left(1), sv_lat});
  return {{sv, pov}, t_move + move_time(kLaneWidth, sv_lat) + 1.0};
}

// Three vehicles in lane 1: POV1 leaves, uncovering a slower POV2 ahead.
Built uncover(std::mt19937_64 & rng, double s_base)
{
  const double v_sv = uniform(rng, 27.0, 33.0);
  const double v_pov2 = v_sv - uniform(rng, 8.0, 12.0);
  const double gap1 = uniform(rng, 25.0, 35.0);
  const double t_cut = uniform(rng, 0.8, 1.2);
  const double v_lat = uniform(rng, 1.4, 2.0);
  const double t_out = t_cut + move_time(2.0 * kLaneWidth - lane_center_left(1) + 1.8, v_lat);
  const double t_violation = t_out + uniform(rng, 0.3, 1.0);
  const double gap2 = lon_reach(v_sv, v_pov2) + (v_sv - v_pov2) * t_violation;
  VehicleScript sv = car("SV", s_base, 1, v_sv);
  VehicleScript pov1 = car("POV1", s_base + gap1, 1, v_sv);
  VehicleScript pov2 = car("POV", s_base + gap2, 1, v_pov2);
  pov1.lateral.push_back({t_cut, lane_center_left(2), v_lat});
  return {{sv, pov1, pov2}, t_violation + 1.5};
}

}  // namespace

DisturbTrace generate(int index, std::uint64_t seed)
{
  if (index < 1 || index > 24) {
    throw ConfigError("scenario index " + std::to_string(index) + " outside 1..24");
  }
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(index));
  const int row = (index - 1) % 8 + 1;
  const double s_base = index <= 8 ? 0.0 : uniform(rng, 100.0, 200.0);
  Built b;
  switch (row) {
    case 1:
      b = cut_in(rng, s_base, false);
      break;
    case 2:
      b = uncover(rng, s_base);
      break;
    case 3:
      b = approach_from_behind(rng, s_base);
      break;
    case 4:
      b = closing_on_slower(rng, s_base, false);
      break;
    case 5:
      b = cut_in(rng, s_base, true);
      break;
    case 6:
      b = cut_out(rng, s_base);
      break;
    case 7:
      b = sv_enters(rng, s_base);
      break;
    default:
      b = closing_on_slower(rng, s_base, true);
      break;
  }
  DisturbTrace out;
  out.name = "synth_s" + std::to_string(index) + "_" + std::to_string(seed);
  out.recording = "synth";
  out.direction = 2;
  out.sv = "SV";
  out.pov = "POV";
  if (row == 2) {
    out.pov1_candidates = {"POV1"};
  }
  if (index <= 8) {
    out.road = main_road();
    out.map_name = "main_road";
  } else if (index <= 16) {
    out.road = zone_road(Zone::kMergeZone);
    out.map_name = "merge_zone";
  } else {
    out.road = zone_road(Zone::kDepartZone);
    out.map_name = "depart_zone";
  }
  out.trace = std::make_shared<const Trace>(simulate(b.scripts, b.duration));
  return out;
}

DisturbTrace random_pair(std::mt19937_64 & rng)
{
  std::vector<VehicleScript> scripts;
  for (const char * id : {"SV", "POV"}) {
    const int lane = std::uniform_int_distribution<int>(0, kLaneCount - 1)(rng);
    VehicleScript vs = car(id, uniform(rng, 0.0, 120.0), lane, uniform(rng, 15.0, 35.0));
    const int moves = std::uniform_int_distribution<int>(0, 2)(rng);
    for (int m = 0; m < moves; ++m) {
      const int target = std::uniform_int_distribution<int>(0, kLaneCount - 1)(rng);
      vs.lateral.push_back({uniform(rng, 0.0, 6.0), lane_center_left(target), uniform(rng, 0.5, 2.0)});
    }
    const int changes = std::uniform_int_distribution<int>(0, 2)(rng);
    for (int c = 0; c < changes; ++c) {
      vs.speed.push_back({uniform(rng, 0.0, 6.0), uniform(rng, 10.0, 40.0), uniform(rng, 0.5, 4.0)});
    }
    scripts.push_back(vs);
  }
  DisturbTrace out;
  out.name = "random";
  out.recording = "synth";
  out.direction = 2;
  out.sv = "SV";
  out.pov = "POV";
  out.road = main_road();
  out.map_name = "main_road";
  out.trace = std::make_shared<const Trace>(simulate(scripts, uniform(rng, 2.0, 8.0)));
  return out;
}

namespace
{

std::vector<double> markings(int direction)
{
  // upper half for direction 1, lower half for direction 2, as in highD
  const double y0 = direction == 1 ? 8.0 : 21.0;
  std::vector<double> out;
  for (int j = 0; j <= kLaneCount; ++j) {
    out.push_back(y0 + kLaneWidth * j);
  }
  return out;
}

}  // namespace

HighdRecording to_highd(const Trace & trace, int direction, int first_id)
{
  HighdRecording rec;
  rec.frame_rate = 25.0;
  rec.upper_markings = markings(1);
  rec.lower_markings = markings(2);
  const std::vector<double> & m = direction == 1 ? rec.upper_markings : rec.lower_markings;
  const long frame0 = std::lround(trace.sample_times().front() * rec.frame_rate);
  int id = first_id;
  for (const auto & [vid, track] : trace.vehicles()) {
    HighdTrack t;
    t.id = id++;
    t.width = track.dims.length;
    t.height = track.dims.width;
    t.driving_direction = direction;
    bool started = false;
    for (std::size_t k = 0; k < trace.size(); ++k) {
      if (!track.present[k]) {
        if (started) {
          break;
        }
        continue;
      }
      if (!started) {
        t.first_frame = frame0 + static_cast<long>(k);
        started = true;
      }
      t.rows.push_back(highd_row(track.states[k], track.dims, direction, m));
    }
    if (started) {
      rec.tracks.push_back(std::move(t));
    }
  }
  return rec;
}

HighdRecording trim_fixture()
{
  // follower at 20 m/s with the leader 20 m (violating) or 60 m (safe) ahead
  std::vector<double> times;
  for (int k = 0; k <= 300; ++k) {
    times.push_back(k / 25.0);
  }
  TraceBuilder b(times);
  const VehicleDims dims;
  b.add_vehicle("A", dims);
  b.add_vehicle("B", dims);
  for (std::size_t k = 0; k < times.size(); ++k) {
    const long frame = static_cast<long>(k);
    const bool violating = frame < 50 || (frame >= 125 && frame < 250);
    const double s = 20.0 * times[k];
    const double d = lane_center_left(1);
    b.set_state("A", k, VehicleState{s, 20.0, 0.0, d, 0.0});
    b.set_state("B", k, VehicleState{s + (violating ? 20.0 : 60.0), 20.0, 0.0, d, 0.0});
  }
  return to_highd(std::move(b).build(), 2);
}

void write_corpus(const std::filesystem::path & dir, const std::vector<int> & indices, std::uint64_t seed)
{
  int n = 0;
  for (int index : indices) {
    const DisturbTrace dt = generate(index, seed + static_cast<std::uint64_t>(n));
    const int direction = n % 2 == 0 ? 2 : 1;
    HighdRecording rec = to_highd(*dt.trace, direction);
    const HighdTrack & first = rec.tracks.front();
    // a truck alongside the SV and a car far ahead
    HighdTrack truck = first;
    truck.id = 90;
    truck.vehicle_class = "Truck";
    truck.width = 12.0;
    truck.height = 2.5;
    const double shift = direction == 2 ? 1.0 : -1.0;
    for (auto & r : truck.rows) {
      r.y = rec.lower_markings.front() + (direction == 2 ? 0.5 : -30.0);
      r.x += shift * 5.0;
    }
    HighdTrack far = first;
    far.id = 91;
    for (auto & r : far.rows) {
      r.x += shift * 400.0;
    }
    rec.tracks.push_back(std::move(truck));
    rec.tracks.push_back(std::move(far));
    char id[16];
    std::snprintf(id, sizeof(id), "%02d", n + 1);
    write_highd(dir, id, rec);
    ++n;
  }
}

}  // namespace scenmon::synth
