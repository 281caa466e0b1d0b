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

#include "scenmon/pipeline/highd.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "scenmon/errors.hpp"
#include "scenmon/pipeline/trace_io.hpp"

namespace scenmon
{

namespace
{

bool id_less(const VehicleId & a, const VehicleId & b)
{
  return a.size() != b.size() ? a.size() < b.size() : a < b;
}

/// Minimal reader for the comma-separated highD tables: named columns, no
/// quoting.
class CsvTable
{
public:
  CsvTable(const std::filesystem::path & path) : in_(path), path_(path.string())
  {
    if (!in_) {
      throw ParseError("cannot open '" + path_ + "'", 0);
    }
    std::string line;
    if (!std::getline(in_, line)) {
      throw ParseError("empty file '" + path_ + "'", 1);
    }
    split(line, header_);
    for (std::size_t i = 0; i < header_.size(); ++i) {
      columns_[header_[i]] = i;
    }
  }

  std::size_t column(const std::string & name) const
  {
    auto it = columns_.find(name);
    if (it == columns_.end()) {
      throw MissingColumn("'" + path_ + "' lacks column '" + name + "'");
    }
    return it->second;
  }

  bool has_column(const std::string & name) const { return columns_.count(name) != 0; }

  bool next()
  {
    std::string line;
    while (std::getline(in_, line)) {
      ++row_;
      if (line.find_first_not_of(" \t\r") == std::string::npos) {
        continue;
      }
      split(line, cells_);
      if (cells_.size() < header_.size()) {
        throw ParseError("'" + path_ + "': expected " + std::to_string(header_.size()) + " cells",
          row_);
      }
      return true;
    }
    return false;
  }

  std::size_t row() const { return row_; }
  const std::string & text(std::size_t c) const { return cells_[c]; }

  double number(std::size_t c) const
  {
    const std::string & s = cells_[c];
    double x = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      throw ParseError("'" + path_ + "': bad number '" + s + "' in column " + header_[c], row_);
    }
    return x;
  }

  long integer(std::size_t c) const
  {
    const double x = number(c);
    if (x != std::floor(x)) {
      throw ParseError("'" + path_ + "': expected an integer in column " + header_[c], row_);
    }
    return static_cast<long>(x);
  }

private:
  static void split(const std::string & line, std::vector<std::string> & out)
  {
    out.clear();
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      std::string cell = line.substr(start, comma == std::string::npos ? comma : comma - start);
      while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) {
        cell.pop_back();
      }
      out.push_back(std::move(cell));
      if (comma == std::string::npos) {
        break;
      }
      start = comma + 1;
    }
  }

  std::ifstream in_;
  std::string path_;
  std::vector<std::string> header_;
  std::map<std::string, std::size_t> columns_;
  std::vector<std::string> cells_;
  std::size_t row_ = 1;
};

std::vector<double> parse_markings(const std::string & text, std::size_t row)
{
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) {
      continue;
    }
    double x = 0.0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), x);
    if (ec != std::errc() || ptr != item.data() + item.size()) {
      throw ParseError("bad lane marking '" + item + "'", row);
    }
    out.push_back(x);
  }
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (!(out[i] > out[i - 1])) {
      throw InvalidMap("lane markings are not strictly increasing: '" + text + "'");
    }
  }
  return out;
}

struct TrackMeta
{
  double width = 0.0;
  double height = 0.0;
  std::string vehicle_class;
  int direction = 0;
};

/// Lanelets of one direction; lane 0 is the rightmost in driving direction.
std::vector<Lanelet> direction_lanelets(
  int direction, const std::vector<double> & markings, double s_min, double s_max)
{
  std::vector<Lanelet> out;
  const std::size_t n = markings.size();
  for (std::size_t j = 0; j + 1 < n; ++j) {
    Lanelet ll;
    ll.id = "dir" + std::to_string(direction) + "_lane" + std::to_string(j);
    ll.s_min = s_min;
    ll.s_max = s_max;
    if (direction == 1) {
      ll.d_right = markings[j] - markings[0];
      ll.d_left = markings[j + 1] - markings[0];
    } else {
      ll.d_right = markings[n - 1] - markings[n - 1 - j];
      ll.d_left = markings[n - 1] - markings[n - 2 - j];
    }
    out.push_back(std::move(ll));
  }
  return out;
}

}  // namespace

const VehicleSeries & DirectionData::vehicle(const VehicleId & id) const
{
  auto it = std::lower_bound(vehicles.begin(), vehicles.end(), id,
    [](const VehicleSeries & v, const VehicleId & key) { return id_less(v.id, key); });
  if (it == vehicles.end() || it->id != id) {
    throw VehicleAbsent("no vehicle '" + id + "' in direction " + std::to_string(direction));
  }
  return *it;
}

Trace DirectionData::trace(const std::vector<VehicleId> & ids, long f0, long f1, double frame_rate) const
{
  std::vector<double> times;
  for (long f = f0; f <= f1; ++f) {
    times.push_back(static_cast<double>(f) / frame_rate);
  }
  TraceBuilder b(std::move(times));
  for (const VehicleId & id : ids) {
    const VehicleSeries & vs = vehicle(id);
    b.add_vehicle(id, vs.dims);
    for (long f = std::max(f0, vs.first_frame); f <= std::min(f1, vs.last_frame()); ++f) {
      b.set_state(id, static_cast<std::size_t>(f - f0), vs.at(f));
    }
  }
  return std::move(b).build();
}

Trace DirectionData::trace(double frame_rate) const
{
  if (vehicles.empty()) {
    throw EmptyDomain("direction " + std::to_string(direction) + " has no vehicles");
  }
  long f0 = vehicles.front().first_frame;
  long f1 = vehicles.front().last_frame();
  std::vector<VehicleId> ids;
  for (const auto & v : vehicles) {
    f0 = std::min(f0, v.first_frame);
    f1 = std::max(f1, v.last_frame());
    ids.push_back(v.id);
  }
  return trace(ids, f0, f1, frame_rate);
}

HighdFiles highd_files(const std::filesystem::path & dir, const std::string & id)
{
  return {dir / (id + "_tracks.csv"), dir / (id + "_tracksMeta.csv"),
    dir / (id + "_recordingMeta.csv")};
}

std::vector<std::string> list_recordings(const std::filesystem::path & dir)
{
  std::vector<std::string> out;
  if (!std::filesystem::is_directory(dir)) {
    return out;
  }
  const std::string suffix = "_tracks.csv";
  for (const auto & entry : std::filesystem::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.size() > suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
      out.push_back(name.substr(0, name.size() - suffix.size()));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Recording ingest(const HighdFiles & files, const std::string & id, const PipelineParams & params)
{
  Recording rec;
  rec.id = id;

  std::vector<double> upper;
  std::vector<double> lower;
  {
    CsvTable meta(files.recording_meta);
    const std::size_t c_rate = meta.column("frameRate");
    const std::size_t c_up = meta.column("upperLaneMarkings");
    const std::size_t c_low = meta.column("lowerLaneMarkings");
    if (!meta.next()) {
      throw ParseError("recording metadata has no rows", 2);
    }
    rec.frame_rate = meta.number(c_rate);
    if (!(rec.frame_rate > 0.0)) {
      throw ParseError("frame rate must be positive", meta.row());
    }
    if (rec.frame_rate != params.frame_rate_hz) {
      throw InconsistentFrameRate("recording " + id + " has frame rate " +
        format_double(rec.frame_rate) + " Hz, configured " + format_double(params.frame_rate_hz));
    }
    upper = parse_markings(meta.text(c_up), meta.row());
    lower = parse_markings(meta.text(c_low), meta.row());
  }

  std::map<long, TrackMeta> metas;
  {
    CsvTable tm(files.tracks_meta);
    const std::size_t c_id = tm.column("id");
    const std::size_t c_w = tm.column("width");
    const std::size_t c_h = tm.column("height");
    const std::size_t c_cls = tm.column("class");
    const std::size_t c_dir = tm.column("drivingDirection");
    while (tm.next()) {
      TrackMeta m;
      m.width = tm.number(c_w);
      m.height = tm.number(c_h);
      m.vehicle_class = tm.text(c_cls);
      m.direction = static_cast<int>(tm.integer(c_dir));
      if (m.direction != 1 && m.direction != 2) {
        throw ParseError("driving direction must be 1 or 2", tm.row());
      }
      metas[tm.integer(c_id)] = m;
    }
  }

  std::map<long, VehicleSeries> series[2];
  {
    CsvTable tr(files.tracks);
    const std::size_t c_frame = tr.column("frame");
    const std::size_t c_id = tr.column("id");
    const std::size_t c_x = tr.column("x");
    const std::size_t c_y = tr.column("y");
    const std::size_t c_w = tr.column("width");
    const std::size_t c_h = tr.column("height");
    const std::size_t c_vx = tr.column("xVelocity");
    const std::size_t c_vy = tr.column("yVelocity");
    const std::size_t c_ax = tr.column("xAcceleration");
    tr.column("yAcceleration");
    tr.column("laneId");
    while (tr.next()) {
      ++rec.stats.rows_read;
      const long vid = tr.integer(c_id);
      auto mit = metas.find(vid);
      if (mit == metas.end()) {
        throw ParseError("vehicle " + std::to_string(vid) + " missing from track metadata", tr.row());
      }
      const TrackMeta & m = mit->second;
      if (params.cars_only && m.vehicle_class != "Car") {
        ++rec.stats.rows_dropped;
        continue;
      }
      const long frame = tr.integer(c_frame);
      const double x = tr.number(c_x);
      const double y = tr.number(c_y);
      const double w = tr.number(c_w);
      const double h = tr.number(c_h);
      const double vx = tr.number(c_vx);
      const double vy = tr.number(c_vy);
      const double ax = tr.number(c_ax);

      VehicleState st;
      double lon = 0.0;
      double lat = 0.0;
      if (m.direction == 2) {
        if (lower.empty()) {
          throw InvalidMap("recording " + id + " has no lower lane markings");
        }
        st.s = x + w;
        st.d = lower.back() - y;
        lon = vx;
        lat = -vy;
        st.a = ax;
      } else {
        if (upper.empty()) {
          throw InvalidMap("recording " + id + " has no upper lane markings");
        }
        st.s = -x;
        st.d = y + h - upper.front();
        lon = -vx;
        lat = vy;
        st.a = -ax;
      }
      st.v = std::hypot(lon, lat);
      st.theta = std::atan2(lat, lon);

      auto & dir_series = series[m.direction - 1];
      auto [it, fresh] = dir_series.try_emplace(vid);
      VehicleSeries & vs = it->second;
      if (fresh) {
        vs.id = std::to_string(vid);
        vs.dims = VehicleDims{w, h};
        vs.vehicle_class = m.vehicle_class;
        vs.first_frame = frame;
      } else if (frame != vs.last_frame() + 1) {
        throw ParseError("frames of vehicle " + std::to_string(vid) + " are not contiguous", tr.row());
      }
      vs.states.push_back(st);
    }
  }

  for (int dir = 1; dir <= 2; ++dir) {
    auto & dir_series = series[dir - 1];
    if (dir_series.empty()) {
      continue;
    }
    const std::vector<double> & markings = dir == 1 ? upper : lower;
    if (markings.size() < 2) {
      throw InvalidMap("direction " + std::to_string(dir) + " needs at least two lane markings");
    }
    DirectionData dd;
    dd.direction = dir;
    double s_lo = kInfinity;
    double s_hi = -kInfinity;
    for (auto & [vid, vs] : dir_series) {
      for (const VehicleState & st : vs.states) {
        s_lo = std::min(s_lo, st.s - vs.dims.length);
        s_hi = std::max(s_hi, st.s);
      }
      dd.vehicles.push_back(std::move(vs));
    }
    dd.lanelets = direction_lanelets(dir, markings, std::floor(s_lo) - 100.0, std::ceil(s_hi) + 100.0);
    dd.road = std::make_shared<const RoadNetwork>(build_lanes(dd.lanelets));
    rec.stats.vehicles += dd.vehicles.size();
    rec.directions.push_back(std::move(dd));
  }
  return rec;
}

HighdRow highd_row(const VehicleState & state, const VehicleDims & dims, int direction,
  const std::vector<double> & markings)
{
  HighdRow r;
  const double lon = state.v * std::cos(state.theta);
  const double lat = state.v * std::sin(state.theta);
  if (direction == 2) {
    r.x = state.s - dims.length;
    r.y = markings.back() - state.d;
    r.x_velocity = lon;
    r.y_velocity = -lat;
    r.x_acceleration = state.a;
  } else {
    r.x = -state.s;
    r.y = state.d - dims.width + markings.front();
    r.x_velocity = -lon;
    r.y_velocity = lat;
    r.x_acceleration = -state.a;
  }
  return r;
}

void write_highd(const std::filesystem::path & dir, const std::string & id, const HighdRecording & rec)
{
  std::filesystem::create_directories(dir);
  const HighdFiles files = highd_files(dir, id);
  auto join = [](const std::vector<double> & xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      out += (i ? ";" : "") + format_double(xs[i]);
    }
    return out;
  };
  {
    std::ofstream out(files.recording_meta);
    out << "id,frameRate,locationId,upperLaneMarkings,lowerLaneMarkings\n";
    out << id << ',' << format_double(rec.frame_rate) << ",1," << join(rec.upper_markings) << ','
        << join(rec.lower_markings) << '\n';
  }
  {
    std::ofstream out(files.tracks_meta);
    out << "id,width,height,initialFrame,finalFrame,numFrames,class,drivingDirection\n";
    for (const HighdTrack & t : rec.tracks) {
      const long n = static_cast<long>(t.rows.size());
      out << t.id << ',' << format_double(t.width) << ',' << format_double(t.height) << ','
          << t.first_frame << ',' << t.first_frame + n - 1 << ',' << n << ',' << t.vehicle_class
          << ',' << t.driving_direction << '\n';
    }
  }
  struct Line
  {
    long frame;
    int id;
    const HighdTrack * track;
    const HighdRow * row;
  };
  std::vector<Line> lines;
  for (const HighdTrack & t : rec.tracks) {
    for (std::size_t k = 0; k < t.rows.size(); ++k) {
      lines.push_back({t.first_frame + static_cast<long>(k), t.id, &t, &t.rows[k]});
    }
  }
  std::sort(lines.begin(), lines.end(), [](const Line & a, const Line & b) {
    return a.id != b.id ? a.id < b.id : a.frame < b.frame;
  });
  std::ofstream out(files.tracks);
  out << "frame,id,x,y,width,height,xVelocity,yVelocity,xAcceleration,yAcceleration,laneId\n";
  for (const Line & l : lines) {
    const HighdRow & r = *l.row;
    out << l.frame << ',' << l.id << ',' << format_double(r.x) << ',' << format_double(r.y) << ','
        << format_double(l.track->width) << ',' << format_double(l.track->height) << ','
        << format_double(r.x_velocity) << ',' << format_double(r.y_velocity) << ','
        << format_double(r.x_acceleration) << ',' << format_double(r.y_acceleration) << ','
        << r.lane_id << '\n';
  }
}

}  // namespace scenmon
