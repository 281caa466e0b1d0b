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

#include "scenmon/pipeline/trace_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "scenmon/errors.hpp"
#include "scenmon/stl/formula.hpp"

namespace scenmon
{

using json = nlohmann::ordered_json;

FilterStats & FilterStats::operator+=(const FilterStats & other)
{
  recordings += other.recordings;
  rows_read += other.rows_read;
  rows_dropped += other.rows_dropped;
  pairs_scanned += other.pairs_scanned;
  pairs_violating += other.pairs_violating;
  pairs_kept += other.pairs_kept;
  return *this;
}

void PipelineParams::validate() const
{
  rss.validate();
  scenario.validate();
  if (!(frame_rate_hz > 0.0) || !std::isfinite(frame_rate_hz)) {
    throw ConfigError("frame_rate_hz must be positive");
  }
}

const char * to_string(InterpolationMode mode)
{
  return mode == InterpolationMode::kStepHold ? "step-hold" : "linear";
}

InterpolationMode interpolation_from_string(const std::string & text)
{
  if (text == "step-hold" || text == "step") {
    return InterpolationMode::kStepHold;
  }
  if (text == "linear") {
    return InterpolationMode::kLinear;
  }
  throw ConfigError("unknown interpolation mode '" + text + "'");
}

const char * to_string(AngleConvention angle)
{
  return angle == AngleConvention::kPathAligned ? "path-aligned" : "literal";
}

AngleConvention angle_from_string(const std::string & text)
{
  if (text == "path-aligned") {
    return AngleConvention::kPathAligned;
  }
  if (text == "literal") {
    return AngleConvention::kLiteral;
  }
  throw ConfigError("unknown angle convention '" + text + "'");
}

std::string format_double(double x)
{
  if (std::isnan(x)) {
    return "nan";
  }
  return stl::format_number(x);
}

namespace
{

const std::vector<std::string> kTraceColumns = {
  "t", "vehicle", "length", "width", "s", "v", "a", "d", "theta"};

std::vector<std::string> split_csv(const std::string & line)
{
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) {
      cell.pop_back();
    }
    const auto first = cell.find_first_not_of(' ');
    out.push_back(first == std::string::npos ? std::string() : cell.substr(first));
  }
  if (!line.empty() && line.back() == ',') {
    out.emplace_back();
  }
  return out;
}

double parse_double(const std::string & text, std::size_t row, const std::string & column)
{
  if (text == "inf" || text == "-inf" || text == "nan") {
    return text == "inf" ? kInfinity : text == "-inf" ? -kInfinity : std::nan("");
  }
  double x = 0.0;
  const char * end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, x);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ParseError("bad number '" + text + "' in column " + column, row);
  }
  return x;
}

}  // namespace

void write_trace_csv(std::ostream & out, const Trace & trace)
{
  for (std::size_t c = 0; c < kTraceColumns.size(); ++c) {
    out << (c ? "," : "") << kTraceColumns[c];
  }
  out << '\n';
  const auto & times = trace.sample_times();
  for (std::size_t k = 0; k < times.size(); ++k) {
    for (const auto & [id, track] : trace.vehicles()) {
      if (!track.present[k]) {
        continue;
      }
      const VehicleState & st = track.states[k];
      out << format_double(times[k]) << ',' << id << ',' << format_double(track.dims.length) << ','
          << format_double(track.dims.width) << ',' << format_double(st.s) << ','
          << format_double(st.v) << ',' << format_double(st.a) << ',' << format_double(st.d) << ','
          << format_double(st.theta) << '\n';
    }
  }
}

Trace read_trace_csv(std::istream & in)
{
  std::string line;
  if (!std::getline(in, line)) {
    throw InvalidTrace("empty trace file");
  }
  const std::vector<std::string> header = split_csv(line);
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) {
    col[header[i]] = i;
  }
  for (const auto & name : kTraceColumns) {
    if (!col.count(name)) {
      throw MissingColumn("trace file lacks column '" + name + "'");
    }
  }

  struct Row
  {
    double t;
    VehicleId id;
    VehicleDims dims;
    VehicleState st;
  };
  std::vector<Row> rows;
  std::vector<double> times;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    const std::vector<std::string> cells = split_csv(line);
    if (cells.size() < header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) + " cells", row);
    }
    auto num = [&](const std::string & name) { return parse_double(cells[col[name]], row, name); };
    Row r;
    r.t = num("t");
    r.id = cells[col["vehicle"]];
    if (r.id.empty()) {
      throw ParseError("empty vehicle id", row);
    }
    r.dims = VehicleDims{num("length"), num("width")};
    r.st = VehicleState{num("s"), num("v"), num("a"), num("d"), num("theta")};
    if (!std::isfinite(r.t)) {
      throw ParseError("non-finite time", row);
    }
    if (!times.empty() && r.t < times.back()) {
      throw ParseError("rows are not ordered by time", row);
    }
    if (times.empty() || r.t > times.back()) {
      times.push_back(r.t);
    }
    rows.push_back(std::move(r));
  }
  if (times.size() < 2) {
    throw InvalidTrace("a trace needs at least 2 distinct sample times");
  }

  TraceBuilder b(times);
  std::set<VehicleId> seen;
  std::size_t k = 0;
  for (const Row & r : rows) {
    while (times[k] != r.t) {
      ++k;
    }
    if (seen.insert(r.id).second) {
      b.add_vehicle(r.id, r.dims);
    }
    b.set_state(r.id, k, r.st);
  }
  return std::move(b).build();
}

Trace read_trace_csv_file(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) {
    throw InvalidTrace("cannot open trace file '" + path.string() + "'");
  }
  return read_trace_csv(in);
}

namespace
{

json params_to_json(const PipelineParams & p)
{
  json j;
  j["rss"] = {{"rho", p.rss.rho}, {"a_max", p.rss.a_max}, {"b_min", p.rss.b_min},
    {"b_max", p.rss.b_max}, {"a_max_lat", p.rss.a_max_lat}, {"b_min_lat", p.rss.b_min_lat}};
  j["scenario"] = {{"min_danger", p.scenario.min_danger}, {"min_safe", p.scenario.min_safe}};
  j["interpolation"] = to_string(p.mode);
  j["angle_convention"] = to_string(p.angle);
  j["frame_rate_hz"] = p.frame_rate_hz;
  j["cars_only"] = p.cars_only;
  j["three_vehicle"] = p.three_vehicle;
  return j;
}

PipelineParams params_from_json(const json & j)
{
  PipelineParams p;
  const json & r = j.at("rss");
  p.rss = RssParams{r.at("rho").get<double>(), r.at("a_max").get<double>(),
    r.at("b_min").get<double>(), r.at("b_max").get<double>(), r.at("a_max_lat").get<double>(),
    r.at("b_min_lat").get<double>()};
  p.scenario.min_danger = j.at("scenario").at("min_danger").get<double>();
  p.scenario.min_safe = j.at("scenario").at("min_safe").get<double>();
  p.mode = interpolation_from_string(j.at("interpolation").get<std::string>());
  p.angle = angle_from_string(j.at("angle_convention").get<std::string>());
  p.frame_rate_hz = j.at("frame_rate_hz").get<double>();
  p.cars_only = j.at("cars_only").get<bool>();
  p.three_vehicle = j.at("three_vehicle").get<bool>();
  return p;
}

json stats_to_json(const FilterStats & s)
{
  return json{{"recordings", s.recordings}, {"rows_read", s.rows_read},
    {"rows_dropped", s.rows_dropped}, {"pairs_scanned", s.pairs_scanned},
    {"pairs_violating", s.pairs_violating}, {"pairs_kept", s.pairs_kept}};
}

FilterStats stats_from_json(const json & j)
{
  FilterStats s;
  s.recordings = j.value("recordings", std::size_t{0});
  s.rows_read = j.value("rows_read", std::size_t{0});
  s.rows_dropped = j.value("rows_dropped", std::size_t{0});
  s.pairs_scanned = j.value("pairs_scanned", std::size_t{0});
  s.pairs_violating = j.value("pairs_violating", std::size_t{0});
  s.pairs_kept = j.value("pairs_kept", std::size_t{0});
  return s;
}

void write_text(const std::filesystem::path & path, const std::string & text)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write '" + path.string() + "'");
  }
  out << text;
}

}  // namespace

void write_trace_dir(const std::filesystem::path & dir, const TraceSet & set)
{
  namespace fs = std::filesystem;
  fs::create_directories(dir / "traces");
  fs::create_directories(dir / "maps");

  json entries = json::array();
  std::set<std::string> maps_written;
  for (const DisturbTrace & t : set.traces) {
    if (!t.trace || !t.road) {
      throw InvalidTrace("trace '" + t.name + "' has no data");
    }
    const std::string file = "traces/" + t.name + ".csv";
    const std::string map = "maps/" + t.map_name + ".jsonl";
    std::ostringstream csv;
    write_trace_csv(csv, *t.trace);
    write_text(dir / file, csv.str());
    if (maps_written.insert(t.map_name).second) {
      std::ostringstream m;
      write_map(m, lanelets_of(*t.road));
      write_text(dir / map, m.str());
    }
    json e;
    e["name"] = t.name;
    e["file"] = file;
    e["map"] = map;
    e["recording"] = t.recording;
    e["direction"] = t.direction;
    e["sv"] = t.sv;
    e["pov"] = t.pov;
    e["pov1_candidates"] = t.pov1_candidates;
    e["domain"] = {t.trace->domain().lo, t.trace->domain().hi};
    entries.push_back(std::move(e));
  }

  json manifest;
  manifest["format"] = "scenmon-trace-set";
  manifest["version"] = 1;
  manifest["params"] = params_to_json(set.params);
  manifest["stats"] = stats_to_json(set.stats);
  manifest["traces"] = std::move(entries);
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");
}

TraceSet read_trace_dir(const std::filesystem::path & dir)
{
  std::ifstream in(dir / "manifest.json");
  if (!in) {
    throw InvalidTrace("no manifest.json in '" + dir.string() + "'");
  }
  TraceSet set;
  json manifest;
  try {
    manifest = json::parse(in);
    set.params = params_from_json(manifest.at("params"));
    set.stats = stats_from_json(manifest.value("stats", json::object()));
  } catch (const json::exception & e) {
    throw ParseError(std::string("malformed manifest: ") + e.what(), 1);
  }

  std::map<std::string, std::shared_ptr<const RoadNetwork>> roads;
  std::size_t row = 0;
  for (const json & e : manifest.at("traces")) {
    ++row;
    DisturbTrace t;
    std::string file;
    std::string map;
    try {
      t.name = e.at("name").get<std::string>();
      file = e.at("file").get<std::string>();
      map = e.at("map").get<std::string>();
      t.recording = e.at("recording").get<std::string>();
      t.direction = e.at("direction").get<int>();
      t.sv = e.at("sv").get<std::string>();
      t.pov = e.at("pov").get<std::string>();
      t.pov1_candidates = e.value("pov1_candidates", std::vector<std::string>{});
    } catch (const json::exception & ex) {
      throw ParseError(std::string("malformed manifest entry: ") + ex.what(), row);
    }
    t.map_name = std::filesystem::path(map).stem().string();
    auto it = roads.find(map);
    if (it == roads.end()) {
      auto road = std::make_shared<const RoadNetwork>(build_lanes(read_map_file((dir / map).string())));
      it = roads.emplace(map, std::move(road)).first;
    }
    t.road = it->second;
    t.trace = std::make_shared<const Trace>(read_trace_csv_file(dir / file));
    set.traces.push_back(std::move(t));
  }
  return set;
}

}  // namespace scenmon
