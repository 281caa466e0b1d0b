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

#include "scenmon/pipeline/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <optional>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "scenmon/errors.hpp"
#include "scenmon/pipeline/trace_io.hpp"
#include "scenmon/rss.hpp"
#include "scenmon/stl/monitor.hpp"
#include "scenmon/stl/parser.hpp"

namespace scenmon
{

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)> & fn)
{
  if (jobs == 0) {
    jobs = std::max(1u, std::thread::hardware_concurrency());
  }
  const std::size_t workers = std::min<std::size_t>(jobs, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      fn(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    while (!failed.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) {
        return;
      }
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) {
          error = std::current_exception();
        }
        failed = true;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back(work);
  }
  for (auto & t : pool) {
    t.join();
  }
  if (error) {
    std::rethrow_exception(error);
  }
}

PairScan enumerate_pairs(const Recording & rec, const PipelineParams & params, unsigned jobs)
{
  PairScan out;
  for (std::size_t di = 0; di < rec.directions.size(); ++di) {
    const DirectionData & dd = rec.directions[di];
    const std::size_t n = dd.vehicles.size();
    std::vector<std::vector<CandidatePair>> found(n);
    std::vector<std::size_t> scanned(n, 0);
    parallel_for(n, jobs, [&](std::size_t i) {
      const VehicleSeries & a = dd.vehicles[i];
      for (std::size_t j = i + 1; j < n; ++j) {
        const VehicleSeries & b = dd.vehicles[j];
        const long f0 = std::max(a.first_frame, b.first_frame);
        const long f1 = std::min(a.last_frame(), b.last_frame());
        if (f0 > f1) {
          continue;
        }
        scanned[i] += 2;
        for (long f = f0; f <= f1; ++f) {
          if (rss_violation({a.at(f), a.dims}, {b.at(f), b.dims}, params.rss, params.angle)) {
            found[i].push_back({di, a.id, b.id, f0, f1});
            found[i].push_back({di, b.id, a.id, f0, f1});
            break;
          }
        }
      }
    });
    std::vector<CandidatePair> pairs;
    for (std::size_t i = 0; i < n; ++i) {
      out.scanned += scanned[i];
      pairs.insert(pairs.end(), found[i].begin(), found[i].end());
    }
    auto key_less = [](const VehicleId & x, const VehicleId & y) {
      return x.size() != y.size() ? x.size() < y.size() : x < y;
    };
    std::sort(pairs.begin(), pairs.end(), [&](const CandidatePair & x, const CandidatePair & y) {
      if (x.sv != y.sv) {
        return key_less(x.sv, y.sv);
      }
      return key_less(x.pov, y.pov);
    });
    out.pairs.insert(out.pairs.end(), pairs.begin(), pairs.end());
  }
  return out;
}

namespace
{

stl::EvalContext pair_context(std::shared_ptr<const Trace> trace,
  std::shared_ptr<const RoadNetwork> road, const DisturbTrace & meta, const PipelineParams & params)
{
  stl::EvalContext ctx;
  ctx.trace = std::move(trace);
  ctx.road = std::move(road);
  ctx.bindings["SV"] = meta.sv;
  ctx.bindings["POV"] = meta.pov;
  ctx.rss = params.rss;
  ctx.scenario = params.scenario;
  ctx.mode = params.mode;
  ctx.angle = params.angle;
  return ctx;
}

/// Vehicles that can play POV1 between SV and POV2 at the given frame: all
/// three in one lane, ordered SV, POV1, POV2 by front position.
std::vector<VehicleId> pov1_candidates(
  const DirectionData & dd, const VehicleSeries & sv, const VehicleSeries & pov, long frame)
{
  std::vector<VehicleId> out;
  const Footprint fp_sv = footprint(sv.at(frame), sv.dims);
  const Footprint fp_pov = footprint(pov.at(frame), pov.dims);
  const double front_sv = front_rear(sv.at(frame), sv.dims).front;
  const double front_pov = front_rear(pov.at(frame), pov.dims).front;
  for (const VehicleSeries & c : dd.vehicles) {
    if (c.id == sv.id || c.id == pov.id || !c.covers(frame)) {
      continue;
    }
    const double front_c = front_rear(c.at(frame), c.dims).front;
    if (!(front_c > front_sv && front_pov > front_c)) {
      continue;
    }
    const Footprint fp_c = footprint(c.at(frame), c.dims);
    for (const auto & [lane, unused] : dd.road->lanes()) {
      if (dd.road->at_lane(fp_sv, lane) && dd.road->at_lane(fp_c, lane) &&
          dd.road->at_lane(fp_pov, lane)) {
        out.push_back(c.id);
        break;
      }
    }
  }
  return out;
}

}  // namespace

std::optional<DisturbTrace> filter_and_trim(
  const Recording & rec, const CandidatePair & pair, const PipelineParams & params)
{
  const DirectionData & dd = rec.directions.at(pair.direction_index);
  const VehicleSeries & sv = dd.vehicle(pair.sv);
  const VehicleSeries & pov = dd.vehicle(pair.pov);

  DisturbTrace out;
  out.recording = rec.id;
  out.direction = dd.direction;
  out.sv = pair.sv;
  out.pov = pair.pov;
  out.name = rec.id + "_" + std::to_string(dd.direction) + "_" + pair.sv + "_" + pair.pov;
  out.map_name = rec.id + "_dir" + std::to_string(dd.direction);
  out.road = dd.road;

  auto window = std::make_shared<const Trace>(
    dd.trace({pair.sv, pair.pov}, pair.first_frame, pair.last_frame, rec.frame_rate));
  const std::vector<double> & times = window->sample_times();
  const std::size_t n = times.size();
  if (n < 2) {
    return std::nullopt;
  }

  static const stl::Formula gate = stl::parse("initSafe(SV, POV) & F danger(SV, POV)");
  stl::Monitor monitor(gate, pair_context(window, dd.road, out, params));
  const stl::Signal<bool> & holds = monitor.bool_signal();
  std::size_t start = n;
  for (std::size_t k = 0; k < n; ++k) {
    if (holds.value(times[k])) {
      start = k;
      break;
    }
  }
  if (start == n) {
    return std::nullopt;
  }
  std::size_t last_violation = n;
  for (std::size_t k = n; k-- > start;) {
    const long f = pair.first_frame + static_cast<long>(k);
    if (rss_violation({sv.at(f), sv.dims}, {pov.at(f), pov.dims}, params.rss, params.angle)) {
      last_violation = k;
      break;
    }
  }
  if (last_violation == n) {
    return std::nullopt;
  }
  const std::size_t end = std::min(last_violation + 1, n - 1);
  if (end <= start) {
    return std::nullopt;
  }

  const long f0 = pair.first_frame + static_cast<long>(start);
  const long f1 = pair.first_frame + static_cast<long>(end);
  std::vector<VehicleId> ids = {pair.sv, pair.pov};
  if (params.three_vehicle) {
    out.pov1_candidates = pov1_candidates(dd, sv, pov, f0);
    ids.insert(ids.end(), out.pov1_candidates.begin(), out.pov1_candidates.end());
  }
  out.trace = std::make_shared<const Trace>(dd.trace(ids, f0, f1, rec.frame_rate));

  const stl::EvalContext ctx = pair_context(out.trace, dd.road, out, params);
  if (!stl::eval_bool(danger_arises(), ctx, out.trace->domain().lo)) {
    throw InternalError("trimmed trace " + out.name + " does not satisfy dangerArises");
  }
  return out;
}

TraceSet filter_directory(const std::filesystem::path & dir, const PipelineParams & params, unsigned jobs)
{
  params.validate();
  const std::vector<std::string> ids = list_recordings(dir);
  if (ids.empty()) {
    throw ConfigError("no recordings found in '" + dir.string() + "'");
  }
  TraceSet set;
  set.params = params;
  for (const std::string & id : ids) {
    const Recording rec = ingest(highd_files(dir, id), id, params);
    ++set.stats.recordings;
    set.stats.rows_read += rec.stats.rows_read;
    set.stats.rows_dropped += rec.stats.rows_dropped;
    const PairScan scan = enumerate_pairs(rec, params, jobs);
    set.stats.pairs_scanned += scan.scanned;
    set.stats.pairs_violating += scan.pairs.size();
    std::vector<std::optional<DisturbTrace>> kept(scan.pairs.size());
    parallel_for(scan.pairs.size(), jobs,
      [&](std::size_t i) { kept[i] = filter_and_trim(rec, scan.pairs[i], params); });
    for (auto & t : kept) {
      if (t) {
        set.traces.push_back(std::move(*t));
      }
    }
  }
  set.stats.pairs_kept = set.traces.size();
  return set;
}

std::optional<double> EvaluationReport::recall() const
{
  if (traces == 0) {
    return std::nullopt;
  }
  return static_cast<double>(matching) / static_cast<double>(traces);
}

std::vector<int> default_indices(bool three_vehicle)
{
  if (three_vehicle) {
    return {1, 2, 3, 4, 5, 6, 7, 8};
  }
  return {1, 3, 4, 5, 6, 7, 8};
}

namespace
{

/// Many formulas evaluated through one monitor so that shared subformulas
/// are computed once.
class Bundle
{
public:
  std::size_t add(stl::Formula f)
  {
    parts_.push_back(std::move(f));
    return parts_.size() - 1;
  }

  bool empty() const { return parts_.empty(); }

  /// Truth of each added formula at time t.
  std::vector<bool> evaluate(const stl::EvalContext & ctx, double t) const
  {
    std::vector<bool> out(parts_.size(), false);
    if (parts_.empty()) {
      return out;
    }
    stl::Formula root = parts_.back();
    for (std::size_t i = parts_.size() - 1; i-- > 0;) {
      root = parts_[i] & root;
    }
    stl::Monitor m(root, ctx);
    std::size_t pos = 0;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      const bool last = i + 1 == parts_.size();
      const std::size_t at = last ? pos : pos + 1;
      out[i] = m.bool_signal(at).value(t);
      pos = at + parts_[i].size();
    }
    return out;
  }

private:
  std::vector<stl::Formula> parts_;
};

/// Lane with the largest overlap of the vehicle at its first present sample.
std::optional<LaneId> initial_lane(const DisturbTrace & trace, const VehicleId & id)
{
  if (!trace.trace->has_vehicle(id)) {
    return std::nullopt;
  }
  const VehicleTrack & track = trace.trace->track(id);
  for (std::size_t k = 0; k < track.states.size(); ++k) {
    if (track.present[k]) {
      return trace.road->primary_lane(footprint(track.states[k], track.dims));
    }
  }
  return std::nullopt;
}

/// Per-trace scenario truths, [variant][index position].
std::vector<std::vector<bool>> evaluate_trace(const std::vector<SpecVariant> & variants,
  const std::vector<int> & indices, const DisturbTrace & trace, const PipelineParams & params)
{
  stl::EvalContext ctx = pair_context(trace.trace, trace.road, trace, params);
  const std::optional<LaneId> sv_lane = initial_lane(trace, trace.sv);
  const std::optional<LaneId> pov_lane = initial_lane(trace, trace.pov);
  if (sv_lane) {
    ctx.bindings["L_SV"] = *sv_lane;
  }
  if (pov_lane) {
    ctx.bindings["L_POV"] = *pov_lane;
  }
  std::vector<std::string> pov1_roles;
  for (const VehicleId & c : trace.pov1_candidates) {
    const std::string role = "POV1_" + std::to_string(pov1_roles.size());
    ctx.bindings[role] = c;
    pov1_roles.push_back(role);
  }

  Bundle bundle;
  // owner[v][i] lists the bundle slots whose disjunction decides scenario i
  std::vector<std::vector<std::vector<std::size_t>>> owner(
    variants.size(), std::vector<std::vector<std::size_t>>(indices.size()));
  for (std::size_t v = 0; v < variants.size(); ++v) {
    for (std::size_t i = 0; i < indices.size(); ++i) {
      // L is the lane SV starts in, except for the lane-entry row where it
      // is the lane SV enters, taken as POV's initial lane.
      const bool enters = (indices[i] - 1) % 8 + 1 == 7;
      if (!(enters ? pov_lane : sv_lane)) {
        continue;
      }
      ScenarioRoles roles;
      roles.lane = enters ? "L_POV" : "L_SV";
      if (pov_count(indices[i]) == 2) {
        for (const std::string & pov1 : pov1_roles) {
          roles.povs = {pov1, "POV"};
          owner[v][i].push_back(bundle.add(scenario(indices[i], variants[v], roles)));
        }
      } else {
        owner[v][i].push_back(bundle.add(scenario(indices[i], variants[v], roles)));
      }
    }
  }
  const std::vector<bool> truth = bundle.evaluate(ctx, trace.trace->domain().lo);
  std::vector<std::vector<bool>> out(variants.size(), std::vector<bool>(indices.size(), false));
  for (std::size_t v = 0; v < variants.size(); ++v) {
    for (std::size_t i = 0; i < indices.size(); ++i) {
      for (std::size_t slot : owner[v][i]) {
        if (truth[slot]) {
          out[v][i] = true;
          break;
        }
      }
    }
  }
  return out;
}

}  // namespace

bool scenario_holds(int index, SpecVariant variant, const DisturbTrace & trace,
  const PipelineParams & params)
{
  return evaluate_trace({variant}, {index}, trace, params)[0][0];
}

std::vector<EvaluationReport> evaluate(const std::vector<SpecVariant> & variants,
  const std::vector<int> & indices, const std::vector<DisturbTrace> & traces,
  const PipelineParams & params, unsigned jobs)
{
  SpecSet check{SpecVariant::kBase, indices};
  check.validate();
  std::vector<std::vector<std::vector<bool>>> results(traces.size());
  parallel_for(traces.size(), jobs,
    [&](std::size_t t) { results[t] = evaluate_trace(variants, indices, traces[t], params); });

  std::vector<EvaluationReport> reports;
  for (std::size_t v = 0; v < variants.size(); ++v) {
    EvaluationReport r;
    r.spec_set = to_string(variants[v]);
    r.min_danger = params.scenario.min_danger;
    r.indices = indices;
    r.traces = traces.size();
    r.counts.assign(indices.size(), 0);
    for (std::size_t t = 0; t < traces.size(); ++t) {
      TraceVerdicts tv;
      tv.name = traces[t].name;
      tv.scenarios = results[t][v];
      for (std::size_t i = 0; i < indices.size(); ++i) {
        if (tv.scenarios[i]) {
          ++r.counts[i];
          tv.matching = true;
        }
      }
      r.matching += tv.matching ? 1 : 0;
      r.per_trace.push_back(std::move(tv));
    }
    reports.push_back(std::move(r));
  }
  return reports;
}

namespace
{

std::string percent(const std::optional<double> & x)
{
  if (!x) {
    return "n/a";
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f%%", *x * 100.0);
  return buf;
}

std::string pad(const std::string & s, std::size_t width, bool left = false)
{
  if (s.size() >= width) {
    return s;
  }
  const std::string fill(width - s.size(), ' ');
  return left ? s + fill : fill + s;
}

}  // namespace

void write_report_table(std::ostream & out, const std::vector<EvaluationReport> & reports)
{
  if (reports.empty()) {
    return;
  }
  const std::vector<int> & idx = reports.front().indices;
  out << pad("spec set", 20, true) << pad("min_danger", 11) << pad("|T|", 9) << pad("matching", 10)
      << pad("recall", 8);
  for (int i : idx) {
    out << pad("s" + std::to_string(i), 8);
  }
  out << '\n';
  for (const EvaluationReport & r : reports) {
    out << pad(r.spec_set, 20, true) << pad(format_double(r.min_danger), 11)
        << pad(std::to_string(r.traces), 9) << pad(std::to_string(r.matching), 10)
        << pad(percent(r.recall()), 8);
    for (std::size_t c : r.counts) {
      out << pad(std::to_string(c), 8);
    }
    out << '\n';
  }
}

void write_report_jsonl(std::ostream & out, const std::vector<EvaluationReport> & reports)
{
  for (const EvaluationReport & r : reports) {
    nlohmann::ordered_json j;
    j["spec_set"] = r.spec_set;
    j["min_danger"] = r.min_danger;
    j["traces"] = r.traces;
    j["matching"] = r.matching;
    const auto recall = r.recall();
    j["recall"] = recall ? nlohmann::ordered_json(*recall) : nlohmann::ordered_json(nullptr);
    nlohmann::ordered_json s = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < r.indices.size(); ++i) {
      s["s" + std::to_string(r.indices[i])] = r.counts[i];
    }
    j["scenarios"] = std::move(s);
    out << j.dump() << '\n';
  }
}

void write_match_csv(std::ostream & out, const std::vector<EvaluationReport> & reports)
{
  out << "trace,spec_set";
  if (!reports.empty()) {
    for (int i : reports.front().indices) {
      out << ",s" << i;
    }
  }
  out << ",matching\n";
  for (const EvaluationReport & r : reports) {
    for (const TraceVerdicts & tv : r.per_trace) {
      out << tv.name << ',' << r.spec_set;
      for (bool b : tv.scenarios) {
        out << ',' << (b ? 1 : 0);
      }
      out << ',' << (tv.matching ? 1 : 0) << '\n';
    }
  }
}

}  // namespace scenmon
