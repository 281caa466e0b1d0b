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

// Acceptance battery: one PASS/FAIL line per criterion. Exit status is
// nonzero when any criterion fails; a criterion whose input data is absent
// prints SKIP.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include <unistd.h>

#include "oracle.hpp"
#include "scenmon/cli/commands.hpp"
#include "scenmon/pipeline/highd.hpp"
#include "scenmon/pipeline/pipeline.hpp"
#include "scenmon/rss.hpp"
#include "scenmon/scenarios.hpp"
#include "scenmon/stl/monitor.hpp"
#include "scenmon/stl/parser.hpp"
#include "scenmon/synth/generator.hpp"

namespace fs = std::filesystem;
using namespace scenmon;

namespace
{

struct Outcome
{
  enum Kind { kPass, kFail, kSkip } kind = kPass;
  std::string detail;
};

Outcome pass(std::string d) { return {Outcome::kPass, std::move(d)}; }
Outcome fail(std::string d) { return {Outcome::kFail, std::move(d)}; }

template <class... A>
std::string fmt(const char * f, A... a)
{
  char buf[512];
  std::snprintf(buf, sizeof(buf), f, a...);
  return buf;
}

fs::path scratch(const std::string & name)
{
  const fs::path p = fs::temp_directory_path() / ("scenmon_accept_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

stl::EvalContext context_of(const DisturbTrace & t, const PipelineParams & params)
{
  stl::EvalContext ctx;
  ctx.trace = t.trace;
  ctx.road = t.road;
  ctx.rss = params.rss;
  ctx.scenario = params.scenario;
  ctx.mode = params.mode;
  ctx.angle = params.angle;
  return ctx;
}

// ---------------------------------------------------------------------------

constexpr double kMonitorBudgetS = 60.0;

Outcome monitor_correctness()
{
  std::mt19937_64 rng(20261018);
  std::size_t points = 0, robust_checked = 0;
  for (int n = 0; n < 1000; ++n) {
    const Trace trace = testing::random_single_vehicle_trace(rng);
    const stl::Formula f = testing::random_formula(rng, 4);
    const testing::DenseOracle oracle(f, trace, "X");
    stl::EvalContext ctx;
    ctx.trace = std::make_shared<const Trace>(trace);
    ctx.road = std::make_shared<const RoadNetwork>(straight_road(3));
    stl::Monitor m(f, ctx);
    const auto & pts = oracle.critical_times();
    std::vector<double> probe;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      probe.push_back(pts[i]);
      if (i + 1 < pts.size()) {
        probe.push_back(0.5 * (pts[i] + pts[i + 1]));
      }
    }
    for (double t : probe) {
      const bool b = m.eval_bool(t);
      if (b != oracle.holds(t)) {
        return fail(fmt("formula %d disagrees with the oracle at t=%g: %s", n, t, stl::print(f).c_str()));
      }
      const double r = m.eval_robust(t);
      if (r != 0.0) {
        ++robust_checked;
        if ((r > 0.0) != b) {
          return fail(fmt("robustness %g contradicts verdict at t=%g: %s", r, t, stl::print(f).c_str()));
        }
      }
      ++points;
    }
  }
  return pass(fmt("1000 formulas, %zu time points, %zu robust signs", points, robust_checked));
}

// ---------------------------------------------------------------------------

constexpr double kRssTolerance = 0.01;

Outcome rss_numerics()
{
  const RssParams p;
  const double lon = d_rss_lon(27.78, 27.78, p);
  const double lat = d_rss_lat(0.0, 0.0, p);
  if (std::abs(lon - 48.29) > kRssTolerance) {
    return fail(fmt("d_rss_lon(27.78, 27.78) = %.4f, want 48.29", lon));
  }
  if (std::abs(lat - 1.08) > kRssTolerance) {
    return fail(fmt("d_rss_lat(0, 0) = %.4f, want 1.08", lat));
  }
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> speed(0.0, 60.0), dv(0.0, 5.0), latv(-4.0, 4.0);
  std::uniform_real_distribution<double> pos(-80.0, 80.0), off(-2.0, 12.0), heading(-0.3, 0.3);
  auto snap = [&] {
    VehicleSnapshot x;
    x.state.s = pos(rng);
    x.state.d = off(rng);
    x.state.v = speed(rng);
    x.state.theta = heading(rng);
    x.dims = VehicleDims{3.5 + dv(rng), 1.6 + 0.2 * dv(rng)};
    return x;
  };
  for (int i = 0; i < 10000; ++i) {
    const double vr = speed(rng), vf = speed(rng), step = dv(rng);
    const double l = d_rss_lon(vr, vf, p);
    if (l < 0.0 || d_rss_lat(latv(rng), latv(rng), p) < 0.0) {
      return fail("negative safe distance");
    }
    if (d_rss_lon(vr + step, vf, p) < l || d_rss_lon(vr, vf + step, p) > l) {
      return fail(fmt("d_rss_lon not monotone at v_r=%g v_f=%g", vr, vf));
    }
    const VehicleSnapshot a = snap(), b = snap();
    if (rss_violation(a, b, p) != rss_violation(b, a, p)) {
      return fail("rss_violation is not symmetric");
    }
    const double ma = danger_ahead_margin(a, b, p), ra = danger_ahead_rs(a, b, p);
    const double ml = danger_left_margin(a, b, p), rl = danger_left_rs(a, b, p);
    if ((ma != 0.0 && ra != 0.0 && (ma > 0.0) != (ra > 0.0)) ||
        (ml != 0.0 && rl != 0.0 && (ml > 0.0) != (rl > 0.0))) {
      return fail("reciprocal form changes the sign");
    }
  }
  return pass(fmt("d_lon=%.4f d_lat=%.4f, 10^4 random property checks", lon, lat));
}

// ---------------------------------------------------------------------------

constexpr int kTracesPerIndex = 50;

Outcome scenario_detection()
{
  PipelineParams params;
  params.three_vehicle = true;
  params.scenario.min_danger = 0.0;
  std::map<int, int> missed;
  int total = 0, misses = 0, no_danger = 0;
  for (int index = 1; index <= 24; ++index) {
    for (int k = 0; k < kTracesPerIndex; ++k) {
      const DisturbTrace t = synth::generate(index, static_cast<std::uint64_t>(1000 + k));
      ++total;
      if (!scenario_holds(index, SpecVariant::kExt, t, params)) {
        ++missed[index];
        ++misses;
      }
      if (!stl::eval_bool(danger_arises(t.sv, t.pov), context_of(t, params), t.trace->domain().lo)) {
        ++no_danger;
      }
    }
  }
  if (misses != 0 || no_danger != 0) {
    std::string which;
    for (const auto & [i, n] : missed) {
      which += fmt(" s%d:%d", i, n);
    }
    return fail(fmt("%d missed,%s; %d without dangerArises", misses, which.c_str(), no_danger));
  }
  return pass(fmt("%d traces (%d per index, scenarios 1-24), 100%% detected, all dangerArises", total,
    kTracesPerIndex));
}

// ---------------------------------------------------------------------------

Outcome structural_implications()
{
  PipelineParams params;
  params.three_vehicle = true;
  PipelineParams strict = params;
  strict.scenario.min_danger = 0.6;

  std::vector<DisturbTrace> traces;
  std::mt19937_64 rng(4242);
  for (int i = 0; i < 1000; ++i) {
    traces.push_back(synth::random_pair(rng));
  }
  for (int index = 1; index <= 24; ++index) {
    for (std::uint64_t k = 0; k < 10; ++k) {
      traces.push_back(synth::generate(index, 500 + k));
    }
  }

  const stl::Formula danger = stl::parse("danger(SV, POV)");
  const stl::Formula ahead = stl::parse("aheadOf(SV, POV)");
  const stl::Formula ahead_ext = stl::parse("aheadOf_ext(SV, POV)");
  std::vector<std::string> problems(traces.size());
  std::atomic<std::size_t> fired{0};
  parallel_for(traces.size(), 0, [&](std::size_t n) {
    const DisturbTrace & t = traces[n];
    stl::EvalContext ctx = context_of(t, params);
    ctx.bindings = {{"SV", t.sv}, {"POV", t.pov}};
    stl::EvalContext sctx = context_of(t, strict);
    sctx.bindings = ctx.bindings;
    const bool arises = stl::eval_bool(danger_arises(t.sv, t.pov), ctx, t.trace->domain().lo);
    for (int index = 1; index <= 24; ++index) {
      const bool base = scenario_holds(index, SpecVariant::kBase, t, params);
      const bool ext_a = scenario_holds(index, SpecVariant::kExtA, t, params);
      const bool ext = scenario_holds(index, SpecVariant::kExt, t, params);
      if ((base && !ext_a) || (ext_a && !ext)) {
        problems[n] = fmt("s%d variant order broken on %s", index, t.name.c_str());
        return;
      }
      fired += ext ? 1 : 0;
      if (ext && !arises) {
        problems[n] = fmt("s%d holds without dangerArises on %s", index, t.name.c_str());
        return;
      }
    }
    const auto d0 = stl::eval_series_bool(danger, ctx).root();
    const auto d6 = stl::eval_series_bool(danger, sctx).root();
    const auto a = stl::eval_series_bool(ahead, ctx).root();
    const auto ae = stl::eval_series_bool(ahead_ext, ctx).root();
    for (std::size_t k = 0; k < d0.size(); ++k) {
      if (d6[k] && !d0[k]) {
        problems[n] = "danger(0.6) without danger(0) on " + t.name;
        return;
      }
      if (a[k] && !ae[k]) {
        problems[n] = "aheadOf without aheadOf_ext on " + t.name;
        return;
      }
    }
  });
  for (const std::string & p : problems) {
    if (!p.empty()) {
      return fail(p);
    }
  }
  return pass(fmt("%zu traces (1000 random + %zu generated), %zu scenario hits, 0 counterexamples",
    traces.size(), traces.size() - 1000, fired.load()));
}

// ---------------------------------------------------------------------------

Outcome robustness_monotonicity()
{
  const stl::Formula rs = stl::parse("dangerAhead_rs(SV, POV)");
  const stl::Formula boolean = stl::parse("dangerAhead(SV, POV)");
  const RssParams p;
  double prev = kInfinity;
  int off_boundary = 0;
  for (int i = 0; i < 200; ++i) {
    const double gap = 1.0 + 149.0 * i / 199.0;
    TraceBuilder b({0.0, 1.0});
    b.add_vehicle("SV", VehicleDims{});
    b.add_vehicle("POV", VehicleDims{});
    for (std::size_t k = 0; k < 2; ++k) {
      VehicleState sv, pov;
      sv.v = pov.v = 27.78;
      sv.d = pov.d = 2.6;
      pov.s = gap;
      b.set_state("SV", k, sv);
      b.set_state("POV", k, pov);
    }
    stl::EvalContext ctx;
    ctx.trace = std::make_shared<const Trace>(std::move(b).build());
    ctx.road = std::make_shared<const RoadNetwork>(straight_road(3));
    const double r = stl::eval_robust(rs, ctx, 0.0);
    if (r > prev) {
      return fail(fmt("robustness rises from %g to %g at gap %g", prev, r, gap));
    }
    prev = r;
    const VehicleSnapshot a{ctx.trace->value_at("SV", 0.0), VehicleDims{}};
    const VehicleSnapshot c{ctx.trace->value_at("POV", 0.0), VehicleDims{}};
    if (danger_ahead_margin(a, c, p) != 0.0) {
      ++off_boundary;
      if ((r > 0.0) != stl::eval_bool(boolean, ctx, 0.0)) {
        return fail(fmt("sign disagrees with dangerAhead at gap %g", gap));
      }
    }
  }
  return pass(fmt("200-point sweep 1-150 m nonincreasing, %d sign checks", off_boundary));
}

// ---------------------------------------------------------------------------

int cli(std::vector<std::string> args)
{
  args.insert(args.begin(), "scenmon");
  std::vector<const char *> argv;
  for (const std::string & a : args) {
    argv.push_back(a.c_str());
  }
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  if (code != 0) {
    std::fprintf(stderr, "%s", err.str().c_str());
  }
  return code;
}

std::map<std::string, std::string> tree(const fs::path & dir)
{
  std::map<std::string, std::string> out;
  for (const auto & e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) {
      std::ifstream in(e.path(), std::ios::binary);
      std::stringstream s;
      s << in.rdbuf();
      out[fs::relative(e.path(), dir).string()] = s.str();
    }
  }
  return out;
}

Outcome determinism_and_trim()
{
  const fs::path root = scratch("determinism");
  synth::write_corpus(root / "data", {1, 3, 4, 5, 6, 7, 8, 1, 5}, 77);
  const std::string data = (root / "data").string();
  const unsigned n = std::max(2u, std::thread::hardware_concurrency());
  const std::string many = std::to_string(n);

  for (const auto & [dir, jobs] : std::vector<std::pair<std::string, std::string>>{
         {"one_a", "1"}, {"one_b", "1"}, {"many", many}}) {
    const std::string out = (root / dir).string();
    if (cli({"filter", "--data_dir", data, "--output_dir", out, "--jobs", jobs}) != 0 ||
        cli({"evaluate", "--trace_dir", out, "--output_dir", out, "--jobs", jobs}) != 0) {
      return fail("filter/evaluate exited nonzero");
    }
  }
  if (cli({"run", "--data_dir", data, "--output_dir", (root / "fused").string(), "--jobs", many}) != 0) {
    return fail("run exited nonzero");
  }
  const auto reference = tree(root / "one_a");
  if (reference.size() < 4) {
    return fail("filter produced no traces");
  }
  if (tree(root / "one_b") != reference) {
    return fail("two jobs=1 runs differ");
  }
  if (tree(root / "many") != reference) {
    return fail("jobs=1 and jobs=" + many + " differ");
  }
  if (tree(root / "fused") != reference) {
    return fail("run differs from filter + evaluate");
  }

  write_highd(root / "trim", "01", synth::trim_fixture());
  const TraceSet trimmed = filter_directory(root / "trim", PipelineParams{}, 1);
  if (trimmed.traces.empty()) {
    return fail("trim fixture produced no trace");
  }
  for (const DisturbTrace & t : trimmed.traces) {
    const TimeInterval d = t.trace->domain();
    if (d.lo != 2.0 || d.hi != 10.0) {
      return fail(fmt("trim fixture domain [%.17g, %.17g]", d.lo, d.hi));
    }
  }
  fs::remove_all(root);
  return pass(fmt("%zu files identical across jobs=1, jobs=1, jobs=%u and run; trim [2, 10] exact",
    reference.size(), n));
}

// ---------------------------------------------------------------------------

/// Published highD results: 32398 traces; recall per spec set at min_danger 0.
constexpr std::size_t kPublishedTraces = 32398;
const std::map<std::string, double> kPublishedRecall = {
  {"ISO34502-STL", 0.742}, {"ISO34502-STL-extA", 0.935}, {"ISO34502-STL-ext", 0.961}};

Outcome highd_reproduction()
{
  const char * env = std::getenv("SCENMON_HIGHD_DIR");
  if (env == nullptr || !fs::is_directory(env) || list_recordings(env).empty()) {
    return {Outcome::kSkip, "set SCENMON_HIGHD_DIR to the highD data directory to run"};
  }
  PipelineParams params;
  const TraceSet set = filter_directory(env, params, 0);
  const auto reports = evaluate({SpecVariant::kBase, SpecVariant::kExtA, SpecVariant::kExt},
    default_indices(false), set.traces, params, 0);
  std::string detail = fmt("|T|=%zu", set.traces.size());
  bool ok = set.traces.size() == kPublishedTraces;
  for (const EvaluationReport & r : reports) {
    const double recall = r.recall().value_or(0.0);
    detail += fmt(" %s=%.1f%%", r.spec_set.c_str(), 100.0 * recall);
    ok = ok && std::abs(recall - kPublishedRecall.at(r.spec_set)) < 0.0005;
  }
  return ok ? pass(detail) : fail(detail + " (published: 32398 traces, 74.2/93.5/96.1)");
}

}  // namespace

int main()
{
  struct Criterion
  {
    const char * name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
    {"monitor-correctness", kMonitorBudgetS, monitor_correctness},
    {"rss-numerics", 5.0, rss_numerics},
    {"scenario-detection", 300.0, scenario_detection},
    {"structural-implications", 120.0, structural_implications},
    {"robustness-monotonicity", 5.0, robustness_monotonicity},
    {"pipeline-determinism-trim", 0.0, determinism_and_trim},
    {"highd-reproduction", 0.0, highd_reproduction},
  };
  int failures = 0;
  for (const Criterion & c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception & e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.kind == Outcome::kPass && c.budget_s > 0.0 && s > c.budget_s) {
      o = fail(o.detail + fmt("; took %.1f s, budget %.0f s", s, c.budget_s));
    }
    const char * tag = o.kind == Outcome::kPass ? "PASS" : o.kind == Outcome::kFail ? "FAIL" : "SKIP";
    std::printf("%s %-26s %s (%.2f s)\n", tag, c.name, o.detail.c_str(), s);
    std::fflush(stdout);
    failures += o.kind == Outcome::kFail ? 1 : 0;
  }
  return failures == 0 ? 0 : 1;
}
