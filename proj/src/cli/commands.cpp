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

#include "scenmon/cli/commands.hpp"

#include <csignal>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "scenmon/cli/config.hpp"
#include "scenmon/errors.hpp"
#include "scenmon/pipeline/pipeline.hpp"
#include "scenmon/pipeline/trace_io.hpp"
#include "scenmon/scenarios.hpp"
#include "scenmon/service/service.hpp"
#include "scenmon/stl/exemplify.hpp"
#include "scenmon/stl/monitor.hpp"
#include "scenmon/stl/parser.hpp"

namespace scenmon
{

namespace fs = std::filesystem;

namespace
{

struct ConfigFlags
{
  std::string config_file;
  std::map<std::string, std::string> values;
};

void add_config_flags(CLI::App & cmd, ConfigFlags & flags)
{
  cmd.add_option("--config", flags.config_file, "key = value configuration file");
  for (const std::string & key : config_keys()) {
    cmd.add_option("--" + key, flags.values[key], "overrides '" + key + "' of the config file");
  }
}

RunConfig build_config(const ConfigFlags & flags)
{
  RunConfig config = flags.config_file.empty() ? RunConfig{} : load_config(flags.config_file);
  for (const std::string & key : config_keys()) {
    const std::string & value = flags.values.at(key);
    if (!value.empty()) {
      apply_setting(config, key, value);
    }
  }
  config.validate();
  return config;
}

const std::string & need_path(const std::string & value, const char * key)
{
  if (value.empty()) {
    throw ConfigError(std::string("'") + key + "' is required");
  }
  return value;
}

void require_dir(const std::string & path, const char * key)
{
  if (!fs::is_directory(need_path(path, key))) {
    throw ConfigError(std::string(key) + " '" + path + "' is not a directory");
  }
}

std::vector<std::pair<std::string, std::string>> describe(const PipelineParams & p)
{
  auto num = [](double x) { return format_double(x); };
  return {{"rss.rho", num(p.rss.rho)}, {"rss.a_max", num(p.rss.a_max)},
    {"rss.b_min", num(p.rss.b_min)}, {"rss.b_max", num(p.rss.b_max)},
    {"rss.a_max_lat", num(p.rss.a_max_lat)}, {"rss.b_min_lat", num(p.rss.b_min_lat)},
    {"scenario.min_danger", num(p.scenario.min_danger)},
    {"scenario.min_safe", num(p.scenario.min_safe)}, {"interpolation", to_string(p.mode)},
    {"angle_convention", to_string(p.angle)}, {"frame_rate_hz", num(p.frame_rate_hz)},
    {"cars_only", p.cars_only ? "true" : "false"},
    {"three_vehicle", p.three_vehicle ? "true" : "false"}};
}

void check_manifest(const PipelineParams & stored, const PipelineParams & config)
{
  if (stored == config) {
    return;
  }
  const auto a = describe(stored);
  const auto b = describe(config);
  std::string diff;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].second != b[i].second) {
      diff += "\n  " + a[i].first + ": traces " + a[i].second + ", config " + b[i].second;
    }
  }
  if (diff.empty()) {
    diff = "\n  parameters differ";
  }
  throw ManifestMismatch("trace directory parameters disagree with the config:" + diff);
}

void print_stats(std::ostream & out, const FilterStats & s)
{
  out << "recordings:       " << s.recordings << '\n'
      << "rows read:        " << s.rows_read << '\n'
      << "rows dropped:     " << s.rows_dropped << '\n'
      << "pairs scanned:    " << s.pairs_scanned << '\n'
      << "pairs violating:  " << s.pairs_violating << '\n'
      << "pairs kept:       " << s.pairs_kept << '\n';
}

void write_file(const fs::path & path, const std::function<void(std::ostream &)> & body)
{
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw ConfigError("cannot write '" + path.string() + "'");
  }
  body(f);
  if (!f) {
    throw ConfigError("error writing '" + path.string() + "'");
  }
}

void write_reports(std::ostream & out, const fs::path & dir, const std::vector<EvaluationReport> & reports)
{
  fs::create_directories(dir);
  write_file(dir / "report.txt", [&](std::ostream & f) { write_report_table(f, reports); });
  write_file(dir / "report.jsonl", [&](std::ostream & f) { write_report_jsonl(f, reports); });
  write_file(dir / "matches.csv", [&](std::ostream & f) { write_match_csv(f, reports); });
  write_report_table(out, reports);
}

std::vector<EvaluationReport> evaluate_set(const RunConfig & config, const TraceSet & set)
{
  return evaluate(config.spec_sets, config.scenario_indices(), set.traces, config.params, config.jobs);
}

TraceSet do_filter(std::ostream & out, const RunConfig & config)
{
  require_dir(config.data_dir, "data_dir");
  need_path(config.output_dir, "output_dir");
  TraceSet set = filter_directory(config.data_dir, config.params, config.jobs);
  write_trace_dir(config.output_dir, set);
  print_stats(out, set.stats);
  out << "traces written:   " << set.traces.size() << " -> " << config.output_dir << '\n';
  return set;
}

std::string read_text(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot read '" + path + "'");
  }
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::shared_ptr<const RoadNetwork> load_road(const std::string & map_file)
{
  if (map_file.empty()) {
    return std::make_shared<const RoadNetwork>(straight_road(3));
  }
  return std::make_shared<const RoadNetwork>(build_lanes(read_map_file(map_file)));
}

std::map<std::string, std::string> parse_bindings(const std::vector<std::string> & items)
{
  std::map<std::string, std::string> out;
  for (const std::string & item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size()) {
      throw ConfigError("binding '" + item + "' is not ROLE=ID");
    }
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

std::string g6(double x)
{
  if (!std::isfinite(x)) {
    return format_double(x);
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

struct CheckArgs
{
  std::string formula;
  std::string formula_file;
  std::string trace;
  std::vector<std::string> bind;
  bool series = false;
  bool subformulas = false;
};

void do_check(std::ostream & out, const RunConfig & config, const CheckArgs & args)
{
  if (args.formula.empty() == args.formula_file.empty()) {
    throw ConfigError("give exactly one of --formula and --formula_file");
  }
  const std::string text = args.formula.empty() ? read_text(args.formula_file) : args.formula;
  const stl::Formula f = stl::parse(text);

  stl::EvalContext ctx;
  ctx.trace = std::make_shared<const Trace>(read_trace_csv_file(args.trace));
  ctx.road = load_road(config.map_file);
  ctx.bindings = parse_bindings(args.bind);
  ctx.rss = config.params.rss;
  ctx.scenario = config.params.scenario;
  ctx.mode = config.params.mode;
  ctx.angle = config.params.angle;

  stl::Monitor monitor(f, ctx);
  const double t0 = ctx.trace->domain().lo;
  out << "formula: " << stl::print(f) << '\n'
      << "verdict: " << (monitor.eval_bool(t0) ? "true" : "false") << '\n'
      << "robustness: " << g6(monitor.eval_robust(t0)) << '\n';
  if (!args.series && !args.subformulas) {
    return;
  }
  const stl::Series<double> robust = monitor.robust_series();
  const std::size_t columns = args.subformulas ? robust.nodes.size() : 1;
  if (args.subformulas) {
    const std::vector<stl::Formula> nodes = stl::preorder(f);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      out << "# n" << i << " = " << stl::print(nodes[i]) << '\n';
    }
  }
  out << 't';
  for (std::size_t i = 0; i < columns; ++i) {
    out << ",n" << i;
  }
  out << '\n';
  for (std::size_t k = 0; k < robust.times.size(); ++k) {
    out << format_double(robust.times[k]);
    for (std::size_t i = 0; i < columns; ++i) {
      out << ',' << g6(robust.nodes[i][k]);
    }
    out << '\n';
  }
}

struct CatalogArgs
{
  bool expanded = false;
};

void do_catalog(std::ostream & out, const RunConfig & config, const CatalogArgs & args)
{
  std::vector<int> indices = config.scenarios;
  if (indices.empty()) {
    for (int i = 1; i <= 24; ++i) {
      indices.push_back(i);
    }
  }
  for (SpecVariant v : config.spec_sets) {
    for (int i : indices) {
      ScenarioRoles roles;
      if (pov_count(i) == 2) {
        roles.povs = {"POV1", "POV2"};
      }
      const stl::Formula f = args.expanded
        ? scenario_expanded(i, v, roles, config.params.scenario)
        : scenario(i, v, roles);
      out << 's' << i << '\t' << to_string(v) << '\t' << stl::print(f) << '\n';
    }
  }
}

struct ExemplifyArgs
{
  std::string formula;
  std::string before;
  std::string after;
  std::vector<std::string> vehicles = {"SV", "POV"};
  std::vector<std::string> bind;
  double duration = 10.0;
  double dt = 0.25;
  int restarts = 20;
  int steps = 200;
  double timeout = 30.0;
  std::string out_file;
};

void do_exemplify(std::ostream & out, const RunConfig & config, const ExemplifyArgs & args)
{
  stl::Formula f;
  if (!args.formula.empty() && args.before.empty() && args.after.empty()) {
    f = stl::parse(args.formula);
  } else if (args.formula.empty() && !args.before.empty() && !args.after.empty()) {
    f = stl::parse(args.before) & !stl::parse(args.after);
  } else {
    throw ConfigError("give --formula, or --before and --after");
  }
  stl::SignalTemplate tmpl;
  for (const std::string & id : args.vehicles) {
    stl::VehicleTemplate v;
    v.id = id;
    tmpl.vehicles.push_back(v);
  }
  tmpl.duration = args.duration;
  tmpl.dt = args.dt;
  tmpl.road = load_road(config.map_file);
  tmpl.bindings = parse_bindings(args.bind);
  tmpl.rss = config.params.rss;
  tmpl.scenario = config.params.scenario;

  stl::ExemplifyOptions opts;
  opts.restarts = args.restarts;
  opts.steps = args.steps;
  opts.seed = config.seed;
  opts.time_limit_s = args.timeout;
  const stl::ExemplifyResult r = stl::exemplify(f, tmpl, opts);
  if (!r.success) {
    out << "no example found (best robustness " << g6(r.robustness) << ", " << r.evaluations
        << " evaluations" << (r.timed_out ? ", time limit reached" : "") << ")\n";
    return;
  }
  out << "robustness: " << g6(r.robustness) << '\n';
  if (args.out_file.empty()) {
    write_trace_csv(out, *r.trace);
  } else {
    write_file(args.out_file, [&](std::ostream & f) { write_trace_csv(f, *r.trace); });
    out << "trace written to " << args.out_file << '\n';
  }
}

struct ServeArgs
{
  std::string host = "127.0.0.1";
  int port = 8080;
  double timeout = 30.0;
  std::size_t max_body = 10u * 1024u * 1024u;
};

void do_serve(std::ostream & out, const RunConfig & config, const ServeArgs & args)
{
  ServiceOptions opts;
  opts.host = args.host;
  opts.port = args.port;
  opts.exemplify_timeout_s = args.timeout;
  opts.max_body_bytes = args.max_body;
  opts.params = config.params;

  // Worker threads inherit the mask, so SIGINT and SIGTERM reach only sigwait.
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);

  DebugService service(opts);
  service.start();
  out << "listening on http://" << args.host << ':' << service.port() << '\n' << std::flush;
  int sig = 0;
  sigwait(&set, &sig);
  out << "shutting down\n";
  service.stop();
  pthread_sigmask(SIG_UNBLOCK, &set, nullptr);
}

int exit_code(const Error & e)
{
  switch (e.category()) {
    case Error::Category::kUsage:
      return kExitUsage;
    case Error::Category::kData:
      return kExitData;
    case Error::Category::kInternal:
      return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace

int run_cli(int argc, const char * const * argv, std::ostream & out, std::ostream & err)
{
  CLI::App app{"Scenario monitoring over vehicle traces with STL", "scenmon"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "scenmon 1.0.0");

  ConfigFlags filter_flags, eval_flags, run_flags, check_flags, catalog_flags, ex_flags, serve_flags;

  CLI::App * filter = app.add_subcommand("filter", "ingest highD recordings and write disturbance traces");
  add_config_flags(*filter, filter_flags);

  CLI::App * eval = app.add_subcommand("evaluate", "classify the traces of a trace directory");
  add_config_flags(*eval, eval_flags);

  CLI::App * run = app.add_subcommand("run", "filter then evaluate in one pass");
  add_config_flags(*run, run_flags);

  CheckArgs check_args;
  CLI::App * check = app.add_subcommand("check", "evaluate one formula on one trace");
  add_config_flags(*check, check_flags);
  check->add_option("--formula", check_args.formula, "formula text");
  check->add_option("--formula_file", check_args.formula_file, "file holding the formula");
  check->add_option("--trace", check_args.trace, "trace CSV")->required();
  check->add_option("--bind", check_args.bind, "ROLE=ID binding, repeatable");
  check->add_flag("--series", check_args.series, "print the root robustness series");
  check->add_flag("--subformulas", check_args.subformulas, "print the series of every node");

  CatalogArgs catalog_args;
  CLI::App * catalog = app.add_subcommand("catalog", "print the scenario formulas");
  add_config_flags(*catalog, catalog_flags);
  catalog->add_flag("--expanded", catalog_args.expanded, "expand derived atoms");

  ExemplifyArgs ex_args;
  CLI::App * ex = app.add_subcommand("exemplify", "synthesize a trace satisfying a formula");
  add_config_flags(*ex, ex_flags);
  ex->add_option("--formula", ex_args.formula, "formula to satisfy");
  ex->add_option("--before", ex_args.before, "formula that must hold");
  ex->add_option("--after", ex_args.after, "formula that must not hold");
  ex->add_option("--vehicles", ex_args.vehicles, "vehicle ids")->delimiter(',');
  ex->add_option("--bind", ex_args.bind, "ROLE=ID binding, repeatable");
  ex->add_option("--duration", ex_args.duration, "signal length in seconds")->check(CLI::PositiveNumber);
  ex->add_option("--dt", ex_args.dt, "sample period in seconds")->check(CLI::PositiveNumber);
  ex->add_option("--restarts", ex_args.restarts, "random restarts")->check(CLI::NonNegativeNumber);
  ex->add_option("--steps", ex_args.steps, "hill-climbing steps per restart")->check(CLI::NonNegativeNumber);
  ex->add_option("--timeout", ex_args.timeout, "wall-clock limit in seconds, 0 for none");
  ex->add_option("--out", ex_args.out_file, "write the trace CSV here instead of stdout");

  ServeArgs serve_args;
  CLI::App * serve = app.add_subcommand("serve", "run the debugger HTTP service");
  add_config_flags(*serve, serve_flags);
  serve->add_option("--host", serve_args.host, "bind address");
  serve->add_option("--port", serve_args.port, "port, 0 for any free port")->check(CLI::Range(0, 65535));
  serve->add_option("--timeout", serve_args.timeout, "exemplify time limit in seconds");
  serve->add_option("--max_body", serve_args.max_body, "request body limit in bytes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (filter->parsed()) {
      do_filter(out, build_config(filter_flags));
    } else if (eval->parsed()) {
      const RunConfig config = build_config(eval_flags);
      require_dir(config.trace_dir, "trace_dir");
      need_path(config.output_dir, "output_dir");
      const TraceSet set = read_trace_dir(config.trace_dir);
      check_manifest(set.params, config.params);
      write_reports(out, config.output_dir, evaluate_set(config, set));
    } else if (run->parsed()) {
      const RunConfig config = build_config(run_flags);
      const TraceSet set = do_filter(out, config);
      write_reports(out, config.output_dir, evaluate_set(config, set));
    } else if (check->parsed()) {
      do_check(out, build_config(check_flags), check_args);
    } else if (catalog->parsed()) {
      do_catalog(out, build_config(catalog_flags), catalog_args);
    } else if (ex->parsed()) {
      do_exemplify(out, build_config(ex_flags), ex_args);
    } else if (serve->parsed()) {
      do_serve(out, build_config(serve_flags), serve_args);
    }
  } catch (const SyntaxError & e) {
    err << "error: " << e.kind() << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error & e) {
    err << "error: " << e.kind() << ": " << e.what() << '\n';
    return exit_code(e);
  } catch (const fs::filesystem_error & e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception & e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace scenmon
