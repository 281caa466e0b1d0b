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

#include "scenmon/service/service.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "scenmon/errors.hpp"
#include "scenmon/pipeline/trace_io.hpp"
#include "scenmon/stl/exemplify.hpp"
#include "scenmon/stl/monitor.hpp"
#include "scenmon/stl/parser.hpp"

namespace scenmon
{

using json = nlohmann::ordered_json;

namespace
{

/// Non-finite values travel as the strings "inf", "-inf" and "nan".
json number(double x)
{
  if (std::isfinite(x)) {
    return x;
  }
  return format_double(x);
}

/// Errors reported to the client with an HTTP status.
struct HttpError
{
  int status;
  std::string kind;
  std::string message;
};

[[noreturn]] void fail(int status, const std::string & kind, const std::string & message)
{
  throw HttpError{status, kind, message};
}

json error_body(const std::string & kind, const std::string & message)
{
  return json{{"error", {{"kind", kind}, {"message", message}}}};
}

json parse_body(const std::string & body)
{
  if (body.empty()) {
    fail(400, "EmptyBody", "request body is empty");
  }
  try {
    json j = json::parse(body);
    if (!j.is_object()) {
      fail(400, "BadRequest", "request body must be a JSON object");
    }
    return j;
  } catch (const json::exception & e) {
    fail(400, "BadRequest", std::string("malformed JSON: ") + e.what());
  }
}

std::string need_string(const json & j, const char * key)
{
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    fail(400, "BadRequest", std::string("missing string field '") + key + "'");
  }
  return it->get<std::string>();
}

double json_double(const json & j)
{
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") {
      return kInfinity;
    }
    if (s == "-inf") {
      return -kInfinity;
    }
  }
  if (!j.is_number()) {
    fail(400, "BadRequest", "expected a number, got " + j.dump());
  }
  return j.get<double>();
}

json interval_json(const TimeInterval & j) { return json::array({number(j.lo), number(j.hi)}); }

json ast_json(const stl::Formula & f, std::size_t & next_id)
{
  json node;
  node["id"] = next_id++;
  node["kind"] = stl::to_string(f.kind());
  switch (f.kind()) {
    case stl::NodeKind::kUntil:
    case stl::NodeKind::kGlobally:
    case stl::NodeKind::kFinally:
      node["interval"] = interval_json(f.interval());
      break;
    case stl::NodeKind::kAtom: {
      json atom;
      atom["name"] = f.atom_name();
      json args = json::array();
      for (const auto & a : f.atom_args()) {
        if (const auto * s = std::get_if<std::string>(&a)) {
          args.push_back(*s);
        } else {
          args.push_back(number(std::get<double>(a)));
        }
      }
      atom["args"] = std::move(args);
      if (f.comparison()) {
        atom["cmp"] = {{"op", stl::to_string(f.comparison()->op)},
          {"threshold", number(f.comparison()->threshold)}};
      }
      node["atom"] = std::move(atom);
      break;
    }
    default:
      break;
  }
  json children = json::array();
  for (const auto & c : f.children()) {
    children.push_back(ast_json(c, next_id));
  }
  node["children"] = std::move(children);
  return node;
}

json trace_json(const Trace & trace)
{
  json out;
  std::ostringstream csv;
  write_trace_csv(csv, trace);
  out["csv"] = csv.str();
  json times = json::array();
  for (double t : trace.sample_times()) {
    times.push_back(t);
  }
  out["times"] = std::move(times);
  json vehicles = json::object();
  for (const auto & [id, track] : trace.vehicles()) {
    json ch{{"s", json::array()}, {"v", json::array()}, {"a", json::array()}, {"d", json::array()},
      {"theta", json::array()}};
    for (std::size_t k = 0; k < track.states.size(); ++k) {
      if (!track.present[k]) {
        for (json & col : ch) {
          col.push_back(nullptr);
        }
        continue;
      }
      const VehicleState & st = track.states[k];
      ch["s"].push_back(st.s);
      ch["v"].push_back(st.v);
      ch["a"].push_back(st.a);
      ch["d"].push_back(st.d);
      ch["theta"].push_back(st.theta);
    }
    vehicles[id] = std::move(ch);
  }
  out["vehicles"] = std::move(vehicles);
  return out;
}

std::shared_ptr<const RoadNetwork> road_from_request(const json & j)
{
  auto it = j.find("map");
  if (it == j.end() || it->is_null()) {
    return std::make_shared<const RoadNetwork>(straight_road(3));
  }
  if (!it->is_string()) {
    fail(400, "BadRequest", "'map' must be a JSON-lines string of lanelets");
  }
  std::istringstream in(it->get<std::string>());
  return std::make_shared<const RoadNetwork>(build_lanes(read_map(in)));
}

stl::ChannelBounds bounds_from(const json & v, const char * key, stl::ChannelBounds fallback)
{
  auto it = v.find(key);
  if (it == v.end()) {
    return fallback;
  }
  if (!it->is_array() || it->size() != 2) {
    fail(400, "InvalidTemplate", std::string("'") + key + "' must be [lo, hi]");
  }
  return {json_double((*it)[0]), json_double((*it)[1])};
}

stl::SignalTemplate template_from(const json & body, const PipelineParams & params)
{
  stl::SignalTemplate t;
  t.rss = params.rss;
  t.scenario = params.scenario;
  const json tj = body.value("template", json::object());
  if (!tj.is_object()) {
    fail(400, "InvalidTemplate", "'template' must be an object");
  }
  if (tj.contains("vehicles")) {
    for (const json & v : tj.at("vehicles")) {
      stl::VehicleTemplate vt;
      if (!v.is_object() || !v.contains("id") || !v.at("id").is_string()) {
        fail(400, "InvalidTemplate", "every template vehicle needs a string 'id'");
      }
      vt.id = v.at("id").get<std::string>();
      vt.dims.length = v.contains("length") ? json_double(v.at("length")) : vt.dims.length;
      vt.dims.width = v.contains("width") ? json_double(v.at("width")) : vt.dims.width;
      vt.s = bounds_from(v, "s", vt.s);
      vt.v = bounds_from(v, "v", vt.v);
      vt.a = bounds_from(v, "a", vt.a);
      vt.d = bounds_from(v, "d", vt.d);
      vt.theta = bounds_from(v, "theta", vt.theta);
      t.vehicles.push_back(vt);
    }
  } else {
    for (const char * id : {"SV", "POV"}) {
      stl::VehicleTemplate vt;
      vt.id = id;
      t.vehicles.push_back(vt);
    }
  }
  t.duration = tj.contains("duration") ? json_double(tj.at("duration")) : t.duration;
  t.dt = tj.contains("dt") ? json_double(tj.at("dt")) : t.dt;
  t.control_points = tj.value("control_points", t.control_points);
  if (tj.contains("bindings")) {
    t.bindings = tj.at("bindings").get<std::map<std::string, std::string>>();
  }
  t.road = road_from_request(tj);
  return t;
}

std::string random_id()
{
  std::random_device rd;
  std::ostringstream out;
  for (int i = 0; i < 4; ++i) {
    char buf[9];
    std::snprintf(buf, sizeof(buf), "%08x", static_cast<unsigned>(rd()));
    out << buf;
  }
  return out.str();
}

}  // namespace

struct DebugService::Impl
{
  struct StoredTrace
  {
    std::shared_ptr<const Trace> trace;
    std::shared_ptr<const RoadNetwork> road;
  };

  struct Session
  {
    std::map<std::string, StoredTrace> traces;
    std::map<std::string, std::string> snapshots;
  };

  ServiceOptions options;
  httplib::Server server;
  bool bound = false;
  int port = 0;
  std::thread thread;
  std::mutex mutex;
  std::map<std::string, Session> sessions;

  Session & session(const std::string & id)
  {
    auto it = sessions.find(id);
    if (it == sessions.end()) {
      fail(404, "UnknownSession", "no session '" + id + "'");
    }
    return it->second;
  }

  json health() { return json{{"status", "ok"}}; }

  json atoms()
  {
    const stl::AtomRegistry & reg = stl::standard_registry();
    json list = json::array();
    for (const std::string & name : reg.names()) {
      json a;
      a["name"] = name;
      if (const auto * p = reg.primitive(name)) {
        a["signature"] = stl::signature(name, p->params);
        a["kind"] = "primitive";
        a["description"] = p->description;
      } else if (const auto * m = reg.macro(name)) {
        a["signature"] = stl::signature(name, m->params);
        a["kind"] = "derived";
        a["description"] = m->description;
      }
      list.push_back(std::move(a));
    }
    return json{{"atoms", std::move(list)}};
  }

  json new_session()
  {
    std::lock_guard<std::mutex> lock(mutex);
    std::string id = random_id();
    while (sessions.count(id) != 0) {
      id = random_id();
    }
    sessions.emplace(id, Session{});
    return json{{"session", id}};
  }

  json describe_session(const std::string & id)
  {
    std::lock_guard<std::mutex> lock(mutex);
    const Session & s = session(id);
    json traces = json::array();
    for (const auto & [name, st] : s.traces) {
      traces.push_back({{"name", name}, {"samples", st.trace->size()},
        {"vehicles", st.trace->vehicles().size()}});
    }
    return json{{"session", id}, {"traces", std::move(traces)}, {"snapshots", s.snapshots}};
  }

  json upload(const json & body)
  {
    const std::string sid = need_string(body, "session");
    const std::string name = need_string(body, "name");
    std::istringstream csv(need_string(body, "csv"));
    StoredTrace st;
    st.trace = std::make_shared<const Trace>(read_trace_csv(csv));
    st.road = road_from_request(body);
    std::lock_guard<std::mutex> lock(mutex);
    session(sid).traces[name] = st;
    return json{{"name", name}, {"samples", st.trace->size()},
      {"vehicles", st.trace->vehicles().size()}};
  }

  json snapshot(const json & body)
  {
    const std::string sid = need_string(body, "session");
    const std::string name = need_string(body, "name");
    const std::string text = need_string(body, "formula");
    const std::string pretty = stl::print(stl::parse(text));
    std::lock_guard<std::mutex> lock(mutex);
    session(sid).snapshots[name] = pretty;
    return json{{"name", name}, {"formula", pretty}};
  }

  ServiceResponse parse(const json & body)
  {
    const std::string text = need_string(body, "text");
    try {
      const stl::Formula f = stl::parse(text);
      std::size_t next = 0;
      json out{{"ast", ast_json(f, next)}, {"pretty", stl::print(f)}, {"errors", json::array()}};
      return {200, out.dump()};
    } catch (const SyntaxError & e) {
      json err{{"kind", e.kind()}, {"message", e.message()}, {"position", e.position()}};
      json out{{"ast", nullptr}, {"pretty", nullptr}, {"errors", json::array({err})}};
      return {400, out.dump()};
    }
  }

  stl::EvalContext context_for(const json & body, const StoredTrace & st)
  {
    stl::EvalContext ctx;
    ctx.trace = st.trace;
    ctx.road = st.road;
    ctx.rss = options.params.rss;
    ctx.scenario = options.params.scenario;
    ctx.mode = options.params.mode;
    ctx.angle = options.params.angle;
    if (body.contains("mode")) {
      ctx.mode = interpolation_from_string(need_string(body, "mode"));
    }
    if (body.contains("bindings")) {
      if (!body.at("bindings").is_object()) {
        fail(400, "BadRequest", "'bindings' must map role names to vehicle or lane ids");
      }
      ctx.bindings = body.at("bindings").get<std::map<std::string, std::string>>();
    }
    for (const auto & [role, id] : ctx.bindings) {
      if (!st.trace->has_vehicle(id) && !st.road->has_lane(id)) {
        fail(400, "UnboundName", "binding '" + role + "' names '" + id +
          "', which is neither a vehicle of the trace nor a lane of the map");
      }
    }
    return ctx;
  }

  json evaluate(const json & body)
  {
    const std::string sid = need_string(body, "session");
    const std::string name = need_string(body, "trace");
    const stl::Formula f = stl::parse(need_string(body, "formula"));
    StoredTrace st;
    {
      std::lock_guard<std::mutex> lock(mutex);
      Session & s = session(sid);
      auto it = s.traces.find(name);
      if (it == s.traces.end()) {
        fail(404, "UnknownTrace", "no trace '" + name + "' in session");
      }
      st = it->second;
    }
    const stl::EvalContext ctx = context_for(body, st);
    stl::Monitor monitor(f, ctx);
    const stl::Series<double> robust = monitor.robust_series();
    const stl::Series<bool> boolean = monitor.bool_series();
    const double t0 = st.trace->domain().lo;

    json out;
    out["verdict"] = monitor.eval_bool(t0);
    out["robustness"] = number(monitor.eval_robust(t0));
    json times = json::array();
    for (double t : robust.times) {
      times.push_back(t);
    }
    out["times"] = std::move(times);
    json root = json::array();
    for (double r : robust.root()) {
      root.push_back(number(r));
    }
    out["robustness_series"] = std::move(root);
    const std::vector<stl::Formula> nodes = stl::preorder(f);
    json subs = json::array();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      json rs = json::array();
      for (double r : robust.nodes[i]) {
        rs.push_back(number(r));
      }
      json bs = json::array();
      for (bool b : boolean.nodes[i]) {
        bs.push_back(b);
      }
      subs.push_back({{"id", i}, {"formula", stl::print(nodes[i])}, {"robustness", std::move(rs)},
        {"boolean", std::move(bs)}});
    }
    out["subformula_series"] = std::move(subs);
    return out;
  }

  ServiceResponse exemplify(const json & body)
  {
    stl::Formula f;
    if (body.contains("formula")) {
      f = stl::parse(need_string(body, "formula"));
    } else if (body.contains("before") && body.contains("after")) {
      f = stl::parse(need_string(body, "before")) & !stl::parse(need_string(body, "after"));
    } else {
      fail(400, "BadRequest", "give 'formula', or 'before' and 'after'");
    }
    const stl::SignalTemplate tmpl = template_from(body, options.params);
    stl::ExemplifyOptions opts;
    const json budget = body.value("budget", json::object());
    opts.restarts = budget.value("restarts", opts.restarts);
    opts.steps = budget.value("steps", opts.steps);
    opts.seed = body.value("seed", std::uint64_t{0});
    opts.time_limit_s = options.exemplify_timeout_s;

    const stl::ExemplifyResult r = stl::exemplify(f, tmpl, opts);
    if (!r.success) {
      json out;
      out["failure"] = r.timed_out ? "time limit reached without a satisfying signal"
                                   : "no satisfying signal found within the budget";
      out["best_robustness"] = number(r.robustness);
      out["evaluations"] = r.evaluations;
      return {422, out.dump()};
    }
    // independent re-check before anything leaves the server
    stl::EvalContext ctx;
    ctx.trace = std::make_shared<const Trace>(*r.trace);
    ctx.road = tmpl.road;
    ctx.bindings = tmpl.bindings;
    ctx.rss = tmpl.rss;
    ctx.scenario = tmpl.scenario;
    if (!stl::eval_bool(f, ctx, ctx.trace->domain().lo)) {
      throw InternalError("exemplified signal failed verification");
    }
    json out;
    out["trace"] = trace_json(*r.trace);
    out["robustness"] = number(r.robustness);
    out["evaluations"] = r.evaluations;
    if (body.contains("session") && body.contains("store_as")) {
      std::lock_guard<std::mutex> lock(mutex);
      session(need_string(body, "session")).traces[need_string(body, "store_as")] =
        StoredTrace{ctx.trace, tmpl.road};
    }
    return {200, out.dump()};
  }

  ServiceResponse route(const std::string & method, const std::string & path, const std::string & body)
  {
    if (method == "GET" && path == "/health") {
      return {200, health().dump()};
    }
    if (method == "GET" && path == "/atoms") {
      return {200, atoms().dump()};
    }
    if (method == "GET" && path.rfind("/session/", 0) == 0) {
      return {200, describe_session(path.substr(9)).dump()};
    }
    if (method != "POST") {
      fail(404, "NotFound", method + " " + path + " is not an endpoint");
    }
    if (path == "/session") {
      return {201, new_session().dump()};
    }
    if (path == "/parse") {
      return parse(parse_body(body));
    }
    if (path == "/trace") {
      return {201, upload(parse_body(body)).dump()};
    }
    if (path == "/snapshot") {
      return {201, snapshot(parse_body(body)).dump()};
    }
    if (path == "/evaluate") {
      return {200, evaluate(parse_body(body)).dump()};
    }
    if (path == "/exemplify") {
      return exemplify(parse_body(body));
    }
    fail(404, "NotFound", method + " " + path + " is not an endpoint");
  }

  ServiceResponse handle(const std::string & method, const std::string & path, const std::string & body)
  {
    try {
      return route(method, path, body);
    } catch (const HttpError & e) {
      return {e.status, error_body(e.kind, e.message).dump()};
    } catch (const SyntaxError & e) {
      json out = error_body(e.kind(), e.message());
      out["error"]["position"] = e.position();
      return {400, out.dump()};
    } catch (const Error & e) {
      const int status = e.category() == Error::Category::kInternal ? 500 : 400;
      return {status, error_body(e.kind(), e.what()).dump()};
    } catch (const json::exception & e) {
      return {400, error_body("BadRequest", e.what()).dump()};
    } catch (const std::exception & e) {
      return {500, error_body("InternalError", e.what()).dump()};
    }
  }
};

DebugService::DebugService(ServiceOptions options) : impl_(std::make_unique<Impl>())
{
  impl_->options = std::move(options);
  impl_->options.params.validate();
  Impl * impl = impl_.get();
  impl->server.set_payload_max_length(impl->options.max_body_bytes);
  // SO_REUSEPORT would let a second server share the port silently
  impl->server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void *>(&yes), sizeof(yes));
  });
  const unsigned threads = std::max(1u, impl->options.threads);
  impl->server.new_task_queue = [threads] { return new httplib::ThreadPool(threads); };
  auto handler = [impl](const httplib::Request & req, httplib::Response & res) {
    const ServiceResponse r = impl->handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  impl->server.Get(".*", handler);
  impl->server.Post(".*", handler);
}

DebugService::~DebugService() { stop(); }

void DebugService::bind()
{
  if (impl_->bound) {
    return;
  }
  if (impl_->options.port == 0) {
    impl_->port = impl_->server.bind_to_any_port(impl_->options.host);
    if (impl_->port < 0) {
      throw PortInUse("cannot bind to " + impl_->options.host);
    }
  } else {
    if (!impl_->server.bind_to_port(impl_->options.host, impl_->options.port)) {
      throw PortInUse("port " + std::to_string(impl_->options.port) + " on " + impl_->options.host +
                      " is in use");
    }
    impl_->port = impl_->options.port;
  }
  impl_->bound = true;
}

void DebugService::run()
{
  bind();
  impl_->server.listen_after_bind();
}

void DebugService::start()
{
  bind();
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

void DebugService::stop()
{
  impl_->server.stop();
  if (impl_->thread.joinable()) {
    impl_->thread.join();
  }
}

int DebugService::port() const { return impl_->port; }

ServiceResponse DebugService::handle(const std::string & method, const std::string & path, const std::string & body)
{
  return impl_->handle(method, path, body);
}

}  // namespace scenmon
