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

#include <gtest/gtest.h>

#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "scenmon/errors.hpp"
#include "scenmon/pipeline/trace_io.hpp"
#include "scenmon/scenarios.hpp"
#include "scenmon/service/service.hpp"
#include "scenmon/stl/monitor.hpp"
#include "scenmon/stl/parser.hpp"
#include "scenmon/synth/generator.hpp"

namespace scenmon
{
namespace
{

using json = nlohmann::json;

ServiceOptions loopback()
{
  ServiceOptions o;
  o.port = 0;
  o.threads = 4;
  o.exemplify_timeout_s = 20.0;
  return o;
}

std::string csv_of(const Trace & t)
{
  std::ostringstream out;
  write_trace_csv(out, t);
  return out.str();
}

std::string map_of(const RoadNetwork & road)
{
  std::ostringstream out;
  write_map(out, lanelets_of(road));
  return out.str();
}

std::size_t depth(const json & node)
{
  std::size_t d = 0;
  for (const json & c : node.at("children")) {
    d = std::max(d, depth(c));
  }
  return d + 1;
}

class Service : public ::testing::Test
{
protected:
  json call(const std::string & method, const std::string & path, const json & body, int expect)
  {
    const ServiceResponse r = service_.handle(method, path, body.is_null() ? "" : body.dump());
    EXPECT_EQ(r.status, expect) << method << " " << path << ": " << r.body;
    return json::parse(r.body);
  }

  std::string session()
  {
    return call("POST", "/session", nullptr, 201).at("session").get<std::string>();
  }

  DebugService service_{loopback()};
};

TEST_F(Service, HealthAndAtoms)
{
  EXPECT_EQ(call("GET", "/health", nullptr, 200).at("status"), "ok");
  const json atoms = call("GET", "/atoms", nullptr, 200).at("atoms");
  bool saw = false;
  for (const json & a : atoms) {
    if (a.at("name") == "aheadOf") {
      saw = true;
      EXPECT_EQ(a.at("signature"), "aheadOf(vehicle, vehicle)");
    }
  }
  EXPECT_TRUE(saw);
  call("GET", "/nowhere", nullptr, 404);
}

TEST_F(Service, ParseReturnsTreeWithPreorderIds)
{
  const std::string text = stl::print(scenario(1, SpecVariant::kBase));
  const json r = call("POST", "/parse", {{"text", text}}, 200);
  EXPECT_GE(depth(r.at("ast")), 3u);
  EXPECT_EQ(r.at("ast").at("id"), 0);
  EXPECT_EQ(r.at("ast").at("children").at(0).at("id"), 1);
  EXPECT_EQ(r.at("pretty"), text);
  EXPECT_TRUE(r.at("errors").empty());

  const json g = call("POST", "/parse", {{"text", "G[1,inf] p"}}, 200).at("ast");
  EXPECT_EQ(g.at("interval"), json::array({1.0, "inf"}));
  const json a = call("POST", "/parse", {{"text", "v(SV) > 3"}}, 200).at("ast").at("atom");
  EXPECT_EQ(a.at("name"), "v");
  EXPECT_EQ(a.at("args"), json::array({"SV"}));
  EXPECT_EQ(a.at("cmp").at("op"), ">");
}

TEST_F(Service, ParseErrors)
{
  const json r = call("POST", "/parse", {{"text", "G[3,2] p"}}, 400);
  ASSERT_EQ(r.at("errors").size(), 1u);
  EXPECT_EQ(r.at("errors")[0].at("kind"), "MalformedInterval");
  EXPECT_TRUE(r.at("errors")[0].at("position").is_number());
  EXPECT_EQ(service_.handle("POST", "/parse", "").status, 400);
  EXPECT_EQ(service_.handle("POST", "/parse", "{not json").status, 400);
  call("POST", "/parse", {{"txt", "p"}}, 400);
}

TEST_F(Service, EvaluateScenarioOnUploadedTrace)
{
  const std::string sid = session();
  const DisturbTrace t = synth::generate(1, 8);
  call("POST", "/trace", {{"session", sid}, {"name", "cutin"}, {"csv", csv_of(*t.trace)},
    {"map", map_of(*t.road)}}, 201);

  const std::string lane = t.road->lanes().begin()->first;
  const std::string formula = stl::print(scenario(1, SpecVariant::kBase));
  const json req = {{"session", sid}, {"trace", "cutin"}, {"formula", formula},
    {"bindings", {{"L", "lane1"}}}};
  const json r = call("POST", "/evaluate", req, 200);

  stl::EvalContext ctx;
  ctx.trace = t.trace;
  ctx.road = t.road;
  ctx.bindings = {{"L", "lane1"}};
  const stl::Formula f = stl::parse(formula);
  EXPECT_EQ(r.at("verdict").get<bool>(), stl::eval_bool(f, ctx, t.trace->domain().lo));
  EXPECT_EQ(r.at("times").size(), t.trace->size());
  EXPECT_EQ(r.at("robustness_series").size(), t.trace->size());
  EXPECT_EQ(r.at("subformula_series").size(), f.size());
  for (const json & node : r.at("subformula_series")) {
    EXPECT_EQ(node.at("robustness").size(), t.trace->size());
    EXPECT_EQ(node.at("boolean").size(), t.trace->size());
  }

  // pure: a second identical request gives identical bytes
  EXPECT_EQ(service_.handle("POST", "/evaluate", req.dump()).body,
    service_.handle("POST", "/evaluate", req.dump()).body);
}

TEST_F(Service, EvaluateErrors)
{
  const std::string sid = session();
  const DisturbTrace t = synth::generate(3, 1);
  call("POST", "/trace", {{"session", sid}, {"name", "x"}, {"csv", csv_of(*t.trace)}}, 201);
  const json ok = {{"session", sid}, {"trace", "x"}, {"formula", "v_gt(SV,1)"}};
  call("POST", "/evaluate", ok, 200);

  json r = ok;
  r["trace"] = "y";
  call("POST", "/evaluate", r, 404);
  r = ok;
  r["session"] = "0000";
  call("POST", "/evaluate", r, 404);
  r = ok;
  r["bindings"] = {{"SV", "ghost"}};
  call("POST", "/evaluate", r, 400);
  r = ok;
  r["formula"] = "foo(SV)";
  EXPECT_EQ(call("POST", "/evaluate", r, 400).at("error").at("kind"), "UnboundName");
  r = ok;
  r["formula"] = "v_gt(SV";
  call("POST", "/evaluate", r, 400);

  call("POST", "/trace", {{"session", sid}, {"name", "bad"}, {"csv", "t,vehicle\n"}}, 400);
}

TEST_F(Service, SessionsAreIsolated)
{
  const std::string a = session();
  const std::string b = session();
  EXPECT_NE(a, b);
  EXPECT_EQ(a.size(), 32u);
  const DisturbTrace t = synth::generate(3, 1);
  call("POST", "/trace", {{"session", a}, {"name", "x"}, {"csv", csv_of(*t.trace)}}, 201);
  call("POST", "/snapshot", {{"session", a}, {"name", "before"}, {"formula", "F (v_gt(SV,1))"}}, 201);
  const json sa = call("GET", "/session/" + a, nullptr, 200);
  EXPECT_EQ(sa.at("traces").size(), 1u);
  EXPECT_EQ(sa.at("snapshots").at("before"), "F v_gt(SV,1)");
  EXPECT_TRUE(call("GET", "/session/" + b, nullptr, 200).at("traces").empty());
  call("POST", "/evaluate", {{"session", b}, {"trace", "x"}, {"formula", "true"}}, 404);
}

TEST_F(Service, ExemplifyReturnsVerifiedTrace)
{
  const json r = call("POST", "/exemplify",
    {{"formula", "F(v_gt(SV,5))"}, {"template", {{"vehicles", {{{"id", "SV"}}}}}}, {"seed", 1}}, 200);
  std::istringstream csv(r.at("trace").at("csv").get<std::string>());
  stl::EvalContext ctx;
  ctx.trace = std::make_shared<const Trace>(read_trace_csv(csv));
  ctx.road = std::make_shared<const RoadNetwork>(straight_road(3));
  EXPECT_TRUE(stl::eval_bool(stl::parse("F(v_gt(SV,5))"), ctx, 0.0));
  bool crosses = false;
  for (const json & v : r.at("trace").at("vehicles").at("SV").at("v")) {
    crosses = crosses || v.get<double>() > 5.0;
  }
  EXPECT_TRUE(crosses);
}

TEST_F(Service, ExemplifyContradictionIs422)
{
  const json r = call("POST", "/exemplify",
    {{"formula", "v_gt(SV,5) & !v_gt(SV,5)"}, {"budget", {{"restarts", 2}, {"steps", 20}}}}, 422);
  EXPECT_TRUE(r.contains("failure"));
  EXPECT_TRUE(r.contains("best_robustness"));
}

TEST_F(Service, ExemplifyDifference)
{
  // ext relaxes aheadOf to front-to-front ordering; the difference holds a POV
  // whose front is ahead of the SV's front but whose rear is not
  const json r = call("POST", "/exemplify",
    {{"before", "aheadOf_ext(SV, POV)"}, {"after", "aheadOf(SV, POV)"}, {"seed", 2}}, 200);
  std::istringstream csv(r.at("trace").at("csv").get<std::string>());
  stl::EvalContext ctx;
  ctx.trace = std::make_shared<const Trace>(read_trace_csv(csv));
  ctx.road = std::make_shared<const RoadNetwork>(straight_road(3));
  EXPECT_TRUE(stl::eval_bool(stl::parse("aheadOf_ext(SV, POV)"), ctx, 0.0));
  EXPECT_FALSE(stl::eval_bool(stl::parse("aheadOf(SV, POV)"), ctx, 0.0));
}

TEST_F(Service, ExemplifyRejectsBadTemplate)
{
  call("POST", "/exemplify", {{"formula", "true"}, {"template", {{"vehicles", {{{"id", "SV"},
    {"v", {5, 1}}}}}}}}, 400);
  call("POST", "/exemplify", {{"before", "true"}}, 400);
}

TEST(ServiceNetwork, LoopbackRoundTripAndPortInUse)
{
  DebugService a(loopback());
  a.start();
  ASSERT_GT(a.port(), 0);

  httplib::Client client("127.0.0.1", a.port());
  auto health = client.Get("/health");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);
  auto parsed = client.Post("/parse", json{{"text", "G[3,2] p"}}.dump(), "application/json");
  ASSERT_TRUE(parsed);
  EXPECT_EQ(parsed->status, 400);

  ServiceOptions same = loopback();
  same.port = a.port();
  DebugService b(same);
  EXPECT_THROW(b.bind(), PortInUse);

  // requests running while stop() is called still complete
  std::thread slow([&] {
    httplib::Client c("127.0.0.1", a.port());
    auto r = c.Post("/exemplify", json{{"formula", "F(v_gt(SV,5))"}, {"seed", 4}}.dump(),
      "application/json");
    ASSERT_TRUE(r);
    EXPECT_EQ(r->status, 200);
  });
  std::this_thread::sleep_for(std::chrono::milliseconds(20));
  a.stop();
  slow.join();
  EXPECT_FALSE(httplib::Client("127.0.0.1", a.port()).Get("/health"));
}

TEST(ServiceNetwork, BodyLimit)
{
  ServiceOptions o = loopback();
  o.max_body_bytes = 64;
  DebugService s(o);
  s.start();
  httplib::Client client("127.0.0.1", s.port());
  auto r = client.Post("/parse", json{{"text", std::string(200, 'p')}}.dump(), "application/json");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 413);
  s.stop();
}

}  // namespace
}  // namespace scenmon
