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

#pragma once

#include <cstddef>
#include <memory>
#include <string>

#include "scenmon/pipeline/types.hpp"

namespace scenmon
{

struct ServiceOptions
{
  std::string host = "127.0.0.1";
  int port = 8080;  ///< 0 picks a free port
  std::size_t max_body_bytes = 10u * 1024u * 1024u;
  double exemplify_timeout_s = 30.0;
  unsigned threads = 8;
  PipelineParams params;  ///< defaults for evaluate and exemplify
};

struct ServiceResponse
{
  int status = 200;
  std::string body;  ///< JSON
};

/// HTTP API behind the STL debugger: parse, evaluate and exemplify over
/// traces uploaded into sessions.
///
///   GET  /health                 -> {"status": "ok"}
///   GET  /atoms                  -> registered atom signatures
///   POST /session                -> {"session": id}
///   GET  /session/<id>           -> uploaded traces and snapshots
///   POST /trace                  {session, name, csv, map?}
///   POST /snapshot               {session, name, formula}
///   POST /parse                  {text} -> {ast, pretty, errors}
///   POST /evaluate               {session, trace, formula, bindings?, mode?}
///   POST /exemplify              {formula | before+after, template?, budget?, seed?}
class DebugService
{
public:
  explicit DebugService(ServiceOptions options = {});
  ~DebugService();
  DebugService(const DebugService &) = delete;
  DebugService & operator=(const DebugService &) = delete;

  /// Binds the listening socket. Throws PortInUse.
  void bind();
  /// Serves until stop(); binds first if needed.
  void run();
  /// bind() and run() on a background thread.
  void start();
  /// Stops accepting connections; in-flight requests complete.
  void stop();
  int port() const;

  /// The request handler without the network layer.
  ServiceResponse handle(const std::string & method, const std::string & path, const std::string & body);

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace scenmon
