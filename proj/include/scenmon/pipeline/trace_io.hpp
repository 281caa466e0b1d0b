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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "scenmon/pipeline/types.hpp"

namespace scenmon
{

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

/// Per-pair CSV with header t,vehicle,length,width,s,v,a,d,theta. One row
/// per present vehicle per sample, ordered by time then vehicle id.
void write_trace_csv(std::ostream & out, const Trace & trace);
/// Throws MissingColumn, ParseError (with row number) or InvalidTrace.
Trace read_trace_csv(std::istream & in);
Trace read_trace_csv_file(const std::filesystem::path & path);

struct TraceSet
{
  PipelineParams params;
  FilterStats stats;
  std::vector<DisturbTrace> traces;
};

/// Writes manifest.json, traces/<name>.csv and maps/<map>.jsonl under dir.
void write_trace_dir(const std::filesystem::path & dir, const TraceSet & set);
/// Throws ParseError or InvalidMap on malformed content.
TraceSet read_trace_dir(const std::filesystem::path & dir);

}  // namespace scenmon
