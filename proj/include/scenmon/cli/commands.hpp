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

#include <iosfwd>

namespace scenmon
{

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitData = 2, kExitInternal = 3 };

/// Entry point of the `scenmon` tool. Subcommands: filter, evaluate, run,
/// check, catalog, exemplify, serve. Every config key is also accepted as a
/// flag of the same name (`--rss.rho 0.5`); flags override `--config`.
int run_cli(int argc, const char * const * argv, std::ostream & out, std::ostream & err);

}  // namespace scenmon
