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

// Writes the synthetic fixtures used by the tests and the README examples.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "scenmon/errors.hpp"
#include "scenmon/pipeline/highd.hpp"
#include "scenmon/pipeline/trace_io.hpp"
#include "scenmon/synth/generator.hpp"

namespace fs = std::filesystem;
using namespace scenmon;

int main(int argc, char ** argv)
{
  CLI::App app{"Synthetic fixtures for scenmon", "scenmon_fixtures"};
  app.require_subcommand(1);

  std::string dir;
  std::uint64_t seed = 1;
  std::vector<int> indices = {1, 2, 3, 4, 5, 6, 7, 8};
  int per_index = 1;

  CLI::App * corpus = app.add_subcommand("corpus", "highD-format recordings, one per scenario index");
  corpus->add_option("dir", dir)->required();
  corpus->add_option("--seed", seed);
  corpus->add_option("--indices", indices)->delimiter(',');

  CLI::App * traces = app.add_subcommand("traces", "trace directory of generated disturbances");
  traces->add_option("dir", dir)->required();
  traces->add_option("--seed", seed);
  traces->add_option("--indices", indices)->delimiter(',');
  traces->add_option("--per_index", per_index)->check(CLI::PositiveNumber);

  CLI::App * trim = app.add_subcommand("trim", "highD recording 01 whose filtered trace is [2, 10]");
  trim->add_option("dir", dir)->required();

  int index = 1;
  CLI::App * example = app.add_subcommand("example", "one generated trace.csv and its map.jsonl");
  example->add_option("dir", dir)->required();
  example->add_option("--index", index)->check(CLI::Range(1, 24));
  example->add_option("--seed", seed);

  CLI11_PARSE(app, argc, argv);

  try {
    fs::create_directories(dir);
    if (corpus->parsed()) {
      synth::write_corpus(dir, indices, seed);
    } else if (traces->parsed()) {
      TraceSet set;
      for (int i : indices) {
        set.params.three_vehicle = set.params.three_vehicle || i == 2;
        for (int k = 0; k < per_index; ++k) {
          set.traces.push_back(synth::generate(i, seed + static_cast<std::uint64_t>(k)));
        }
      }
      write_trace_dir(dir, set);
    } else if (trim->parsed()) {
      write_highd(dir, "01", synth::trim_fixture());
    } else if (example->parsed()) {
      const DisturbTrace t = synth::generate(index, seed);
      std::ofstream csv(fs::path(dir) / "trace.csv");
      write_trace_csv(csv, *t.trace);
      std::ofstream map(fs::path(dir) / "map.jsonl");
      write_map(map, lanelets_of(*t.road));
    }
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
