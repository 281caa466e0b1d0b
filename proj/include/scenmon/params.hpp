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

namespace scenmon
{

/// RSS calibration. Defaults are the highway values used for the highD study.
struct RssParams
{
  double rho = 0.6;        ///< reaction time [s]
  double a_max = 5.0;      ///< max acceleration of the rear vehicle [m/s^2]
  double b_min = 6.0;      ///< comfortable braking of the rear vehicle [m/s^2]
  double b_max = 8.0;      ///< max braking of the front vehicle [m/s^2]
  double a_max_lat = 1.5;  ///< max lateral acceleration [m/s^2]
  double b_min_lat = 1.5;  ///< comfortable lateral braking [m/s^2]

  /// Throws ConfigError unless all values are positive and b_min <= b_max.
  void validate() const;

  bool operator==(const RssParams &) const = default;
};

struct ScenarioParams
{
  double min_danger = 0.0;  ///< [s]
  double min_safe = 0.6;    ///< [s]

  void validate() const;

  bool operator==(const ScenarioParams &) const = default;
};

}  // namespace scenmon
