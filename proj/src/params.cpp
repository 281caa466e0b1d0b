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

#include "scenmon/params.hpp"

#include <cmath>
#include <string>

#include "scenmon/errors.hpp"

namespace scenmon
{

namespace
{

void require_positive(const char * key, double value)
{
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ConfigError(std::string(key) + " must be a positive finite number");
  }
}

}  // namespace

void RssParams::validate() const
{
  require_positive("rss.rho", rho);
  require_positive("rss.a_max", a_max);
  require_positive("rss.b_min", b_min);
  require_positive("rss.b_max", b_max);
  require_positive("rss.a_max_lat", a_max_lat);
  require_positive("rss.b_min_lat", b_min_lat);
  if (b_min > b_max) {
    throw ConfigError("rss.b_min must not exceed rss.b_max");
  }
}

void ScenarioParams::validate() const
{
  if (!(min_danger >= 0.0) || !std::isfinite(min_danger)) {
    throw ConfigError("scenario.min_danger must be a finite number >= 0");
  }
  if (!(min_safe >= 0.0) || !std::isfinite(min_safe)) {
    throw ConfigError("scenario.min_safe must be a finite number >= 0");
  }
}

}  // namespace scenmon
