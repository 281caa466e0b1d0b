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
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "scenmon/pipeline/types.hpp"
#include "scenmon/road.hpp"
#include "scenmon/trace.hpp"

namespace scenmon
{

/// Curvilinear samples of one vehicle over a contiguous frame range.
struct VehicleSeries
{
  VehicleId id;
  VehicleDims dims;
  std::string vehicle_class;
  long first_frame = 0;
  std::vector<VehicleState> states;

  long last_frame() const { return first_frame + static_cast<long>(states.size()) - 1; }
  bool covers(long frame) const { return frame >= first_frame && frame <= last_frame(); }
  const VehicleState & at(long frame) const
  {
    return states[static_cast<std::size_t>(frame - first_frame)];
  }
};

/// One driving direction of a recording, in its own curvilinear frame.
/// Direction 1 drives towards -x (upper half), direction 2 towards +x.
struct DirectionData
{
  int direction = 0;
  std::vector<Lanelet> lanelets;
  std::shared_ptr<const RoadNetwork> road;
  std::vector<VehicleSeries> vehicles;  ///< ordered by numeric id

  const VehicleSeries & vehicle(const VehicleId & id) const;
  /// Trace over frames [f0, f1] holding the listed vehicles.
  Trace trace(const std::vector<VehicleId> & ids, long f0, long f1, double frame_rate) const;
  /// All vehicles over their joint frame span.
  Trace trace(double frame_rate) const;
};

struct IngestStats
{
  std::size_t rows_read = 0;
  std::size_t rows_dropped = 0;
  std::size_t vehicles = 0;
};

struct Recording
{
  std::string id;
  double frame_rate = 25.0;
  std::vector<DirectionData> directions;
  IngestStats stats;
};

struct HighdFiles
{
  std::filesystem::path tracks;
  std::filesystem::path tracks_meta;
  std::filesystem::path recording_meta;
};

HighdFiles highd_files(const std::filesystem::path & dir, const std::string & id);

/// Recording ids ("01", "02", ...) with a tracks file in dir, sorted.
std::vector<std::string> list_recordings(const std::filesystem::path & dir);

/// Reads one recording. Throws ParseError (with row number), MissingColumn,
/// InvalidMap on unordered lane markings and InconsistentFrameRate when the
/// metadata frame rate differs from params.frame_rate_hz.
Recording ingest(const HighdFiles & files, const std::string & id, const PipelineParams & params);

// Fixture writing in the same schema.

struct HighdRow
{
  double x = 0.0;
  double y = 0.0;
  double x_velocity = 0.0;
  double y_velocity = 0.0;
  double x_acceleration = 0.0;
  double y_acceleration = 0.0;
  int lane_id = 0;
};

struct HighdTrack
{
  int id = 0;
  double width = 4.5;   ///< bounding box extent along x
  double height = 1.8;  ///< bounding box extent along y
  std::string vehicle_class = "Car";
  int driving_direction = 2;
  long first_frame = 1;
  std::vector<HighdRow> rows;
};

struct HighdRecording
{
  double frame_rate = 25.0;
  std::vector<double> upper_markings;
  std::vector<double> lower_markings;
  std::vector<HighdTrack> tracks;
};

void write_highd(const std::filesystem::path & dir, const std::string & id, const HighdRecording & rec);

/// World-frame row for a curvilinear state, inverse of the ingest conversion.
HighdRow highd_row(const VehicleState & state, const VehicleDims & dims, int direction,
  const std::vector<double> & markings);

}  // namespace scenmon
