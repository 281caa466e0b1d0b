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
#include <stdexcept>
#include <string>

namespace scenmon
{

// All library errors derive from Error so callers can map them to exit codes
// or HTTP statuses by category.
class Error : public std::runtime_error
{
public:
  enum class Category { kUsage, kData, kInternal };

  explicit Error(const std::string & what, Category category = Category::kData)
  : std::runtime_error(what), category_(category)
  {
  }

  Category category() const noexcept { return category_; }
  virtual const char * kind() const noexcept { return "Error"; }

private:
  Category category_;
};

#define SCENMON_DEFINE_ERROR(Name, Cat)                                  \
  class Name : public Error                                              \
  {                                                                      \
  public:                                                                \
    explicit Name(const std::string & what) : Error(what, Cat) {}        \
    const char * kind() const noexcept override { return #Name; }       \
  };

// trace model
SCENMON_DEFINE_ERROR(OutOfDomain, Error::Category::kData)
SCENMON_DEFINE_ERROR(VehicleAbsent, Error::Category::kData)
SCENMON_DEFINE_ERROR(EmptyDomain, Error::Category::kData)
SCENMON_DEFINE_ERROR(InvalidTrace, Error::Category::kData)

// road model
SCENMON_DEFINE_ERROR(InvalidChain, Error::Category::kData)
SCENMON_DEFINE_ERROR(DuplicateMembership, Error::Category::kData)
SCENMON_DEFINE_ERROR(InvalidMap, Error::Category::kData)

// stl engine
SCENMON_DEFINE_ERROR(UnboundName, Error::Category::kUsage)
SCENMON_DEFINE_ERROR(InvalidTemplate, Error::Category::kUsage)

// scenario library
SCENMON_DEFINE_ERROR(ArityMismatch, Error::Category::kUsage)

// pipeline
SCENMON_DEFINE_ERROR(MissingColumn, Error::Category::kData)
SCENMON_DEFINE_ERROR(InconsistentFrameRate, Error::Category::kData)
SCENMON_DEFINE_ERROR(ManifestMismatch, Error::Category::kData)
SCENMON_DEFINE_ERROR(ConfigError, Error::Category::kUsage)

// debug service
SCENMON_DEFINE_ERROR(PortInUse, Error::Category::kUsage)
SCENMON_DEFINE_ERROR(InternalError, Error::Category::kInternal)

#undef SCENMON_DEFINE_ERROR

class SyntaxError : public Error
{
public:
  SyntaxError(const std::string & message, std::size_t position)
  : Error(message + " at position " + std::to_string(position), Category::kUsage),
    message_(message),
    position_(position)
  {
  }
  const char * kind() const noexcept override { return "SyntaxError"; }
  const std::string & message() const noexcept { return message_; }
  std::size_t position() const noexcept { return position_; }

private:
  std::string message_;
  std::size_t position_;
};

class MalformedInterval : public SyntaxError
{
public:
  MalformedInterval(const std::string & message, std::size_t position)
  : SyntaxError(message, position)
  {
  }
  const char * kind() const noexcept override { return "MalformedInterval"; }
};

class ParseError : public Error
{
public:
  ParseError(const std::string & message, std::size_t row)
  : Error(message + " (row " + std::to_string(row) + ")", Category::kData), row_(row)
  {
  }
  const char * kind() const noexcept override { return "ParseError"; }
  std::size_t row() const noexcept { return row_; }

private:
  std::size_t row_;
};

}  // namespace scenmon
