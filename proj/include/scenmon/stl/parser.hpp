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

#include <string_view>

#include "scenmon/stl/formula.hpp"

namespace scenmon::stl
{

/// Parses the formula DSL.
///
///   phi ::= true | false | atom | '(' phi ')' | '!' phi
///         | ('G'|'F') [interval] phi | phi '&' phi | phi '|' phi
///         | phi 'U' [interval] phi
///   atom ::= name ['(' arg {',' arg} ')'] [('>'|'>='|'<'|'<=') number]
///   interval ::= '[' number ',' (number | 'inf') ']'
///
/// Binding strength, tightest first: '!', G/F prefixes, '&', '|', 'U'.
/// '&' and '|' associate left, 'U' associates right. Omitted intervals mean
/// [0, inf).
///
/// Throws SyntaxError (with byte offset) or MalformedInterval.
Formula parse(std::string_view text);

}  // namespace scenmon::stl
