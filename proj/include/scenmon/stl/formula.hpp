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

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "scenmon/trace.hpp"

namespace scenmon::stl
{

enum class NodeKind { kTrue, kFalse, kAtom, kNot, kAnd, kOr, kUntil, kGlobally, kFinally };

const char * to_string(NodeKind kind);

enum class CmpOp { kGt, kGe, kLt, kLe };

const char * to_string(CmpOp op);

/// Optional threshold comparison attached to a function-valued atom:
/// `v(SV) > 5` is the atom v(SV) with {kGt, 5}.
struct Comparison
{
  CmpOp op = CmpOp::kGt;
  double threshold = 0.0;
  bool operator==(const Comparison &) const = default;
};

/// Atom argument: a name (vehicle, lane, or binding) or a numeric literal.
using AtomArg = std::variant<std::string, double>;

struct Node;

/// Immutable STL formula. Cheap to copy; subtrees are shared.
class Formula
{
public:
  Formula();  // true

  static Formula top();
  static Formula bottom();
  static Formula atom(
    std::string name, std::vector<AtomArg> args = {}, std::optional<Comparison> cmp = {});
  static Formula negation(Formula f);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula until(Formula lhs, Formula rhs, TimeInterval interval = {});
  static Formula globally(Formula f, TimeInterval interval = {});
  static Formula finally(Formula f, TimeInterval interval = {});

  NodeKind kind() const;
  const TimeInterval & interval() const;
  const std::vector<Formula> & children() const;
  const std::string & atom_name() const;
  const std::vector<AtomArg> & atom_args() const;
  const std::optional<Comparison> & comparison() const;

  /// Number of nodes in the tree (shared subtrees counted per occurrence).
  std::size_t size() const;
  std::size_t depth() const;

  const Node * node() const { return node_.get(); }

  bool operator==(const Formula & other) const;

private:
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Node
{
  NodeKind kind = NodeKind::kTrue;
  TimeInterval interval;
  std::vector<Formula> children;
  std::string atom_name;
  std::vector<AtomArg> atom_args;
  std::optional<Comparison> comparison;
};

inline Formula operator!(Formula f) { return Formula::negation(std::move(f)); }
inline Formula operator&(Formula a, Formula b) { return Formula::conjunction(std::move(a), std::move(b)); }
inline Formula operator|(Formula a, Formula b) { return Formula::disjunction(std::move(a), std::move(b)); }

/// Canonical concrete syntax accepted by parse(); parse(print(f)) == f.
std::string print(const Formula & f);

std::string format_number(double x);

/// Nodes in pre-order; index i is the stable id of the i-th visited node.
std::vector<Formula> preorder(const Formula & f);

}  // namespace scenmon::stl
