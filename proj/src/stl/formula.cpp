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

#include "scenmon/stl/formula.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "scenmon/errors.hpp"

namespace scenmon::stl
{

const char * to_string(NodeKind kind)
{
  switch (kind) {
    case NodeKind::kTrue:
      return "true";
    case NodeKind::kFalse:
      return "false";
    case NodeKind::kAtom:
      return "atom";
    case NodeKind::kNot:
      return "not";
    case NodeKind::kAnd:
      return "and";
    case NodeKind::kOr:
      return "or";
    case NodeKind::kUntil:
      return "until";
    case NodeKind::kGlobally:
      return "globally";
    case NodeKind::kFinally:
      return "finally";
  }
  return "?";
}

const char * to_string(CmpOp op)
{
  switch (op) {
    case CmpOp::kGt:
      return ">";
    case CmpOp::kGe:
      return ">=";
    case CmpOp::kLt:
      return "<";
    case CmpOp::kLe:
      return "<=";
  }
  return "?";
}

namespace
{

void check_interval(const TimeInterval & j)
{
  if (!(j.lo >= 0.0) || !(j.lo <= j.hi) || std::isnan(j.hi)) {
    throw MalformedInterval("interval bounds must satisfy 0 <= lo <= hi", 0);
  }
}

}  // namespace

Formula::Formula() : node_(std::make_shared<const Node>()) {}

Formula Formula::top() { return Formula(); }

Formula Formula::bottom()
{
  Node n;
  n.kind = NodeKind::kFalse;
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::atom(std::string name, std::vector<AtomArg> args, std::optional<Comparison> cmp)
{
  Node n;
  n.kind = NodeKind::kAtom;
  n.atom_name = std::move(name);
  n.atom_args = std::move(args);
  n.comparison = cmp;
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::negation(Formula f)
{
  Node n;
  n.kind = NodeKind::kNot;
  n.children = {std::move(f)};
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::conjunction(Formula lhs, Formula rhs)
{
  Node n;
  n.kind = NodeKind::kAnd;
  n.children = {std::move(lhs), std::move(rhs)};
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::disjunction(Formula lhs, Formula rhs)
{
  Node n;
  n.kind = NodeKind::kOr;
  n.children = {std::move(lhs), std::move(rhs)};
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::until(Formula lhs, Formula rhs, TimeInterval interval)
{
  check_interval(interval);
  Node n;
  n.kind = NodeKind::kUntil;
  n.interval = interval;
  n.children = {std::move(lhs), std::move(rhs)};
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::globally(Formula f, TimeInterval interval)
{
  check_interval(interval);
  Node n;
  n.kind = NodeKind::kGlobally;
  n.interval = interval;
  n.children = {std::move(f)};
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::finally(Formula f, TimeInterval interval)
{
  check_interval(interval);
  Node n;
  n.kind = NodeKind::kFinally;
  n.interval = interval;
  n.children = {std::move(f)};
  return Formula(std::make_shared<const Node>(std::move(n)));
}

NodeKind Formula::kind() const { return node_->kind; }
const TimeInterval & Formula::interval() const { return node_->interval; }
const std::vector<Formula> & Formula::children() const { return node_->children; }
const std::string & Formula::atom_name() const { return node_->atom_name; }
const std::vector<AtomArg> & Formula::atom_args() const { return node_->atom_args; }
const std::optional<Comparison> & Formula::comparison() const { return node_->comparison; }

std::size_t Formula::size() const
{
  std::size_t n = 1;
  for (const auto & c : children()) {
    n += c.size();
  }
  return n;
}

std::size_t Formula::depth() const
{
  std::size_t d = 0;
  for (const auto & c : children()) {
    d = std::max(d, c.depth());
  }
  return d + 1;
}

bool Formula::operator==(const Formula & other) const
{
  if (node_ == other.node_) {
    return true;
  }
  const Node & a = *node_;
  const Node & b = *other.node_;
  return a.kind == b.kind && a.interval == b.interval && a.atom_name == b.atom_name &&
         a.atom_args == b.atom_args && a.comparison == b.comparison && a.children == b.children;
}

std::string format_number(double x)
{
  if (std::isinf(x)) {
    return x > 0 ? "inf" : "-inf";
  }
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) {
    throw std::runtime_error("number formatting failed");
  }
  return std::string(buf, ptr);
}

namespace
{

std::string print_interval(const TimeInterval & j)
{
  if (j.lo == 0.0 && j.unbounded()) {
    return "";
  }
  return "[" + format_number(j.lo) + "," + format_number(j.hi) + "]";
}

void print_into(const Formula & f, std::string & out)
{
  switch (f.kind()) {
    case NodeKind::kTrue:
      out += "true";
      return;
    case NodeKind::kFalse:
      out += "false";
      return;
    case NodeKind::kAtom: {
      out += f.atom_name();
      if (!f.atom_args().empty()) {
        out += '(';
        for (std::size_t i = 0; i < f.atom_args().size(); ++i) {
          if (i > 0) {
            out += ',';
          }
          const AtomArg & a = f.atom_args()[i];
          if (const auto * s = std::get_if<std::string>(&a)) {
            out += *s;
          } else {
            out += format_number(std::get<double>(a));
          }
        }
        out += ')';
      }
      if (f.comparison()) {
        out += ' ';
        out += to_string(f.comparison()->op);
        out += ' ';
        out += format_number(f.comparison()->threshold);
      }
      return;
    }
    case NodeKind::kNot:
      out += '!';
      print_into(f.children()[0], out);
      return;
    case NodeKind::kAnd:
    case NodeKind::kOr:
      out += '(';
      print_into(f.children()[0], out);
      out += f.kind() == NodeKind::kAnd ? " & " : " | ";
      print_into(f.children()[1], out);
      out += ')';
      return;
    case NodeKind::kUntil:
      out += '(';
      print_into(f.children()[0], out);
      out += " U";
      out += print_interval(f.interval());
      out += ' ';
      print_into(f.children()[1], out);
      out += ')';
      return;
    case NodeKind::kGlobally:
    case NodeKind::kFinally:
      out += f.kind() == NodeKind::kGlobally ? 'G' : 'F';
      out += print_interval(f.interval());
      out += ' ';
      print_into(f.children()[0], out);
      return;
  }
}

void preorder_into(const Formula & f, std::vector<Formula> & out)
{
  out.push_back(f);
  for (const auto & c : f.children()) {
    preorder_into(c, out);
  }
}

}  // namespace

std::string print(const Formula & f)
{
  std::string out;
  print_into(f, out);
  return out;
}

std::vector<Formula> preorder(const Formula & f)
{
  std::vector<Formula> out;
  preorder_into(f, out);
  return out;
}

}  // namespace scenmon::stl
