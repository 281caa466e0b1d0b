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

#include "scenmon/stl/monitor.hpp"

#include <cmath>
#include <optional>

#include "scenmon/errors.hpp"

namespace scenmon::stl
{

namespace
{

constexpr int kMaxMacroDepth = 32;

struct BoundNode
{
  NodeKind kind = NodeKind::kTrue;
  TimeInterval interval;
  int lhs = -1;
  int rhs = -1;
  const PrimitiveAtom * atom = nullptr;
  std::vector<ResolvedArg> args;
  std::optional<Comparison> cmp;
};

std::string join_names(const std::vector<std::string> & names)
{
  std::string out;
  for (const auto & n : names) {
    if (!out.empty()) {
      out += ", ";
    }
    out += n;
  }
  return out;
}

std::string arg_text(const AtomArg & a)
{
  if (const auto * s = std::get_if<std::string>(&a)) {
    return *s;
  }
  return format_number(std::get<double>(a));
}

void check_arity(const std::string & name, const std::vector<ArgKind> & params, std::size_t given)
{
  if (given != params.size()) {
    throw ArityMismatch(
      "atom '" + name + "' takes " + std::to_string(params.size()) + " argument(s), got " +
      std::to_string(given) + "; expected " + signature(name, params));
  }
}

bool is_integral(double x) { return std::isfinite(x) && std::floor(x) == x; }

ResolvedArg resolve(const std::string & atom, ArgKind kind, const AtomArg & a, const EvalContext & ctx)
{
  ResolvedArg r;
  r.kind = kind;
  if (kind == ArgKind::kNumber) {
    if (const auto * d = std::get_if<double>(&a)) {
      r.number = *d;
      return r;
    }
    throw ArityMismatch("atom '" + atom + "' expects a number, got '" + arg_text(a) + "'");
  }
  std::string name;
  if (const auto * s = std::get_if<std::string>(&a)) {
    name = *s;
  } else if (is_integral(std::get<double>(a))) {
    name = format_number(std::get<double>(a));
  } else {
    throw ArityMismatch(
      "atom '" + atom + "' expects a " + to_string(kind) + ", got " + arg_text(a));
  }
  r.id = kind == ArgKind::kVehicle ? ctx.resolve_vehicle(name) : ctx.resolve_lane(name);
  return r;
}

}  // namespace

struct Monitor::Impl
{
  Formula formula;
  EvalContext ctx;
  const AtomRegistry * registry = nullptr;

  std::vector<BoundNode> nodes;
  std::map<std::string, int> interned;
  std::vector<int> preorder_ids;
  int root = -1;

  std::vector<std::optional<Signal<bool>>> bools;
  std::vector<std::optional<Signal<double>>> robusts;
  std::vector<std::optional<std::vector<double>>> margins;

  int intern(BoundNode node)
  {
    std::string key = std::to_string(static_cast<int>(node.kind)) + '|' +
                      format_number(node.interval.lo) + '|' + format_number(node.interval.hi) +
                      '|' + std::to_string(node.lhs) + '|' + std::to_string(node.rhs);
    if (node.atom != nullptr) {
      key += '|' + node.atom->name;
      for (const auto & a : node.args) {
        key += '|' + (a.kind == ArgKind::kNumber ? format_number(a.number) : a.id);
      }
      if (node.cmp) {
        key += std::string("|") + to_string(node.cmp->op) + format_number(node.cmp->threshold);
      }
    }
    auto it = interned.find(key);
    if (it != interned.end()) {
      return it->second;
    }
    const int id = static_cast<int>(nodes.size());
    nodes.push_back(std::move(node));
    interned.emplace(std::move(key), id);
    return id;
  }

  int bind(const Formula & f, bool record, int macro_depth)
  {
    std::size_t slot = 0;
    if (record) {
      slot = preorder_ids.size();
      preorder_ids.push_back(-1);
    }
    const int id = bind_node(f, record, macro_depth);
    if (record) {
      preorder_ids[slot] = id;
    }
    return id;
  }

  int bind_node(const Formula & f, bool record, int macro_depth)
  {
    BoundNode node;
    node.kind = f.kind();
    switch (f.kind()) {
      case NodeKind::kTrue:
      case NodeKind::kFalse:
        return intern(node);
      case NodeKind::kAtom:
        return bind_atom(f, macro_depth);
      case NodeKind::kNot:
      case NodeKind::kGlobally:
      case NodeKind::kFinally:
        node.interval = f.interval();
        node.lhs = bind(f.children()[0], record, macro_depth);
        return intern(node);
      case NodeKind::kAnd:
      case NodeKind::kOr:
      case NodeKind::kUntil:
        node.interval = f.interval();
        node.lhs = bind(f.children()[0], record, macro_depth);
        node.rhs = bind(f.children()[1], record, macro_depth);
        return intern(node);
    }
    throw InternalError("unknown formula node");
  }

  int bind_atom(const Formula & f, int macro_depth)
  {
    const std::string & name = f.atom_name();
    if (const MacroAtom * m = registry->macro(name)) {
      check_arity(name, m->params, f.atom_args().size());
      if (f.comparison()) {
        throw ArityMismatch("derived atom '" + name + "' cannot take a comparison");
      }
      for (std::size_t i = 0; i < m->params.size(); ++i) {
        resolve(name, m->params[i], f.atom_args()[i], ctx);
      }
      if (macro_depth >= kMaxMacroDepth) {
        throw InternalError("derived atom expansion too deep at '" + name + "'");
      }
      return bind(m->expand(f.atom_args(), ctx), false, macro_depth + 1);
    }
    const PrimitiveAtom * p = registry->primitive(name);
    if (p == nullptr) {
      throw UnboundName(
        "unknown atom '" + name + "'; registered atoms: " + join_names(registry->names()));
    }
    check_arity(name, p->params, f.atom_args().size());
    BoundNode node;
    node.kind = NodeKind::kAtom;
    node.atom = p;
    node.cmp = f.comparison();
    for (std::size_t i = 0; i < p->params.size(); ++i) {
      node.args.push_back(resolve(name, p->params[i], f.atom_args()[i], ctx));
    }
    return intern(std::move(node));
  }

  const std::vector<double> & atom_margins(int id)
  {
    if (margins[id]) {
      return *margins[id];
    }
    const BoundNode & n = nodes[id];
    const Trace & trace = *ctx.trace;
    const AtomInputs inputs(ctx, n.args);
    std::vector<double> out(trace.size());
    for (std::size_t k = 0; k < trace.size(); ++k) {
      bool present = true;
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        if (n.args[i].kind == ArgKind::kVehicle && !inputs.present(i, k)) {
          present = false;
          break;
        }
      }
      if (!present) {
        out[k] = -kInfinity;
        continue;
      }
      double m = n.atom->margin(inputs, k);
      if (n.cmp) {
        const bool above = n.cmp->op == CmpOp::kGt || n.cmp->op == CmpOp::kGe;
        m = above ? m - n.cmp->threshold : n.cmp->threshold - m;
      }
      out[k] = std::isnan(m) ? -kInfinity : m;
    }
    margins[id] = std::move(out);
    return *margins[id];
  }

  bool atom_strict(int id) const
  {
    const BoundNode & n = nodes[id];
    if (n.cmp) {
      return n.cmp->op == CmpOp::kGt || n.cmp->op == CmpOp::kLt;
    }
    return n.atom->strict;
  }

  template <class Sem>
  std::vector<std::optional<Signal<typename Sem::Value>>> & cache()
  {
    if constexpr (std::is_same_v<typename Sem::Value, bool>) {
      return bools;
    } else {
      return robusts;
    }
  }

  template <class Sem>
  const Signal<typename Sem::Value> & signal(int id)
  {
    using V = typename Sem::Value;
    auto & slot = cache<Sem>()[id];
    if (slot) {
      return *slot;
    }
    const BoundNode & n = nodes[id];
    const Trace & trace = *ctx.trace;
    const double lo = trace.sample_times().front();
    const double hi = trace.sample_times().back();
    Signal<V> out;
    switch (n.kind) {
      case NodeKind::kTrue:
        out = constant_signal<V>(lo, hi, Sem::top());
        break;
      case NodeKind::kFalse:
        out = constant_signal<V>(lo, hi, Sem::bottom());
        break;
      case NodeKind::kAtom: {
        const std::vector<double> & m = atom_margins(id);
        std::vector<V> values(m.size());
        if constexpr (std::is_same_v<V, bool>) {
          const bool strict = atom_strict(id);
          for (std::size_t k = 0; k < m.size(); ++k) {
            values[k] = strict ? m[k] > 0.0 : m[k] >= 0.0;
          }
        } else {
          values = m;
        }
        out = compress(step_signal<V>(trace.sample_times(), values));
        break;
      }
      case NodeKind::kNot:
        out = negate<Sem>(signal<Sem>(n.lhs));
        break;
      case NodeKind::kAnd:
        out = meet<Sem>(signal<Sem>(n.lhs), signal<Sem>(n.rhs));
        break;
      case NodeKind::kOr:
        out = join<Sem>(signal<Sem>(n.lhs), signal<Sem>(n.rhs));
        break;
      case NodeKind::kGlobally:
        out = always<Sem>(signal<Sem>(n.lhs), n.interval);
        break;
      case NodeKind::kFinally:
        out = eventually<Sem>(signal<Sem>(n.lhs), n.interval);
        break;
      case NodeKind::kUntil:
        out = until<Sem>(signal<Sem>(n.lhs), signal<Sem>(n.rhs), n.interval);
        break;
    }
    // The vector may not reallocate here: sizes are fixed after binding.
    cache<Sem>()[id] = std::move(out);
    return *cache<Sem>()[id];
  }

  template <class Sem>
  Series<typename Sem::Value> series()
  {
    Series<typename Sem::Value> out;
    out.times = ctx.trace->sample_times();
    for (int id : preorder_ids) {
      out.nodes.push_back(sample(signal<Sem>(id), out.times));
    }
    return out;
  }

  const Signal<bool> & bool_at(std::size_t index)
  {
    if (index >= preorder_ids.size()) {
      throw std::out_of_range("subformula index out of range");
    }
    return signal<BooleanSemantics>(preorder_ids[index]);
  }

  const Signal<double> & robust_at(std::size_t index)
  {
    if (index >= preorder_ids.size()) {
      throw std::out_of_range("subformula index out of range");
    }
    return signal<RobustSemantics>(preorder_ids[index]);
  }
};

Monitor::Monitor(const Formula & formula, EvalContext ctx, const AtomRegistry & registry)
: impl_(std::make_unique<Impl>())
{
  if (!ctx.trace) {
    throw InvalidTrace("evaluation context has no trace");
  }
  if (!ctx.road) {
    ctx.road = std::make_shared<const RoadNetwork>();
  }
  impl_->formula = formula;
  impl_->ctx = std::move(ctx);
  impl_->registry = &registry;
  impl_->root = impl_->bind(formula, true, 0);
  impl_->bools.resize(impl_->nodes.size());
  impl_->robusts.resize(impl_->nodes.size());
  impl_->margins.resize(impl_->nodes.size());
}

Monitor::~Monitor() = default;
Monitor::Monitor(Monitor &&) noexcept = default;
Monitor & Monitor::operator=(Monitor &&) noexcept = default;

const Formula & Monitor::formula() const { return impl_->formula; }
const EvalContext & Monitor::context() const { return impl_->ctx; }

bool Monitor::eval_bool(double t) { return bool_signal().value(t); }
double Monitor::eval_robust(double t) { return robust_signal().value(t); }

const Signal<bool> & Monitor::bool_signal()
{
  return impl_->signal<BooleanSemantics>(impl_->root);
}

const Signal<double> & Monitor::robust_signal()
{
  return impl_->signal<RobustSemantics>(impl_->root);
}

Series<bool> Monitor::bool_series() { return impl_->series<BooleanSemantics>(); }
Series<double> Monitor::robust_series() { return impl_->series<RobustSemantics>(); }

const Signal<bool> & Monitor::bool_signal(std::size_t index) { return impl_->bool_at(index); }
const Signal<double> & Monitor::robust_signal(std::size_t index) { return impl_->robust_at(index); }

std::size_t Monitor::bound_size() const { return impl_->nodes.size(); }

bool eval_bool(const Formula & formula, const EvalContext & ctx, double t)
{
  return Monitor(formula, ctx).eval_bool(t);
}

double eval_robust(const Formula & formula, const EvalContext & ctx, double t)
{
  return Monitor(formula, ctx).eval_robust(t);
}

Series<bool> eval_series_bool(const Formula & formula, const EvalContext & ctx)
{
  return Monitor(formula, ctx).bool_series();
}

Series<double> eval_series_robust(const Formula & formula, const EvalContext & ctx)
{
  return Monitor(formula, ctx).robust_series();
}

Formula expand_macros(const Formula & f, const EvalContext & ctx, const AtomRegistry & registry)
{
  switch (f.kind()) {
    case NodeKind::kTrue:
    case NodeKind::kFalse:
      return f;
    case NodeKind::kAtom:
      if (const MacroAtom * m = registry.macro(f.atom_name())) {
        check_arity(f.atom_name(), m->params, f.atom_args().size());
        return expand_macros(m->expand(f.atom_args(), ctx), ctx, registry);
      }
      return f;
    case NodeKind::kNot:
      return Formula::negation(expand_macros(f.children()[0], ctx, registry));
    case NodeKind::kAnd:
      return Formula::conjunction(
        expand_macros(f.children()[0], ctx, registry), expand_macros(f.children()[1], ctx, registry));
    case NodeKind::kOr:
      return Formula::disjunction(
        expand_macros(f.children()[0], ctx, registry), expand_macros(f.children()[1], ctx, registry));
    case NodeKind::kUntil:
      return Formula::until(
        expand_macros(f.children()[0], ctx, registry), expand_macros(f.children()[1], ctx, registry),
        f.interval());
    case NodeKind::kGlobally:
      return Formula::globally(expand_macros(f.children()[0], ctx, registry), f.interval());
    case NodeKind::kFinally:
      return Formula::finally(expand_macros(f.children()[0], ctx, registry), f.interval());
  }
  return f;
}

}  // namespace scenmon::stl
