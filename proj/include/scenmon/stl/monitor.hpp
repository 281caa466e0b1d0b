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

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "scenmon/stl/atoms.hpp"
#include "scenmon/stl/context.hpp"
#include "scenmon/stl/formula.hpp"
#include "scenmon/stl/signal.hpp"

namespace scenmon::stl
{

/// Per-sample values of a formula and of every node of its syntax tree.
/// `nodes[k]` belongs to the k-th node in preorder (see preorder()); the root
/// is nodes[0].
template <class V>
struct Series
{
  std::vector<double> times;
  std::vector<std::vector<V>> nodes;

  const std::vector<V> & root() const { return nodes.front(); }
};

/// Binds a formula against a context once and evaluates it exactly over the
/// dense time domain of the trace. Shared subformulas are evaluated once.
class Monitor
{
public:
  Monitor(
    const Formula & formula, EvalContext ctx, const AtomRegistry & registry = standard_registry());
  ~Monitor();
  Monitor(Monitor &&) noexcept;
  Monitor & operator=(Monitor &&) noexcept;

  const Formula & formula() const;
  const EvalContext & context() const;

  bool eval_bool(double t);
  double eval_robust(double t);

  const Signal<bool> & bool_signal();
  const Signal<double> & robust_signal();

  Series<bool> bool_series();
  Series<double> robust_series();

  /// Signals of the preorder node `index` of the formula.
  const Signal<bool> & bool_signal(std::size_t index);
  const Signal<double> & robust_signal(std::size_t index);

  /// Number of distinct nodes after macro expansion and sharing.
  std::size_t bound_size() const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Throws OutOfDomain if t lies outside the trace domain.
bool eval_bool(const Formula & formula, const EvalContext & ctx, double t);
double eval_robust(const Formula & formula, const EvalContext & ctx, double t);

Series<bool> eval_series_bool(const Formula & formula, const EvalContext & ctx);
Series<double> eval_series_robust(const Formula & formula, const EvalContext & ctx);

/// Expands every macro atom in the formula, leaving only primitive atoms.
/// Names stay unresolved.
Formula expand_macros(
  const Formula & formula, const EvalContext & ctx,
  const AtomRegistry & registry = standard_registry());

}  // namespace scenmon::stl
