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

#include "scenmon/stl/signal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "scenmon/errors.hpp"

namespace scenmon::stl
{

template <class V>
std::pair<std::size_t, bool> Signal<V>::locate(double t) const
{
  const std::size_t n = times.size();
  if (t <= times.front() + kTimeSnap) {
    if (t < times.front() - kTimeSnap) {
      throw OutOfDomain("time precedes signal domain");
    }
    return {0, true};
  }
  if (t >= times.back() - kTimeSnap) {
    if (t > times.back() + kTimeSnap) {
      throw OutOfDomain("time exceeds signal domain");
    }
    return {n - 1, true};
  }
  auto it = std::upper_bound(times.begin(), times.end(), t);
  std::size_t i = static_cast<std::size_t>(it - times.begin()) - 1;
  if (times[i + 1] - t <= kTimeSnap) {
    return {i + 1, true};
  }
  if (t - times[i] <= kTimeSnap) {
    return {i, true};
  }
  return {i, false};
}

template <class V>
V Signal<V>::value(double t) const
{
  auto [i, on_point] = locate(t);
  return on_point ? at[i] : between[i];
}

template <class V>
Signal<V> step_signal(const std::vector<double> & times, const std::vector<V> & values)
{
  Signal<V> s;
  s.times = times;
  s.at.assign(values.begin(), values.end());
  s.between.assign(values.begin(), values.end() - 1);
  return s;
}

template <class V>
Signal<V> constant_signal(double lo, double hi, V value)
{
  Signal<V> s;
  if (hi > lo) {
    s.times = {lo, hi};
    s.at = {value, value};
    s.between = {value};
  } else {
    s.times = {lo};
    s.at = {value};
  }
  return s;
}

template <class V>
Signal<V> compress(const Signal<V> & s)
{
  Signal<V> out;
  const std::size_t n = s.times.size();
  out.times.push_back(s.times[0]);
  out.at.push_back(s.at[0]);
  for (std::size_t i = 1; i < n; ++i) {
    const bool interior = i + 1 < n;
    if (interior && s.between[i - 1] == s.at[i] && s.at[i] == s.between[i]) {
      continue;
    }
    out.between.push_back(s.between[i - 1]);
    out.times.push_back(s.times[i]);
    out.at.push_back(s.at[i]);
  }
  return out;
}

namespace
{

/// Sorted breakpoint grid over [lo, hi] with near-duplicates merged and both
/// endpoints kept exactly.
std::vector<double> make_grid(std::vector<double> candidates, double lo, double hi)
{
  std::vector<double> kept;
  kept.reserve(candidates.size() + 2);
  for (double c : candidates) {
    if (c > lo + kTimeMerge && c < hi - kTimeMerge) {
      kept.push_back(c);
    }
  }
  std::sort(kept.begin(), kept.end());
  std::vector<double> grid;
  grid.reserve(kept.size() + 2);
  grid.push_back(lo);
  for (double c : kept) {
    if (c - grid.back() >= kTimeMerge) {
      grid.push_back(c);
    }
  }
  if (hi > lo) {
    grid.push_back(hi);
  }
  return grid;
}

template <class V, class Fn>
Signal<V> tabulate(const std::vector<double> & grid, Fn && fn)
{
  Signal<V> out;
  out.times = grid;
  out.at.reserve(grid.size());
  for (double t : grid) {
    out.at.push_back(fn(t));
  }
  out.between.reserve(grid.size());
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    out.between.push_back(fn(0.5 * (grid[i] + grid[i + 1])));
  }
  return compress(out);
}

template <class V>
std::vector<double> shifted_candidates(const Signal<V> & s, const TimeInterval & j)
{
  std::vector<double> c;
  c.reserve(2 * s.times.size());
  for (double x : s.times) {
    c.push_back(x - j.lo);
    if (!j.unbounded()) {
      c.push_back(x - j.hi);
    }
  }
  return c;
}

/// Both signals re-expressed on the union of their breakpoints.
template <class V>
std::pair<Signal<V>, Signal<V>> align(const Signal<V> & a, const Signal<V> & b)
{
  if (a.times == b.times) {
    return {a, b};
  }
  std::vector<double> c = a.times;
  c.insert(c.end(), b.times.begin(), b.times.end());
  const std::vector<double> grid = make_grid(std::move(c), a.lo(), a.hi());
  auto resample = [&grid](const Signal<V> & s) {
    Signal<V> out;
    out.times = grid;
    for (double t : grid) {
      out.at.push_back(s.value(t));
    }
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      out.between.push_back(s.value(0.5 * (grid[i] + grid[i + 1])));
    }
    return out;
  };
  return {resample(a), resample(b)};
}

/// Element index: 2*i is the point times[i], 2*i+1 the gap after it.
struct ElementRange
{
  std::size_t first = 0;
  std::size_t last = 0;
  bool starts_inside_gap = false;
  bool empty = true;
};

template <class V>
ElementRange window_elements(const Signal<V> & s, double w_lo, double w_hi)
{
  ElementRange r;
  if (w_lo > s.hi() + kTimeSnap) {
    return r;
  }
  w_hi = std::min(w_hi, s.hi());
  auto [i, lo_pt] = s.locate(w_lo);
  auto [k, hi_pt] = s.locate(w_hi);
  r.first = lo_pt ? 2 * i : 2 * i + 1;
  r.last = hi_pt ? 2 * k : 2 * k + 1;
  r.starts_inside_gap = !lo_pt;
  r.empty = r.last < r.first;
  return r;
}

template <class V>
V element_value(const Signal<V> & s, std::size_t e)
{
  return (e % 2 == 0) ? s.at[e / 2] : s.between[e / 2];
}

template <class Sem>
Signal<typename Sem::Value> window_aggregate(
  const Signal<typename Sem::Value> & s, const TimeInterval & j, bool use_meet)
{
  using V = typename Sem::Value;
  const V identity = use_meet ? Sem::top() : Sem::bottom();
  auto op = [use_meet](V a, V b) { return use_meet ? Sem::meet(a, b) : Sem::join(a, b); };
  const std::vector<double> grid = make_grid(shifted_candidates(s, j), s.lo(), s.hi());

  if (j.unbounded()) {
    const std::size_t elements = 2 * s.times.size() - 1;
    std::vector<V> suffix(elements + 1, identity);
    for (std::size_t e = elements; e-- > 0;) {
      suffix[e] = op(element_value(s, e), suffix[e + 1]);
    }
    return tabulate<V>(grid, [&](double t) -> V {
      const double w_lo = t + j.lo;
      if (w_lo > s.hi() + kTimeSnap) {
        return identity;
      }
      auto [i, pt] = s.locate(w_lo);
      return suffix[pt ? 2 * i : 2 * i + 1];
    });
  }

  return tabulate<V>(grid, [&](double t) -> V {
    const ElementRange r = window_elements(s, t + j.lo, t + j.hi);
    V acc = identity;
    if (r.empty) {
      return acc;
    }
    for (std::size_t e = r.first; e <= r.last; ++e) {
      acc = op(acc, element_value(s, e));
    }
    return acc;
  });
}

}  // namespace

template <class Sem>
Signal<typename Sem::Value> negate(const Signal<typename Sem::Value> & s)
{
  Signal<typename Sem::Value> out = s;
  for (std::size_t i = 0; i < out.at.size(); ++i) {
    out.at[i] = Sem::negate(s.at[i]);
  }
  for (std::size_t i = 0; i < out.between.size(); ++i) {
    out.between[i] = Sem::negate(s.between[i]);
  }
  return out;
}

namespace
{

template <class Sem, class Op>
Signal<typename Sem::Value> pointwise(
  const Signal<typename Sem::Value> & a, const Signal<typename Sem::Value> & b, Op op)
{
  auto [x, y] = align(a, b);
  Signal<typename Sem::Value> out;
  out.times = x.times;
  for (std::size_t i = 0; i < x.at.size(); ++i) {
    out.at.push_back(op(x.at[i], y.at[i]));
  }
  for (std::size_t i = 0; i < x.between.size(); ++i) {
    out.between.push_back(op(x.between[i], y.between[i]));
  }
  return compress(out);
}

}  // namespace

template <class Sem>
Signal<typename Sem::Value> meet(
  const Signal<typename Sem::Value> & a, const Signal<typename Sem::Value> & b)
{
  return pointwise<Sem>(a, b, [](auto p, auto q) { return Sem::meet(p, q); });
}

template <class Sem>
Signal<typename Sem::Value> join(
  const Signal<typename Sem::Value> & a, const Signal<typename Sem::Value> & b)
{
  return pointwise<Sem>(a, b, [](auto p, auto q) { return Sem::join(p, q); });
}

template <class Sem>
Signal<typename Sem::Value> always(const Signal<typename Sem::Value> & s, const TimeInterval & j)
{
  return window_aggregate<Sem>(s, j, true);
}

template <class Sem>
Signal<typename Sem::Value> eventually(
  const Signal<typename Sem::Value> & s, const TimeInterval & j)
{
  return window_aggregate<Sem>(s, j, false);
}

template <class Sem>
Signal<typename Sem::Value> until(
  const Signal<typename Sem::Value> & lhs, const Signal<typename Sem::Value> & rhs,
  const TimeInterval & j)
{
  using V = typename Sem::Value;
  auto [f1, f2] = align(lhs, rhs);
  const std::vector<double> grid = make_grid(shifted_candidates(f1, j), f1.lo(), f1.hi());

  if (j.unbounded()) {
    // Backward recursion for the window [s, end): value at each point and
    // inside each gap.
    const std::size_t n = f1.times.size();
    std::vector<V> at_point(n);
    std::vector<V> in_gap(n > 0 ? n - 1 : 0);
    at_point[n - 1] = f2.at[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
      const V g1 = f1.between[i];
      const V g2 = f2.between[i];
      in_gap[i] = Sem::join(g2, Sem::meet(g1, at_point[i + 1]));
      const V just_after = Sem::meet(g1, Sem::join(g2, at_point[i + 1]));
      at_point[i] = Sem::join(f2.at[i], Sem::meet(f1.at[i], just_after));
    }
    return tabulate<V>(grid, [&](double t) -> V {
      const double w_lo = t + j.lo;
      if (w_lo > f1.hi() + kTimeSnap) {
        return Sem::bottom();
      }
      auto [i, pt] = f1.locate(w_lo);
      return pt ? at_point[i] : in_gap[i];
    });
  }

  return tabulate<V>(grid, [&](double t) -> V {
    const ElementRange r = window_elements(f1, t + j.lo, t + j.hi);
    V best = Sem::bottom();
    if (r.empty) {
      return best;
    }
    V prefix = Sem::top();  // inf of lhs over [t + lo, start of current element)
    for (std::size_t e = r.first; e <= r.last; ++e) {
      const V v1 = element_value(f1, e);
      const V v2 = element_value(f2, e);
      if (e % 2 == 0 || (e == r.first && r.starts_inside_gap)) {
        best = Sem::join(best, Sem::meet(v2, prefix));
      } else {
        best = Sem::join(best, Sem::meet(v2, Sem::meet(prefix, v1)));
      }
      prefix = Sem::meet(prefix, v1);
    }
    return best;
  });
}

template <class V>
std::vector<V> sample(const Signal<V> & s, const std::vector<double> & times)
{
  std::vector<V> out;
  out.reserve(times.size());
  for (double t : times) {
    out.push_back(s.value(t));
  }
  return out;
}

#define SCENMON_INSTANTIATE_VALUE(V)                                                        \
  template struct Signal<V>;                                                                \
  template Signal<V> step_signal<V>(const std::vector<double> &, const std::vector<V> &);  \
  template Signal<V> constant_signal<V>(double, double, V);                                 \
  template Signal<V> compress<V>(const Signal<V> &);                                        \
  template std::vector<V> sample<V>(const Signal<V> &, const std::vector<double> &);

#define SCENMON_INSTANTIATE_SEM(S)                                                          \
  template Signal<S::Value> negate<S>(const Signal<S::Value> &);                            \
  template Signal<S::Value> meet<S>(const Signal<S::Value> &, const Signal<S::Value> &);    \
  template Signal<S::Value> join<S>(const Signal<S::Value> &, const Signal<S::Value> &);    \
  template Signal<S::Value> always<S>(const Signal<S::Value> &, const TimeInterval &);      \
  template Signal<S::Value> eventually<S>(const Signal<S::Value> &, const TimeInterval &);  \
  template Signal<S::Value> until<S>(                                                       \
    const Signal<S::Value> &, const Signal<S::Value> &, const TimeInterval &);

SCENMON_INSTANTIATE_VALUE(bool)
SCENMON_INSTANTIATE_VALUE(double)
SCENMON_INSTANTIATE_SEM(BooleanSemantics)
SCENMON_INSTANTIATE_SEM(RobustSemantics)

}  // namespace scenmon::stl
