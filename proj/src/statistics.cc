// Copyright 2026 The lfdteach Authors
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

#include "lfdteach/statistics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

#include "lfdteach/types.h"

namespace lfdteach {
namespace {

std::vector<double> Ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return v[i] < v[j]; });
  std::vector<double> ranks(v.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

GroupStats Describe(std::span<const double> values) {
  if (values.size() < 2) {
    throw InsufficientDataError("need at least two values");
  }
  GroupStats s;
  s.n = values.size();
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(s.n);
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.sd = std::sqrt(ss / static_cast<double>(s.n - 1));
  return s;
}

std::vector<double> OutlierFilter(std::span<const double> values) {
  const GroupStats s = Describe(values);
  const double limit = 3.0 * s.sd;
  std::vector<double> kept;
  kept.reserve(values.size());
  for (double v : values) {
    if (std::abs(v - s.mean) <= limit) kept.push_back(v);
  }
  return kept;
}

TTestResult TwoSampleTTest(std::span<const double> a,
                           std::span<const double> b) {
  const GroupStats sa = Describe(a);
  const GroupStats sb = Describe(b);
  const double na = static_cast<double>(sa.n);
  const double nb = static_cast<double>(sb.n);

  TTestResult r;
  r.df = na + nb - 2.0;
  const double pooled =
      ((na - 1.0) * sa.sd * sa.sd + (nb - 1.0) * sb.sd * sb.sd) / r.df;
  const double se = std::sqrt(pooled * (1.0 / na + 1.0 / nb));
  const double diff = sa.mean - sb.mean;
  if (se == 0.0) {
    // Both samples constant: equal means are no evidence of a difference,
    // unequal means are perfectly separated.
    const double inf = std::numeric_limits<double>::infinity();
    r.t = diff == 0.0 ? 0.0 : std::copysign(inf, diff);
    r.p = diff == 0.0 ? 1.0 : 0.0;
    return r;
  }
  r.t = diff / se;
  const boost::math::students_t dist(r.df);
  r.p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(r.t)));
  r.p = std::min(r.p, 1.0);
  return r;
}

double SpearmanRho(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InsufficientDataError("spearman needs two equal-length samples");
  }
  const std::vector<double> rx = Ranks(x);
  const std::vector<double> ry = Ranks(y);
  // Pearson correlation of the ranks.
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace lfdteach
