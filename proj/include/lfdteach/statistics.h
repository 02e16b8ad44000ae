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

#ifndef LFDTEACH_STATISTICS_H_
#define LFDTEACH_STATISTICS_H_

#include <cstddef>
#include <span>
#include <vector>

namespace lfdteach {

struct GroupStats {
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation (n - 1 divisor)
};

// Throws InsufficientDataError when n < 2.
GroupStats Describe(std::span<const double> values);

// Single pass: drops values further than 3 sample standard deviations
// from the mean. Order of the survivors is preserved.
std::vector<double> OutlierFilter(std::span<const double> values);

struct TTestResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;  // two-tailed
};

// Student's two-sample t-test with pooled variance, df = na + nb - 2.
// Identical constant samples give t = 0, p = 1.
TTestResult TwoSampleTTest(std::span<const double> a,
                           std::span<const double> b);

// Spearman rank correlation with average ranks for ties.
double SpearmanRho(std::span<const double> x, std::span<const double> y);

}  // namespace lfdteach

#endif  // LFDTEACH_STATISTICS_H_
