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

// Teacher-side analysis of two-point demonstration sets for the ridge
// learner: the canonical demonstration family, its teaching risk and the
// determinant-based teaching quality score.

#ifndef LFDTEACH_MACHINE_TEACHING_H_
#define LFDTEACH_MACHINE_TEACHING_H_

#include <array>
#include <cstddef>
#include <span>

#include "lfdteach/rng.h"
#include "lfdteach/types.h"

namespace lfdteach {

// The teaching dimension of the two-feature ridge learner, and hence the
// size of every demonstration set.
inline constexpr std::size_t kTeachingDimension = 2;

struct DemoSet {
  std::array<State, kTeachingDimension> states{};
  ActionVector actions{};
};

// Gaussian action noise; sigma is a standard deviation.
struct NoiseModel {
  double sigma = 0.0;
};

struct RiskBreakdown {
  double variance_term = 0.0;
  double bias_term = 0.0;
  double total = 0.0;
};

struct GramEigenvalues {
  double b1 = 0.0;  // larger
  double b2 = 0.0;  // smaller
};

// Feature matrix with columns (1, 0) and (cos omega, sin omega).
// omega must lie in (0, pi/2].
FeatureMatrix CanonicalPhi(double omega);

// 0..100 quality index: 100 |det Phi| of the demonstrated states, clamped.
double TeachingScore(const std::array<State, 2>& states);
inline double TeachingScore(const DemoSet& demos) {
  return TeachingScore(demos.states);
}

// Eigenvalues of Phi^T Phi for the canonical family:
//   b1,2 = 1 +- sqrt(1 - sin^2 omega)
GramEigenvalues CanonicalGramEigenvalues(double omega);

// Eigenvalues of Phi^T Phi for an arbitrary 2x2 feature matrix.
GramEigenvalues GramEigenvaluesOf(const FeatureMatrix& phi);

// Variance part of the teaching risk:
//   sigma^2 sum_i b_i / (b_i + lambda)^2
double RiskVariance(double omega, double sigma, double lambda);

// Variance term plus the regularisation bias
//   lambda^2 w*^T (Phi Phi^T + lambda I)^-2 w*.
RiskBreakdown RiskFull(const FeatureMatrix& phi, const SkillParams& w_star,
                       double sigma, double lambda);

// Closed-form d RiskVariance / d omega. Zero at omega = pi/2.
double RiskDerivative(double omega, double sigma, double lambda);

// w*^T phi(x) plus N(0, sigma^2) noise drawn from `rng`.
double NoisyAction(const SkillParams& w_star, const State& x,
                   const NoiseModel& noise, Rng& rng);

// Canonical demonstration pair: x1 = phi^-1((1, 0)) = (pi/2, 0) and
// x2 = phi^-1((cos omega, sin omega)), labelled with noisy actions.
DemoSet GenerateDemoPair(double omega, const SkillParams& w_star,
                         const NoiseModel& noise, Rng& rng);

// Grid element minimising RiskVariance; ties go to the larger omega.
// Throws DomainError on an empty grid or an element outside (0, pi/2].
double OptimalOmega(std::span<const double> grid, double sigma,
                    double lambda);

struct MonteCarloEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::size_t trials = 0;
};

// Empirical E|w_hat - w*|^2 over `trials` independent noisy demonstration
// sets on the canonical feature matrix. Trial i draws from rng.Split(i).
MonteCarloEstimate MonteCarloRisk(double omega, const SkillParams& w_star,
                                  double sigma, double lambda,
                                  std::size_t trials, const Rng& rng);

}  // namespace lfdteach

#endif  // LFDTEACH_MACHINE_TEACHING_H_
