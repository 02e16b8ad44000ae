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

#include "lfdteach/machine_teaching.h"

#include <algorithm>
#include <cmath>

#include "lfdteach/learner.h"

namespace lfdteach {
namespace {

void CheckOmega(double omega) {
  if (!(omega > 0.0) || omega > kPi / 2) {
    throw DomainError("omega must lie in (0, pi/2]");
  }
}

void CheckNoise(double sigma, double lambda) {
  if (!(sigma >= 0.0)) throw DomainError("sigma must be >= 0");
  if (!(lambda >= 0.0)) throw DomainError("lambda must be >= 0");
}

}  // namespace

FeatureMatrix CanonicalPhi(double omega) {
  CheckOmega(omega);
  return {{FeatureVector{1.0, 0.0},
           FeatureVector{std::cos(omega), std::sin(omega)}}};
}

double TeachingScore(const std::array<State, 2>& states) {
  const double raw = 100.0 * std::abs(Determinant(BuildFeatureMatrix(states)));
  if (!std::isfinite(raw)) return 0.0;
  return std::clamp(raw, 0.0, 100.0);
}

GramEigenvalues CanonicalGramEigenvalues(double omega) {
  CheckOmega(omega);
  const double s = std::sin(omega);
  const double root = std::sqrt(1.0 - s * s);
  return {1.0 + root, 1.0 - root};
}

GramEigenvalues GramEigenvaluesOf(const FeatureMatrix& phi) {
  const FeatureVector& a = phi.cols[0];
  const FeatureVector& b = phi.cols[1];
  // Phi^T Phi = [[a.a, a.b], [a.b, b.b]]
  const double p = a.f1 * a.f1 + a.f2 * a.f2;
  const double q = a.f1 * b.f1 + a.f2 * b.f2;
  const double r = b.f1 * b.f1 + b.f2 * b.f2;
  const double mean = 0.5 * (p + r);
  const double half_gap = std::hypot(0.5 * (p - r), q);
  const double b1 = mean + half_gap;
  if (b1 == 0.0) return {0.0, 0.0};
  // The product of the eigenvalues is det(Phi)^2; avoids cancellation.
  const double det = Determinant(phi);
  return {b1, det * det / b1};
}

double RiskVariance(double omega, double sigma, double lambda) {
  CheckNoise(sigma, lambda);
  const GramEigenvalues eig = CanonicalGramEigenvalues(omega);
  const double sum = eig.b1 / ((eig.b1 + lambda) * (eig.b1 + lambda)) +
                     eig.b2 / ((eig.b2 + lambda) * (eig.b2 + lambda));
  return sigma * sigma * sum;
}

RiskBreakdown RiskFull(const FeatureMatrix& phi, const SkillParams& w_star,
                       double sigma, double lambda) {
  CheckNoise(sigma, lambda);
  const GramEigenvalues eig = GramEigenvaluesOf(phi);
  RiskBreakdown risk;
  if (sigma > 0.0) {
    risk.variance_term =
        sigma * sigma * (eig.b1 / ((eig.b1 + lambda) * (eig.b1 + lambda)) +
                         eig.b2 / ((eig.b2 + lambda) * (eig.b2 + lambda)));
  }
  if (lambda > 0.0) {
    // v = (Phi Phi^T + lambda I)^-1 w*, bias = lambda^2 |v|^2.
    const FeatureVector& a = phi.cols[0];
    const FeatureVector& b = phi.cols[1];
    const double g11 = a.f1 * a.f1 + b.f1 * b.f1 + lambda;
    const double g12 = a.f1 * a.f2 + b.f1 * b.f2;
    const double g22 = a.f2 * a.f2 + b.f2 * b.f2 + lambda;
    const double det = g11 * g22 - g12 * g12;
    const double v1 = (g22 * w_star.stiffness - g12 * w_star.damping) / det;
    const double v2 = (g11 * w_star.damping - g12 * w_star.stiffness) / det;
    risk.bias_term = lambda * lambda * (v1 * v1 + v2 * v2);
  }
  risk.total = risk.variance_term + risk.bias_term;
  return risk;
}

double RiskDerivative(double omega, double sigma, double lambda) {
  CheckOmega(omega);
  CheckNoise(sigma, lambda);
  const double s = std::sin(omega);
  const double c = std::cos(omega);
  const double s2 = s * s;
  const double root = std::sqrt(1.0 - s2);
  const double l = lambda;
  const double numerator =
      4.0 * sigma * sigma * c * s *
      ((2.0 * l + 1.0) * s2 - 2.0 * l * l * l - 3.0 * l * l - 2.0 * l);
  const double lo = root - l - 1.0;
  const double hi = root + l + 1.0;
  return numerator / (lo * lo * lo * hi * hi * hi);
}

double NoisyAction(const SkillParams& w_star, const State& x,
                   const NoiseModel& noise, Rng& rng) {
  const double clean = Predict(w_star, x);
  if (noise.sigma == 0.0) return clean;
  return clean + noise.sigma * rng.Normal();
}

DemoSet GenerateDemoPair(double omega, const SkillParams& w_star,
                         const NoiseModel& noise, Rng& rng) {
  CheckOmega(omega);
  DemoSet demos;
  demos.states[0] = InverseFeatureMap({1.0, 0.0});
  demos.states[1] = InverseFeatureMap({std::cos(omega), std::sin(omega)});
  for (std::size_t i = 0; i < kTeachingDimension; ++i) {
    demos.actions[i] = NoisyAction(w_star, demos.states[i], noise, rng);
  }
  return demos;
}

double OptimalOmega(std::span<const double> grid, double sigma,
                    double lambda) {
  if (grid.empty()) throw DomainError("omega grid is empty");
  double best_omega = 0.0;
  double best_risk = 0.0;
  bool first = true;
  for (double omega : grid) {
    const double risk = RiskVariance(omega, sigma, lambda);
    if (first || risk < best_risk ||
        (risk == best_risk && omega > best_omega)) {
      best_omega = omega;
      best_risk = risk;
      first = false;
    }
  }
  return best_omega;
}

MonteCarloEstimate MonteCarloRisk(double omega, const SkillParams& w_star,
                                  double sigma, double lambda,
                                  std::size_t trials, const Rng& rng) {
  if (trials == 0) throw DomainError("monte carlo needs at least one trial");
  CheckNoise(sigma, lambda);
  const FeatureMatrix phi = CanonicalPhi(omega);
  const NoiseModel noise{sigma};

  // Welford accumulation of the squared parameter error.
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    Rng stream = rng.Split(i);
    const DemoSet demos = GenerateDemoPair(omega, w_star, noise, stream);
    const SkillParams w = RidgeFit(phi, demos.actions, lambda);
    const double dk = w.stiffness - w_star.stiffness;
    const double dd = w.damping - w_star.damping;
    const double err = dk * dk + dd * dd;
    const double delta = err - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (err - mean);
  }
  MonteCarloEstimate est;
  est.mean = mean;
  est.trials = trials;
  if (trials > 1) {
    const double var = m2 / static_cast<double>(trials - 1);
    est.standard_error = std::sqrt(var / static_cast<double>(trials));
  }
  return est;
}

}  // namespace lfdteach
