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

#include "lfdteach/learner.h"

#include <cmath>

namespace lfdteach {

FeatureVector FeatureMap(const State& x) {
  return {std::sin(x.angle), x.velocity};
}

State InverseFeatureMap(const FeatureVector& f) {
  if (!std::isfinite(f.f1) || !std::isfinite(f.f2)) {
    throw DomainError("feature vector must be finite");
  }
  if (std::abs(f.f1) > 1.0) {
    throw DomainError("sin feature outside [-1, 1]");
  }
  return {std::asin(f.f1), f.f2};
}

FeatureMatrix BuildFeatureMatrix(const std::array<State, 2>& states) {
  return {{FeatureMap(states[0]), FeatureMap(states[1])}};
}

double Determinant(const FeatureMatrix& phi) {
  return phi.cols[0].f1 * phi.cols[1].f2 - phi.cols[1].f1 * phi.cols[0].f2;
}

SkillParams RidgeFit(const FeatureMatrix& phi, const ActionVector& u,
                     double lambda) {
  if (!(lambda >= 0.0)) throw DomainError("ridge lambda must be >= 0");
  if (lambda == 0.0) return ExactFit(phi, u);

  const FeatureVector& a = phi.cols[0];
  const FeatureVector& b = phi.cols[1];

  // G = Phi Phi^T + lambda I (symmetric), rhs = Phi u.
  const double g11 = a.f1 * a.f1 + b.f1 * b.f1 + lambda;
  const double g12 = a.f1 * a.f2 + b.f1 * b.f2;
  const double g22 = a.f2 * a.f2 + b.f2 * b.f2 + lambda;
  const double r1 = a.f1 * u[0] + b.f1 * u[1];
  const double r2 = a.f2 * u[0] + b.f2 * u[1];

  // G is positive definite for lambda > 0.
  const double det = g11 * g22 - g12 * g12;
  return {(g22 * r1 - g12 * r2) / det, (g11 * r2 - g12 * r1) / det};
}

SkillParams ExactFit(const FeatureMatrix& phi, const ActionVector& u) {
  const double det = Determinant(phi);
  if (!(std::abs(det) >= kSingularDetThreshold)) {
    throw SingularMatrixError(std::abs(det));
  }
  // Phi^T w = u, with Phi^T = [[a1, a2], [b1, b2]].
  const FeatureVector& a = phi.cols[0];
  const FeatureVector& b = phi.cols[1];
  return {(b.f2 * u[0] - a.f2 * u[1]) / det,
          (a.f1 * u[1] - b.f1 * u[0]) / det};
}

double Predict(const SkillParams& w, const State& x) {
  const FeatureVector f = FeatureMap(x);
  return w.stiffness * f.f1 + w.damping * f.f2;
}

double RidgeLoss(const SkillParams& w, const FeatureMatrix& phi,
                 const ActionVector& u, double lambda) {
  double loss = 0.0;
  for (int i = 0; i < 2; ++i) {
    const FeatureVector& f = phi.cols[i];
    const double r = w.stiffness * f.f1 + w.damping * f.f2 - u[i];
    loss += 0.5 * r * r;
  }
  return loss + 0.5 * lambda *
                    (w.stiffness * w.stiffness + w.damping * w.damping);
}

}  // namespace lfdteach
