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

#ifndef LFDTEACH_LEARNER_H_
#define LFDTEACH_LEARNER_H_

#include <array>

#include "lfdteach/types.h"

namespace lfdteach {

// |det| below which the unregularised solve refuses to invert.
inline constexpr double kSingularDetThreshold = 1e-12;

// phi(x) = (sin angle, velocity).
FeatureVector FeatureMap(const State& x);

// Principal-branch inverse: angle = asin(f1) in [-pi/2, pi/2].
// Throws DomainError if |f1| > 1 or an input is non-finite.
State InverseFeatureMap(const FeatureVector& f);

FeatureMatrix BuildFeatureMatrix(const std::array<State, 2>& states);

double Determinant(const FeatureMatrix& phi);

// Ridge regression on the two demonstrations:
//   w = (Phi Phi^T + lambda I)^-1 Phi u
// Solved in closed form. With lambda = 0 the system is Phi^T w = u and a
// SingularMatrixError is thrown when |det Phi| < kSingularDetThreshold.
SkillParams RidgeFit(const FeatureMatrix& phi, const ActionVector& u,
                     double lambda);

// Unregularised fit, w = Phi^-T u, so that each demonstration is
// reproduced exactly: w^T phi_i = u_i.
SkillParams ExactFit(const FeatureMatrix& phi, const ActionVector& u);

// Learnt action w^T phi(x).
double Predict(const SkillParams& w, const State& x);

// sum_i 1/2 (w^T phi_i - u_i)^2 + lambda/2 |w|^2
double RidgeLoss(const SkillParams& w, const FeatureMatrix& phi,
                 const ActionVector& u, double lambda);

}  // namespace lfdteach

#endif  // LFDTEACH_LEARNER_H_
