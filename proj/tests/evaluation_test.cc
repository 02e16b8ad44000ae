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


#include "lfdteach/evaluation.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "lfdteach/learner.h"
#include "lfdteach/machine_teaching.h"
#include "lfdteach/rng.h"

namespace lfdteach {
namespace {

constexpr SkillParams kS1{9.81, 0.0};

Trajectory Shifted(const Trajectory& t, double dq, double dv) {
  Trajectory out = t;
  for (State& x : out.states) {
    x.angle += dq;
    x.velocity += dv;
  }
  return out;
}

TEST(Rmse, Examples) {
  const Trajectory t = Rollout(kS1, {kPi / 2, 0}, 0.5, PendulumParams{});
  EXPECT_EQ(Rmse(t, t), 0.0);
  EXPECT_NEAR(Rmse(Shifted(t, 0.1, 0.0), t), 0.1, 1e-12);
  EXPECT_NEAR(Rmse(Shifted(t, 0.3, 0.4), t), 0.5, 1e-12);
}

TEST(Rmse, SymmetricAndHomogeneous) {
  const PendulumParams p;
  const Trajectory a = Rollout(kS1, {kPi / 2, 0}, 1.0, p);
  const Trajectory b = Rollout({9.9, 0.05}, {kPi / 2, 0}, 1.0, p);
  EXPECT_DOUBLE_EQ(Rmse(a, b), Rmse(b, a));
  // scaling every difference by c scales the metric by c
  Trajectory scaled = a;
  const double c = 2.5;
  for (std::size_t i = 0; i < a.states.size(); ++i) {
    scaled.states[i].angle =
        a.states[i].angle + c * (b.states[i].angle - a.states[i].angle);
    scaled.states[i].velocity =
        a.states[i].velocity +
        c * (b.states[i].velocity - a.states[i].velocity);
  }
  EXPECT_NEAR(Rmse(scaled, a), c * Rmse(b, a), 1e-12);
}

TEST(Rmse, Mismatch) {
  const PendulumParams p;
  const Trajectory a = Rollout(kS1, {kPi / 2, 0}, 1.0, p);
  const Trajectory b = Rollout(kS1, {kPi / 2, 0}, 0.5, p);
  EXPECT_THROW(Rmse(a, b), DomainError);
  PendulumParams coarse;
  coarse.dt = 2e-4;
  const Trajectory c = Rollout(kS1, {kPi / 2, 0}, 2.0, coarse);
  EXPECT_THROW(Rmse(a, c), DomainError);
}

TEST(L2Error, MetricProperties) {
  EXPECT_EQ(L2Error(kS1, kS1), 0.0);
  EXPECT_DOUBLE_EQ(L2Error({3, 4}, {0, 0}), 5.0);
  std::mt19937_64 gen(1);
  std::normal_distribution<double> n(0.0, 3.0);
  for (int i = 0; i < 500; ++i) {
    const SkillParams a{n(gen), n(gen)}, b{n(gen), n(gen)}, c{n(gen), n(gen)};
    EXPECT_DOUBLE_EQ(L2Error(a, b), L2Error(b, a));
    EXPECT_LE(L2Error(a, c), L2Error(a, b) + L2Error(b, c) + 1e-12);
  }
}

TEST(EvaluateLearner, Examples) {
  const PendulumParams p;
  const EvalResult same = EvaluateLearner(kS1, kS1, {kPi / 2, 0}, 3.0, p);
  EXPECT_EQ(same.rmse, 0.0);
  EXPECT_EQ(same.l2, 0.0);
  EXPECT_FALSE(same.diverged);

  const EvalResult near =
      EvaluateLearner({9.81, 0.0}, {9.81, 0.01}, {kPi / 2, 0}, 3.0, p);
  EXPECT_GT(near.rmse, 0.0);
  EXPECT_LT(near.rmse, 0.1);
  EXPECT_DOUBLE_EQ(near.l2, 0.01);
}

TEST(EvaluateLearner, NoiselessOptimalTeaching) {
  Rng rng(0);
  const DemoSet demos = GenerateDemoPair(kPi / 2, kS1, {0.0}, rng);
  const SkillParams w =
      RidgeFit(BuildFeatureMatrix(demos.states), demos.actions, 1e-6);
  const EvalResult r =
      EvaluateLearner(w, kS1, {kPi / 2, 0}, 3.0, PendulumParams{});
  EXPECT_LT(r.l2, 1e-4);
  EXPECT_LT(r.rmse, 1e-3);
}

TEST(EvaluateLearner, DivergenceIsFlagged) {
  const EvalResult r =
      EvaluateLearner({0.0, -200.0}, kS1, {kPi / 2, 0}, 3.0, PendulumParams{});
  EXPECT_TRUE(r.diverged);
  EXPECT_TRUE(std::isinf(r.rmse));
  EXPECT_TRUE(std::isfinite(r.l2));
}

}  // namespace
}  // namespace lfdteach
