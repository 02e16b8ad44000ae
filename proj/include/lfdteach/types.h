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

#ifndef LFDTEACH_TYPES_H_
#define LFDTEACH_TYPES_H_

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace lfdteach {

inline constexpr double kPi = 3.14159265358979323846;

// Pendulum state: angle from the downward vertical and angular velocity.
struct State {
  double angle = 0.0;     // rad
  double velocity = 0.0;  // rad/s

  bool finite() const {
    return std::isfinite(angle) && std::isfinite(velocity);
  }
  friend bool operator==(const State&, const State&) = default;
};

// Controller weights on the features (sin angle, velocity). Used for the
// target skill, the learnt model and arbitrary gains alike.
struct SkillParams {
  double stiffness = 0.0;
  double damping = 0.0;

  bool finite() const {
    return std::isfinite(stiffness) && std::isfinite(damping);
  }
  friend bool operator==(const SkillParams&, const SkillParams&) = default;
};

struct FeatureVector {
  double f1 = 0.0;  // sin(angle)
  double f2 = 0.0;  // velocity

  double norm() const { return std::hypot(f1, f2); }
  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

// 2x2 feature matrix; column i is the feature vector of demonstration i.
struct FeatureMatrix {
  std::array<FeatureVector, 2> cols{};

  // Row-major element access: (row, col).
  double operator()(std::size_t row, std::size_t col) const {
    return row == 0 ? cols[col].f1 : cols[col].f2;
  }
  friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;
};

// The two demonstrated actions, one per column of the feature matrix.
using ActionVector = std::array<double, 2>;

// Thrown when an argument lies outside an operation's domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Thrown by exact solves when the feature matrix is (numerically) singular.
class SingularMatrixError : public std::runtime_error {
 public:
  explicit SingularMatrixError(double abs_det);
  double abs_det() const { return abs_det_; }

 private:
  double abs_det_;
};

// Thrown when a rollout leaves the finite / bounded state region.
class DivergenceError : public std::runtime_error {
 public:
  explicit DivergenceError(std::size_t step);
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

// Thrown by statistics routines given too few samples.
class InsufficientDataError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace lfdteach

#endif  // LFDTEACH_TYPES_H_
