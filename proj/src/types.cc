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

#include "lfdteach/types.h"

#include <cstdio>
#include <string>

namespace lfdteach {

namespace {

std::string SingularMessage(double abs_det) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "feature matrix is singular (|det| = %.3g)",
                abs_det);
  return buf;
}

}  // namespace

SingularMatrixError::SingularMatrixError(double abs_det)
    : std::runtime_error(SingularMessage(abs_det)), abs_det_(abs_det) {}

DivergenceError::DivergenceError(std::size_t step)
    : std::runtime_error("rollout diverged at step " + std::to_string(step)),
      step_(step) {}

}  // namespace lfdteach
