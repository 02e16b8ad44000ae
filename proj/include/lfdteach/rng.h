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

#ifndef LFDTEACH_RNG_H_
#define LFDTEACH_RNG_H_

#include <cstdint>
#include <random>

namespace lfdteach {

// SplitMix64 finaliser; a bijective 64-bit mixer.
std::uint64_t Mix64(std::uint64_t x);

// Deterministic random stream. Child streams are derived from
// (seed, index) alone, so any stream can be rebuilt without replaying its
// siblings.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  // Independent child stream keyed by `index`.
  Rng Split(std::uint64_t index) const;

  // Standard normal draw.
  double Normal();
  double Normal(double mean, double stddev) {
    return mean + stddev * Normal();
  }
  double Uniform();  // [0, 1)
  std::uint64_t NextU64() { return engine_(); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace lfdteach

#endif  // LFDTEACH_RNG_H_
