// Copyright 2026 The qds Authors
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

#pragma once

// Seeded sampling helpers. All draws go through a fixed 64-bit engine and
// explicit transforms (no std::*_distribution), so the same seed gives the
// same numbers on every platform and standard library.

#include <cstdint>
#include <random>

#include "qds/linalg.hpp"

namespace qds {

/// Derives an independent per-index seed from a root seed (splitmix64).
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) noexcept;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  Complex complex_normal();
  std::size_t index(std::size_t n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Ginibre matrix with i.i.d. standard complex normal entries.
CMatrix random_ginibre(Rng& rng, std::size_t rows, std::size_t cols);
/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
CMatrix random_unitary(Rng& rng, std::size_t d);
/// Hermitian matrix (G + G†)/2.
CMatrix random_hermitian(Rng& rng, std::size_t d);
CMatrix random_traceless_hermitian(Rng& rng, std::size_t d);
/// Density operator G G† / tr with G of shape d×rank.
CMatrix random_density(Rng& rng, std::size_t d, std::size_t rank);
/// Density operator with rank drawn uniformly from {1, …, d}.
CMatrix random_density(Rng& rng, std::size_t d);
CMatrix random_pure_state(Rng& rng, std::size_t d);

}  // namespace qds
