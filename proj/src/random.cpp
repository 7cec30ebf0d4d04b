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

#include "qds/random.hpp"

#include <cmath>
#include <numbers>

namespace qds {

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) noexcept {
  std::uint64_t z = root + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(phi);
  has_spare_ = true;
  return r * std::cos(phi);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2, im * std::numbers::sqrt2 / 2};
}

std::size_t Rng::index(std::size_t n) {
  return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
}

CMatrix random_ginibre(Rng& rng, std::size_t rows, std::size_t cols) {
  CMatrix g(rows, cols);
  for (auto& x : g.data()) x = rng.complex_normal();
  return g;
}

CMatrix random_unitary(Rng& rng, std::size_t d) {
  CMatrix q = random_ginibre(rng, d, d);
  // Modified Gram–Schmidt over columns; the implied R has a positive real
  // diagonal, which is the phase convention that makes Q Haar distributed.
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      Complex dot{};
      for (std::size_t i = 0; i < d; ++i) dot += std::conj(q(i, j)) * q(i, k);
      for (std::size_t i = 0; i < d; ++i) q(i, k) -= dot * q(i, j);
    }
    double nrm = 0;
    for (std::size_t i = 0; i < d; ++i) nrm += std::norm(q(i, k));
    nrm = std::sqrt(nrm);
    for (std::size_t i = 0; i < d; ++i) q(i, k) /= nrm;
  }
  return q;
}

CMatrix random_hermitian(Rng& rng, std::size_t d) {
  const CMatrix g = random_ginibre(rng, d, d);
  return hermitian_part(g);
}

CMatrix random_traceless_hermitian(Rng& rng, std::size_t d) {
  CMatrix h = random_hermitian(rng, d);
  const Complex shift = trace(h) / static_cast<double>(d);
  for (std::size_t i = 0; i < d; ++i) h(i, i) -= shift;
  for (std::size_t i = 0; i < d; ++i) h(i, i) = h(i, i).real();
  return h;
}

CMatrix random_density(Rng& rng, std::size_t d, std::size_t rank) {
  const CMatrix g = random_ginibre(rng, d, rank);
  CMatrix rho = hermitian_part(g * adjoint(g));
  rho *= Complex{1.0 / trace(rho).real()};
  return rho;
}

CMatrix random_density(Rng& rng, std::size_t d) {
  return random_density(rng, d, 1 + rng.index(d));
}

CMatrix random_pure_state(Rng& rng, std::size_t d) { return random_density(rng, d, 1); }

}  // namespace qds
