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

#include <Eigen/Dense>

#include "qds/gkls.hpp"
#include "qds/linalg.hpp"
#include "qds/random.hpp"

namespace qds::test {

inline Eigen::MatrixXcd to_eigen(const CMatrix& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

inline CMatrix from_eigen(const Eigen::MatrixXcd& m) {
  CMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

inline double max_diff(const CMatrix& a, const CMatrix& b) { return max_abs(a - b); }
inline double max_diff(const RMatrix& a, const RMatrix& b) { return max_abs(a - b); }

inline CMatrix diag(std::initializer_list<double> values) {
  CMatrix m(values.size(), values.size());
  std::size_t i = 0;
  for (double v : values) {
    m(i, i) = v;
    ++i;
  }
  return m;
}

/// Random GKLS generator. Unital draws use unitary and Hermitian noise
/// operators (a jointly normal Kraus set); generic draws use Ginibre noise.
inline GklsGenerator random_generator(Rng& rng, std::size_t d, bool unital) {
  std::vector<NoiseTerm> noise;
  const std::size_t terms = 1 + rng.index(3);
  for (std::size_t k = 0; k < terms; ++k) {
    const double rate = rng.uniform(0.2, 1.5);
    if (unital) {
      noise.push_back({rate, k % 2 == 0 ? random_unitary(rng, d) : random_hermitian(rng, d)});
    } else {
      noise.push_back({rate, random_ginibre(rng, d, d) * Complex{1.0 / std::sqrt(double(d))}});
    }
  }
  return GklsGenerator(random_traceless_hermitian(rng, d), std::move(noise));
}

inline CMatrix sigma_plus() { return CMatrix{{0, 1}, {0, 0}}; }
inline CMatrix sigma_minus() { return CMatrix{{0, 0}, {1, 0}}; }

/// Qubit generator γ₁ D[σ₋] + γ₂ D[σ₊] with D[V] = V·V† − ½{V†V, ·}.
inline GklsGenerator raising_lowering(double g1, double g2) {
  return GklsGenerator(CMatrix(2, 2), {{g1, sigma_minus()}, {g2, sigma_plus()}});
}

}  // namespace qds::test
