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

// Density operators, ordered spectra, majorization, the bistochastic matrix
// linking the spectra of ρ and Φ(ρ), and Birkhoff–von Neumann decomposition.

#include <cstddef>
#include <span>
#include <vector>

#include "qds/linalg.hpp"
#include "qds/superop.hpp"

namespace qds {

inline constexpr double kDensityTol = 1e-9;

/// Ordered eigenvalue vector of a state: clamped to [0, 1], sorted
/// non-increasing, summing to one.
class EigenvalueVector {
 public:
  /// Sorts, clamps entries ≥ −1e-12 into [0, 1] and renormalises.
  /// Throws NotPositive for entries below −1e-12 and TraceNotOne when the
  /// sum drifts from one by more than 1e-9.
  static EigenvalueVector from_values(std::vector<double> values);

  std::span<const double> probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t k) const noexcept { return probs_[k]; }

 private:
  explicit EigenvalueVector(std::vector<double> p) : probs_(std::move(p)) {}
  std::vector<double> probs_;
};

class DensityOperator {
 public:
  std::size_t dim() const noexcept { return mat_.rows(); }
  const CMatrix& mat() const noexcept { return mat_; }
  double tol() const noexcept { return tol_; }
  /// Eigendecomposition of the (Hermitised) matrix, values non-increasing.
  const HermEigen& eigen() const noexcept { return eigen_; }

  static DensityOperator maximally_mixed(std::size_t d);

 private:
  friend DensityOperator validate_density(const CMatrix& a, double tol);
  DensityOperator(CMatrix mat, HermEigen eigen, double tol)
      : mat_(std::move(mat)), eigen_(std::move(eigen)), tol_(tol) {}

  CMatrix mat_;
  HermEigen eigen_;
  double tol_ = kDensityTol;
};

/// Checks Hermiticity, positivity and unit trace, each within tol.
DensityOperator validate_density(const CMatrix& a, double tol = kDensityTol);

EigenvalueVector eigenvalue_vector(const DensityOperator& rho);

/// True iff y ≺ x: every partial sum of y is at most that of x and the
/// totals agree, both within tol.
bool majorizes(std::span<const double> x, std::span<const double> y, double tol = 1e-9);
bool majorizes(const EigenvalueVector& x, const EigenvalueVector& y, double tol = 1e-9);

class BistochasticMatrix {
 public:
  /// Clamps entries in (−1e-10, 0) to zero; throws NotBistochastic when an
  /// entry is below −1e-10 or a row/column sum is off by more than 1e-9.
  static BistochasticMatrix from(RMatrix entries);

  const RMatrix& entries() const noexcept { return entries_; }
  std::size_t dim() const noexcept { return entries_.rows(); }
  std::vector<double> apply(std::span<const double> x) const;

 private:
  explicit BistochasticMatrix(RMatrix e) : entries_(std::move(e)) {}
  RMatrix entries_;
};

/// B_jk = tr(Q_j Φ(P_k)) with P_k, Q_j the rank-one eigenprojectors of ρ and
/// Φ(ρ), both ordered by non-increasing eigenvalue.
BistochasticMatrix extract_bistochastic(const Superoperator& phi, const DensityOperator& rho);

using Permutation = std::vector<std::size_t>;  ///< row i maps to column perm[i]

struct BirkhoffTerm {
  double weight;
  Permutation perm;
};

struct BirkhoffDecomposition {
  std::vector<BirkhoffTerm> terms;

  RMatrix reconstruct(std::size_t d) const;
};

RMatrix permutation_matrix(const Permutation& perm);

/// Greedy bottleneck decomposition: each step takes the permutation that
/// maximises its smallest supporting entry.
BirkhoffDecomposition birkhoff_decompose(const BistochasticMatrix& b);

}  // namespace qds
