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

// Linear maps on d×d operators, stored as d²×d² matrices acting on
// column-stacked operators: vec(A)[i + j·d] = A(i, j). Under this
// convention A ↦ V A W† is the matrix conj(W) ⊗ V.

#include <cstddef>

#include "qds/linalg.hpp"

namespace qds {

CMatrix vec(const CMatrix& a);
CMatrix unvec(const CMatrix& v, std::size_t d);

class Superoperator {
 public:
  Superoperator() = default;
  Superoperator(std::size_t dim, CMatrix mat);

  static Superoperator zero(std::size_t d);
  static Superoperator identity(std::size_t d);
  /// A ↦ V A W†.
  static Superoperator sandwich(const CMatrix& v, const CMatrix& w);
  /// A ↦ U A U†.
  static Superoperator conjugation(const CMatrix& u);
  /// A ↦ X A.
  static Superoperator left(const CMatrix& x);
  /// A ↦ A X.
  static Superoperator right(const CMatrix& x);
  /// A ↦ Aᵀ in the computational basis.
  static Superoperator transposition(std::size_t d);
  static Superoperator from_choi(const CMatrix& choi);

  std::size_t dim() const noexcept { return dim_; }
  const CMatrix& mat() const noexcept { return mat_; }

  CMatrix apply(const CMatrix& a) const;
  /// Hilbert–Schmidt adjoint.
  Superoperator adjoint() const;
  /// Choi matrix Σ_kl Φ(|k⟩⟨l|) ⊗ |k⟩⟨l|, indexed (a·d + k, b·d + l).
  CMatrix choi() const;

  Superoperator& operator+=(const Superoperator& o);
  Superoperator& operator-=(const Superoperator& o);
  Superoperator& operator*=(double s);

  friend Superoperator operator+(Superoperator a, const Superoperator& b) { return a += b; }
  friend Superoperator operator-(Superoperator a, const Superoperator& b) { return a -= b; }
  friend Superoperator operator-(Superoperator a) { return a *= -1.0; }
  friend Superoperator operator*(Superoperator a, double s) { return a *= s; }
  friend Superoperator operator*(double s, Superoperator a) { return a *= s; }
  /// Composition (a ∘ b).
  friend Superoperator operator*(const Superoperator& a, const Superoperator& b);

 private:
  std::size_t dim_ = 0;
  CMatrix mat_;
};

/// exp(t·L).
Superoperator exp_superop(const Superoperator& generator, double t);

/// Frobenius distance between the matrix representations.
double distance(const Superoperator& a, const Superoperator& b);

bool is_trace_preserving(const Superoperator& s, double tol);
/// tr(S A) = 0 for every A.
bool is_trace_annihilating(const Superoperator& s, double tol);
/// S(1) = 1 for maps.
bool is_unital_map(const Superoperator& s, double tol);
/// S(A†) = S(A)† for every A (equivalently, Hermitian Choi matrix).
bool is_adjoint_preserving(const Superoperator& s, double tol);
/// Choi matrix positive semidefinite down to −tol·max(1, ‖C‖).
bool is_completely_positive(const Superoperator& s, double tol);

}  // namespace qds
