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

// Qubit (d = 2) Bloch-ball toolkit. Operators are expanded in the
// half-Pauli basis σ̂_j = σ_j / 2 (σ̂₀ = 1/2), and a map S is represented by
// the real 4×4 matrix M_jk = 2·tr(σ̂_j S(σ̂_k)), so S(σ̂_k) = Σ_j M_jk σ̂_j and
// the identity map is the identity matrix.

#include <array>
#include <vector>

#include "qds/linalg.hpp"
#include "qds/states.hpp"
#include "qds/superop.hpp"

namespace qds::qubit {

using Vec3 = std::array<double, 3>;

/// Pauli matrices σ₀ = 1, σ₁, σ₂, σ₃.
const CMatrix& pauli(std::size_t j);
/// Half-Pauli basis element σ̂_j.
CMatrix half_pauli(std::size_t j);

struct BlochVector {
  Vec3 r;

  double norm() const;
  /// ρ = σ̂₀ + r·σ̂; requires ‖r‖ ≤ 1 + 1e-10.
  DensityOperator to_density() const;
  static BlochVector of(const DensityOperator& rho);
};

/// Throws NotAdjointPreserving when the imaginary residue exceeds 1e-11.
RMatrix matrix_rep(const Superoperator& s);
Superoperator from_matrix_rep(const RMatrix& m);

/// Lower-right 3×3 block of a 4×4 Bloch matrix.
RMatrix bloch_block(const RMatrix& m);

struct QubitGeneratorParams {
  Vec3 h{};
  RMatrix k = RMatrix(3, 3);  ///< symmetric

  /// Throws InvalidArgument if K is not exactly symmetric 3×3.
  QubitGeneratorParams(Vec3 h_in, RMatrix k_in);
  QubitGeneratorParams() = default;
};

struct QubitGenerator {
  Superoperator generator;
  RMatrix f;  ///< 3×3 Bloch block of the generator
  RMatrix p;  ///< −(F + Fᵀ) written through K
};

/// L(A) = −i Σ h_j [σ̂_j, A] + Σ k_jk (σ̂_j A σ̂_k − ½(σ̂_j σ̂_k A + A σ̂_j σ̂_k)).
QubitGenerator build_qubit_generator(const QubitGeneratorParams& params);
/// Closed-form Bloch block F(h, K).
RMatrix generator_block(const QubitGeneratorParams& params);
/// 𝒫 built from the entries of K (κ₁ = k₂₂ + k₃₃, …, off-diagonals −k_jk).
RMatrix positivity_matrix(const QubitGeneratorParams& params);

/// Recovers (h, K) from a unital, trace-preserving, adjoint-preserving
/// qubit generator. Throws NotUnital / NotTracePreserving otherwise.
QubitGeneratorParams params_from_generator(const Superoperator& generator);

/// max eigenvalue of F + Fᵀ ≤ 1e-10.
bool is_positive_qubit_generator(const RMatrix& f);

/// Exact positivity margin of a trace-preserving, adjoint-preserving qubit
/// generator with Bloch data (c, F): max over unit n of n·(c + F n). The
/// generated semigroup is positive iff the margin is ≤ 0; `direction` is the
/// maximiser.
struct PositivityMargin {
  double margin;
  Vec3 direction;
};
PositivityMargin positivity_margin(const Superoperator& generator);

enum class Cone { CPTU, PTU_only, Outside };
const char* to_string(Cone c);

struct ConeVerdict {
  Cone cone;
  std::vector<double> k_eigenvalues;  ///< non-increasing
  std::vector<double> p_eigenvalues;  ///< non-increasing
  bool minors_agree;  ///< principal-minor test of 𝒫 gives the same PTU answer
};

ConeVerdict classify_cone(const QubitGeneratorParams& params);

/// Principal-minor test for a symmetric 3×3 matrix being PSD (tolerance tol).
bool psd_by_minors(const RMatrix& m, double tol);

struct WeightedUnitary {
  double weight;
  CMatrix unitary;
};

/// S = Σ_μ w U(·)U† + Σ_ν w U(·)ᵀU† with transposition in the computational
/// basis, all weights positive and summing to one.
struct StormerDecomposition {
  std::vector<WeightedUnitary> mu;
  std::vector<WeightedUnitary> nu;

  Superoperator reconstruct() const;
};

/// Decomposes a unital, trace-preserving, positive qubit map, using the
/// least possible co-CP (ν) weight. Throws NotUnital, NotTracePreserving
/// or NotPositive.
StormerDecomposition stormer_decompose(const Superoperator& s);

/// SU(2) element whose conjugation acts on Bloch vectors as the rotation r,
/// choosing the lift with non-negative real (1,1) entry.
CMatrix su2_lift(const RMatrix& rotation);
/// Bloch rotation of A ↦ U A U†.
RMatrix bloch_rotation(const CMatrix& u);

/// Unique stationary state of a relaxing generator. Null space detected by
/// singular values below 1e-10·‖L‖; more than one direction raises
/// NonUniqueStationaryState.
DensityOperator asymptotic_state(const Superoperator& generator);

}  // namespace qds::qubit
