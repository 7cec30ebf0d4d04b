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

// GKLS generators: compilation to superoperators, evolution, the diagonal
// form, structural classifiers (unitality, complete/conditional positivity,
// positivity of the generated semigroup) and the entropy/majorization
// equivalence report.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qds/entropy.hpp"
#include "qds/states.hpp"
#include "qds/superop.hpp"

namespace qds {

struct NoiseTerm {
  double rate;
  CMatrix op;
};

/// L(A) = −i[H, A] + Σ γ_k (V_k A V_k† − ½{V_k† V_k, A}).
class GklsGenerator {
 public:
  /// Requires H Hermitian (1e-12 relative), tr H = 0 (1e-10), every rate ≥ 0
  /// and all operators d×d.
  GklsGenerator(CMatrix hamiltonian, std::vector<NoiseTerm> noise);

  /// Same, but first removes the trace of H (it does not affect L).
  static GklsGenerator with_trace_removed(CMatrix hamiltonian, std::vector<NoiseTerm> noise);

  std::size_t dim() const noexcept { return hamiltonian_.rows(); }
  const CMatrix& hamiltonian() const noexcept { return hamiltonian_; }
  const std::vector<NoiseTerm>& noise() const noexcept { return noise_; }

  /// √γ_k V_k, the Kraus operators of the completely positive part.
  std::vector<CMatrix> kraus() const;

 private:
  CMatrix hamiltonian_;
  std::vector<NoiseTerm> noise_;
};

Superoperator compile(const GklsGenerator& gen);

/// −i[H, ·].
Superoperator hamiltonian_superop(const CMatrix& h);
/// γ (V·V† − ½{V†V, ·}).
Superoperator dissipator(const CMatrix& v, double rate = 1.0);

/// exp(tL)ρ, revalidated at tolerance 1e-7; a failure raises
/// EvolutionLeftStateSpace.
DensityOperator evolve(const Superoperator& generator, const DensityOperator& rho, double t);

/// ‖L(1)‖_F.
double unitality_defect(const Superoperator& generator);
/// ‖L(1)‖_F ≤ 1e-10·d.
bool is_unital_generator(const Superoperator& generator);

/// ‖Σ V V† − Σ V† V‖_F ≤ 1e-10.
bool jointly_normal(std::span<const CMatrix> kraus);

/// Orthonormal (Hilbert–Schmidt) traceless Hermitian basis of d×d
/// matrices, d² − 1 elements: off-diagonal symmetric and antisymmetric
/// pairs in row-major pair order, then the diagonal elements. For d = 2
/// this is σ₁/√2, σ₂/√2, σ₃/√2.
std::vector<CMatrix> traceless_hermitian_basis(std::size_t d);

/// Diagonal form of any adjoint-preserving, trace-annihilating generator:
/// L = −i[H, ·] + Σ γ_j (F_j · F_j† − ½{F_j† F_j, ·}) with traceless,
/// HS-orthonormal F_j. Rates may be negative when L is not conditionally
/// completely positive; `completely_positive` reports that case.
struct DiagonalForm {
  CMatrix hamiltonian;
  std::vector<double> rates;
  std::vector<CMatrix> ops;
  bool completely_positive = true;
};

DiagonalForm diagonalize_generator(const Superoperator& generator);

/// Equivalent generator with traceless, HS-orthonormal noise operators.
GklsGenerator diagonal_form(const GklsGenerator& gen);

/// Adjoint-preserving, trace-annihilating and conditionally completely
/// positive (Π C_L Π ⪰ −1e-9 on the complement of the maximally entangled
/// vector).
bool is_gkls_generator(const Superoperator& generator);

struct PositivityReport {
  bool verdict = false;       ///< semigroup is positive and trace-preserving
  bool exact = false;         ///< false when the verdict is sampled
  bool unital = false;        ///< column sums of the basis matrix vanish
  double worst_offdiagonal = 0;  ///< min_{j≠k} tr(P_j L P_k) over checked bases
  std::size_t bases_checked = 0;
  std::optional<CMatrix> witness_basis;  ///< columns form the violating basis
};

/// For every orthonormal basis {ψ_j}: tr(P_j L P_k) ≥ 0 for j ≠ k with
/// vanishing column sums (trace preservation). d = 2 is decided exactly in
/// the Bloch picture; larger d is checked on the computational and Fourier
/// bases plus `samples` Haar-random bases.
PositivityReport check_positive_generator(const Superoperator& generator,
                                          std::size_t samples = 200,
                                          std::uint64_t seed = 0x5eed);

struct EntropyMonotonicity {
  std::string label;
  bool monotone;
};

struct DecreaseWitness {
  std::string entropy;
  std::size_t state_index;  ///< 0 is the maximally mixed state
  double t_from;
  double t_to;
  double value_from;
  double value_to;
};

struct Theorem1Report {
  bool unital = false;
  bool majorization_ok = false;
  std::vector<EntropyMonotonicity> entropies_monotone;
  bool entropies_ok = false;
  bool kraus_jointly_normal = false;
  bool all_agree = false;
  double unitality_defect = 0;
  std::optional<DecreaseWitness> witness;
};

struct ClassifyOptions {
  std::vector<EntropySpec> entropies = standard_entropy_set();
  std::vector<double> t_grid;  ///< ascending, starting at 0
  std::size_t rho_samples = 8;
  std::uint64_t seed = 1;
};

/// Uniform grid of `points` values on [0, t_max].
std::vector<double> uniform_grid(double t_max, std::size_t points);

/// Evaluates unitality, majorization Φ_tρ ≺ ρ, entropy monotonicity along
/// the grid (starting from ρ* and then from random states) and joint
/// normality of the diagonal-form Kraus operators.
Theorem1Report classify_theorem1(const GklsGenerator& gen, const ClassifyOptions& options);
/// Same for a generator given only as a superoperator; joint normality is
/// taken on the (possibly signed) diagonal form.
Theorem1Report classify_theorem1(const Superoperator& generator, const ClassifyOptions& options);

/// Entropy trace step test: every consecutive difference ≥ −1e-9·(1+|v|).
bool non_decreasing(std::span<const double> values);

}  // namespace qds
