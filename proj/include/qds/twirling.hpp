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

// Constructive semigroup families: Poisson twirling, random-unitary maps and
// their generators, projection semigroups, and twirling with finitely
// atomic signed measures.

#include <cstdint>
#include <vector>

#include "qds/superop.hpp"

namespace qds {

struct Atom {
  double weight;
  CMatrix unitary;
};

/// Finitely atomic signed measure on the unitary group. Weights must sum to
/// one (1e-10) and every atom must be unitary (1e-11).
class AtomicMeasure {
 public:
  explicit AtomicMeasure(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  std::size_t dim() const noexcept { return atoms_.front().unitary.rows(); }
  /// All weights non-negative.
  bool probability() const noexcept { return probability_; }

 private:
  std::vector<Atom> atoms_;
  bool probability_ = true;
};

/// Probability mixture of unitaries, p_j > 0 summing to one.
class RandomUnitarySpec {
 public:
  explicit RandomUnitarySpec(std::vector<Atom> terms);

  const std::vector<Atom>& terms() const noexcept { return terms_; }
  std::size_t dim() const noexcept { return terms_.front().unitary.rows(); }

 private:
  std::vector<Atom> terms_;
};

/// Σ p_j U_j · U_j†.
Superoperator random_unitary_map(const RandomUnitarySpec& spec);

/// λ(U · U† − id).
Superoperator poisson_generator(double lambda, const CMatrix& u);
/// e^{−λt} Σ_n (λt)ⁿ/n! Uⁿ · U†ⁿ, truncated once the Poisson tail drops
/// below 1e-14 (at most 10⁴ terms).
Superoperator poisson_twirl(double lambda, const CMatrix& u, double t);
/// Number of series terms poisson_twirl uses for mean λt.
std::size_t poisson_terms(double mean);

struct SelfadjointNoise {
  double rate;
  CMatrix op;  ///< traceless, selfadjoint, HS-orthonormal to its siblings
};

/// −i[H, ·] + Σ γ_k (L_k · L_k − ½{L_k², ·}) + γ₀ (R − id).
Superoperator twirl_generator(double gamma0, const RandomUnitarySpec& r,
                              const std::vector<SelfadjointNoise>& noise, const CMatrix& h);

/// −γ(id − P).
Superoperator projection_generator(const Superoperator& p, double gamma);
/// P + e^{−γt}(id − P) for an idempotent CPTP map P.
Superoperator projection_semigroup(const Superoperator& p, double gamma, double t);

/// A ↦ Σ_k π_k A π_k with π_k the rank-one projectors onto the columns of
/// the unitary `basis`.
Superoperator luders_projection(const CMatrix& basis);
/// A ↦ tr(A) ρ₀.
Superoperator replacement_projection(const CMatrix& rho0);

struct GeneralizedTwirl {
  Superoperator map;
  bool positive;     ///< d = 2 exact; d > 2 sampled on 500 pure states
  bool probability;  ///< the measure has no negative atoms
};

/// Σ w U · U†.
GeneralizedTwirl generalized_twirl_map(const AtomicMeasure& sigma, std::uint64_t seed = 0x7a1);

}  // namespace qds
