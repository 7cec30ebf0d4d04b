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

// Spectral entropies of density operators: von Neumann, Tsallis, Rényi, the
// Schatten-norm defect N_p = 1 − ‖ρ‖_p, and the generic family
// h(tr g₁(ρ), …, tr gₙ(ρ)).

#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qds/states.hpp"

namespace qds {

double von_neumann(const DensityOperator& rho);
double tsallis(const DensityOperator& rho, double q);
double renyi(const DensityOperator& rho, double q);
double schatten_defect(const DensityOperator& rho, double p);

// Spectrum-level versions; `probs` must be a probability vector.
double von_neumann(std::span<const double> probs);
double tsallis(std::span<const double> probs, double q);
double renyi(std::span<const double> probs, double q);
double schatten_defect(std::span<const double> probs, double p);

enum class Monotonicity { StrictlyIncreasing, StrictlyDecreasing };
enum class Curvature { StrictlyConcave, StrictlyConvex };

struct InnerFunction {
  std::function<double(double)> g;
  Curvature curvature;
};

/// Outer function h strictly monotone in every argument and inner functions
/// g_j that are strictly convex when h decreases, strictly concave when h
/// increases. Construction checks the pairing and that each g_j is finite on
/// [0, 1]; both failures raise InconsistentSpec.
class GenericEntropy {
 public:
  GenericEntropy(std::function<double(std::span<const double>)> outer, Monotonicity direction,
                 std::vector<InnerFunction> inner);

  double operator()(std::span<const double> probs) const;

  Monotonicity direction() const noexcept { return direction_; }
  std::size_t arity() const noexcept { return inner_.size(); }

 private:
  std::function<double(std::span<const double>)> outer_;
  Monotonicity direction_;
  std::vector<InnerFunction> inner_;
};

double generic_entropy(const DensityOperator& rho, const GenericEntropy& spec);

struct VonNeumannKind {};
struct TsallisKind {
  double q;
};
struct RenyiKind {
  double q;
};
struct SchattenDefectKind {
  double p;
};

/// One member of the implemented entropy families. Tsallis and Rényi at
/// exactly q = 1 evaluate as von Neumann.
class EntropySpec {
 public:
  using Kind = std::variant<VonNeumannKind, TsallisKind, RenyiKind, SchattenDefectKind,
                            GenericEntropy>;

  static EntropySpec von_neumann() { return EntropySpec(VonNeumannKind{}); }
  static EntropySpec tsallis(double q);
  static EntropySpec renyi(double q);
  static EntropySpec schatten_defect(double p);
  static EntropySpec generic(GenericEntropy g) { return EntropySpec(std::move(g)); }

  /// Parses CLI tokens: vn, tsallis:Q, renyi:Q, np:P (P may be "inf").
  static EntropySpec parse(const std::string& token);

  double evaluate(std::span<const double> probs) const;
  double evaluate(const DensityOperator& rho) const;

  /// Short column label: S, T_2, R_0.5, N_inf, G.
  std::string label() const;
  const Kind& kind() const noexcept { return kind_; }

 private:
  explicit EntropySpec(Kind k) : kind_(std::move(k)) {}
  Kind kind_;
};

/// The families used throughout the test suites: vn, tsallis q ∈ {0.5, 1, 2,
/// 3}, renyi q ∈ {0.5, 1, 2, 3}, N_p p ∈ {1.5, 2, 4, ∞}.
std::vector<EntropySpec> standard_entropy_set();

}  // namespace qds
