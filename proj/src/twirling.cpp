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

#include "qds/twirling.hpp"

#include <algorithm>
#include <cmath>

#include "qds/gkls.hpp"
#include "qds/kernels.hpp"
#include "qds/qubit.hpp"
#include "qds/random.hpp"

namespace qds {
namespace {

void check_unitary(const CMatrix& u) {
  if (!u.is_square() || u.rows() == 0) throw Error(ErrorCode::DimensionMismatch, "unitary shape");
  if (!is_unitary(u, 1e-11)) throw Error(ErrorCode::NotUnitary, "operator is not unitary");
}

void check_atoms(const std::vector<Atom>& atoms) {
  if (atoms.empty()) throw Error(ErrorCode::InvalidArgument, "no atoms");
  const std::size_t d = atoms.front().unitary.rows();
  for (const auto& a : atoms) {
    if (a.unitary.rows() != d) throw Error(ErrorCode::DimensionMismatch, "atoms differ in size");
    check_unitary(a.unitary);
  }
}

double weight_sum(const std::vector<Atom>& atoms) {
  double s = 0;
  for (const auto& a : atoms) s += a.weight;
  return s;
}

Superoperator mixture(const std::vector<Atom>& atoms) {
  Superoperator out = Superoperator::zero(atoms.front().unitary.rows());
  for (const auto& a : atoms) out += Superoperator::conjugation(a.unitary) * a.weight;
  return out;
}

double poisson_pmf(double mean, std::size_t n) {
  if (mean == 0.0) return n == 0 ? 1.0 : 0.0;
  const double k = static_cast<double>(n);
  return std::exp(k * std::log(mean) - mean - std::lgamma(k + 1.0));
}

void check_projection(const Superoperator& p) {
  if (max_abs((p * p - p).mat()) > 1e-10)
    throw Error(ErrorCode::NotIdempotent, "projection is not idempotent");
  if (!is_trace_preserving(p, 1e-10) || !is_completely_positive(p, 1e-10))
    throw Error(ErrorCode::NotCPTP, "projection is not CPTP");
}

}  // namespace

AtomicMeasure::AtomicMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  check_atoms(atoms_);
  if (std::abs(weight_sum(atoms_) - 1.0) > 1e-10)
    throw Error(ErrorCode::WeightsNotNormalized, "atom weights must sum to one");
  for (const auto& a : atoms_) probability_ = probability_ && a.weight >= 0;
}

RandomUnitarySpec::RandomUnitarySpec(std::vector<Atom> terms) : terms_(std::move(terms)) {
  check_atoms(terms_);
  for (const auto& t : terms_)
    if (!(t.weight > 0)) throw Error(ErrorCode::WeightsNotProbability, "weights must be positive");
  if (std::abs(weight_sum(terms_) - 1.0) > 1e-10)
    throw Error(ErrorCode::WeightsNotProbability, "weights must sum to one");
}

Superoperator random_unitary_map(const RandomUnitarySpec& spec) { return mixture(spec.terms()); }

Superoperator poisson_generator(double lambda, const CMatrix& u) {
  if (!(lambda > 0)) throw Error(ErrorCode::InvalidArgument, "lambda must be positive");
  check_unitary(u);
  return (Superoperator::conjugation(u) - Superoperator::identity(u.rows())) * lambda;
}

std::size_t poisson_terms(double mean) {
  constexpr std::size_t kCap = 10000;
  // Tail bound for n + 1 > mean: P(N > n) ≤ pmf(n+1) / (1 − mean/(n+2)).
  for (std::size_t n = 0; n < kCap; ++n) {
    if (static_cast<double>(n) + 2.0 <= mean) continue;
    const double bound =
        poisson_pmf(mean, n + 1) / (1.0 - mean / (static_cast<double>(n) + 2.0));
    if (static_cast<double>(n) >= mean && bound < 1e-14) return n + 1;
  }
  return kCap;
}

Superoperator poisson_twirl(double lambda, const CMatrix& u, double t) {
  if (!(lambda > 0)) throw Error(ErrorCode::InvalidArgument, "lambda must be positive");
  if (!(t >= 0)) throw Error(ErrorCode::InvalidArgument, "t must be >= 0");
  check_unitary(u);
  const std::size_t d = u.rows();
  const double mean = lambda * t;
  const std::size_t terms = poisson_terms(mean);
  Superoperator out = Superoperator::zero(d);
  CMatrix power = CMatrix::identity(d);
  for (std::size_t n = 0; n < terms; ++n) {
    const double w = poisson_pmf(mean, n);
    if (w > 0) out += Superoperator::conjugation(power) * w;
    power = u * power;
  }
  return out;
}

Superoperator twirl_generator(double gamma0, const RandomUnitarySpec& r,
                              const std::vector<SelfadjointNoise>& noise, const CMatrix& h) {
  if (!(gamma0 >= 0)) throw Error(ErrorCode::InvalidArgument, "gamma0 must be >= 0");
  const std::size_t d = r.dim();
  if (h.rows() != d || h.cols() != d) throw Error(ErrorCode::DimensionMismatch, "Hamiltonian");
  if (!is_hermitian(h, 1e-12) || std::abs(trace(h)) > 1e-10)
    throw Error(ErrorCode::NotSelfadjoint, "Hamiltonian must be traceless Hermitian");
  for (std::size_t j = 0; j < noise.size(); ++j) {
    const auto& a = noise[j];
    if (!(a.rate >= 0)) throw Error(ErrorCode::InvalidArgument, "rates must be >= 0");
    if (a.op.rows() != d || a.op.cols() != d)
      throw Error(ErrorCode::DimensionMismatch, "noise operator");
    if (!is_hermitian(a.op, 1e-12) || std::abs(trace(a.op)) > 1e-10)
      throw Error(ErrorCode::NotSelfadjoint, "noise operators must be traceless selfadjoint");
    for (std::size_t k = 0; k <= j; ++k) {
      const Complex ip = hs_inner(noise[k].op, a.op);
      if (std::abs(ip - (j == k ? 1.0 : 0.0)) > 1e-10)
        throw Error(ErrorCode::NotOrthonormal, "noise operators must be HS-orthonormal");
    }
  }
  Superoperator out = hamiltonian_superop(h);
  for (const auto& a : noise) out += dissipator(a.op, a.rate);
  if (gamma0 > 0) out += (random_unitary_map(r) - Superoperator::identity(d)) * gamma0;
  return out;
}

Superoperator projection_generator(const Superoperator& p, double gamma) {
  if (!(gamma > 0)) throw Error(ErrorCode::InvalidArgument, "gamma must be positive");
  check_projection(p);
  return (Superoperator::identity(p.dim()) - p) * -gamma;
}

Superoperator projection_semigroup(const Superoperator& p, double gamma, double t) {
  if (!(gamma > 0)) throw Error(ErrorCode::InvalidArgument, "gamma must be positive");
  if (!(t >= 0)) throw Error(ErrorCode::InvalidArgument, "t must be >= 0");
  check_projection(p);
  return p + (Superoperator::identity(p.dim()) - p) * std::exp(-gamma * t);
}

Superoperator luders_projection(const CMatrix& basis) {
  check_unitary(basis);
  const std::size_t d = basis.rows();
  Superoperator out = Superoperator::zero(d);
  for (std::size_t k = 0; k < d; ++k) {
    CMatrix pk(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) pk(i, j) = basis(i, k) * std::conj(basis(j, k));
    out += Superoperator::sandwich(pk, pk);
  }
  return out;
}

Superoperator replacement_projection(const CMatrix& rho0) {
  const DensityOperator rho = validate_density(rho0);
  const std::size_t d = rho.dim();
  return Superoperator(d, vec(rho.mat()) * adjoint(vec(CMatrix::identity(d))));
}

GeneralizedTwirl generalized_twirl_map(const AtomicMeasure& sigma, std::uint64_t seed) {
  GeneralizedTwirl out{mixture(sigma.atoms()), true, sigma.probability()};
  const std::size_t d = sigma.dim();
  if (d == 2) {
    const auto s = svd(qubit::bloch_block(qubit::matrix_rep(out.map))).s;
    out.positive = s.front() <= 1.0 + 1e-9;
    return out;
  }
  constexpr std::size_t kStates = 500;
  std::vector<char> ok(kStates, 1);
  kernels::parallel_for(kStates, [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    const CMatrix image = hermitian_part(out.map.apply(random_pure_state(rng, d)));
    ok[i] = herm_eig(image).values.back() >= -1e-9;
  });
  out.positive = std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
  return out;
}

}  // namespace qds
