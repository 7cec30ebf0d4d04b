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

#include "qds/gkls.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qds/kernels.hpp"
#include "qds/qubit.hpp"
#include "qds/random.hpp"

namespace qds {
namespace {

constexpr Complex kI{0.0, 1.0};

void require_square(const CMatrix& m, std::size_t d, const char* what) {
  if (m.rows() != d || m.cols() != d)
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " must be d×d");
}

// |G⟩⟩ ordering that matches Superoperator::choi(): index a·d + k ↦ G(a, k).
Complex choi_coefficient(const CMatrix& choi, const CMatrix& ga, const CMatrix& gb) {
  const std::size_t d = ga.rows();
  Complex acc{};
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t k = 0; k < d; ++k) {
      const Complex left = std::conj(ga(a, k));
      if (left == Complex{}) continue;
      for (std::size_t b = 0; b < d; ++b)
        for (std::size_t l = 0; l < d; ++l) acc += left * choi(a * d + k, b * d + l) * gb(b, l);
    }
  return acc;
}

CMatrix fourier_basis(std::size_t d) {
  CMatrix f(d, d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k)
      f(j, k) = std::polar(norm, 2.0 * std::numbers::pi * static_cast<double>(j * k) /
                                     static_cast<double>(d));
  return f;
}

// T_jk = ⟨ψ_j| L(|ψ_k⟩⟨ψ_k|) |ψ_j⟩ for the columns ψ of `basis`.
RMatrix basis_matrix(const Superoperator& generator, const CMatrix& basis) {
  const std::size_t d = basis.rows();
  RMatrix t(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    CMatrix proj(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) proj(i, j) = basis(i, k) * std::conj(basis(j, k));
    const CMatrix image = generator.apply(proj);
    for (std::size_t j = 0; j < d; ++j) {
      Complex acc{};
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c)
          acc += std::conj(basis(r, j)) * image(r, c) * basis(c, j);
      t(j, k) = acc.real();
    }
  }
  return t;
}

double min_offdiagonal(const RMatrix& t) {
  double worst = kInf;
  for (std::size_t j = 0; j < t.rows(); ++j)
    for (std::size_t k = 0; k < t.cols(); ++k)
      if (j != k) worst = std::min(worst, t(j, k));
  return worst;
}

std::vector<double> spectrum_of(const CMatrix& m) {
  const DensityOperator rho = validate_density(m, 1e-7);
  const auto v = eigenvalue_vector(rho);
  return {v.probs().begin(), v.probs().end()};
}

Theorem1Report run_theorem1(const Superoperator& generator, bool jointly_normal_flag,
                            const ClassifyOptions& options) {
  const auto& grid = options.t_grid;
  if (grid.empty() || grid.front() != 0.0)
    throw Error(ErrorCode::InvalidArgument, "t_grid must start at 0");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw Error(ErrorCode::InvalidArgument, "t_grid must ascend");

  const std::size_t d = generator.dim();
  std::vector<Superoperator> flows(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) flows[i] = exp_superop(generator, grid[i]);

  const std::size_t n_states = 1 + options.rho_samples;
  std::vector<CMatrix> states(n_states);
  states[0] = CMatrix::identity(d) * Complex{1.0 / static_cast<double>(d)};
  for (std::size_t s = 1; s < n_states; ++s) {
    Rng rng(derive_seed(options.seed, s));
    states[s] = random_density(rng, d);
  }

  // spectra[s][i]: ordered spectrum of Φ_{t_i} ρ_s.
  std::vector<std::vector<std::vector<double>>> spectra(n_states);
  std::vector<char> left_state_space(n_states, 0);
  kernels::parallel_for(n_states, [&](std::size_t s) {
    try {
      spectra[s].reserve(grid.size());
      for (const auto& phi : flows) spectra[s].push_back(spectrum_of(phi.apply(states[s])));
    } catch (const Error&) {
      left_state_space[s] = 1;
    }
  });
  for (std::size_t s = 0; s < n_states; ++s)
    if (left_state_space[s])
      throw Error(ErrorCode::EvolutionLeftStateSpace,
                  "trajectory from sample " + std::to_string(s) + " is not a state");

  Theorem1Report report;
  report.unitality_defect = unitality_defect(generator);
  report.unital = is_unital_generator(generator);
  report.kraus_jointly_normal = jointly_normal_flag;

  report.majorization_ok = true;
  for (std::size_t s = 0; s < n_states && report.majorization_ok; ++s)
    for (std::size_t i = 1; i < grid.size(); ++i)
      if (!majorizes(spectra[s][0], spectra[s][i])) {
        report.majorization_ok = false;
        break;
      }

  report.entropies_ok = true;
  for (const auto& spec : options.entropies) {
    bool monotone = true;
    for (std::size_t s = 0; s < n_states; ++s) {
      std::vector<double> values(grid.size());
      for (std::size_t i = 0; i < grid.size(); ++i) values[i] = spec.evaluate(spectra[s][i]);
      for (std::size_t i = 1; i < grid.size(); ++i) {
        if (values[i] - values[i - 1] < -1e-9 * (1.0 + std::abs(values[i - 1]))) {
          monotone = false;
          if (!report.witness)
            report.witness = DecreaseWitness{spec.label(), s, grid[i - 1], grid[i],
                                             values[i - 1], values[i]};
          break;
        }
      }
      if (!monotone) break;
    }
    report.entropies_monotone.push_back({spec.label(), monotone});
    report.entropies_ok = report.entropies_ok && monotone;
  }

  bool agree = report.unital == report.majorization_ok &&
               report.unital == report.kraus_jointly_normal;
  for (const auto& e : report.entropies_monotone) agree = agree && (e.monotone == report.unital);
  report.all_agree = agree;
  return report;
}

}  // namespace

GklsGenerator::GklsGenerator(CMatrix hamiltonian, std::vector<NoiseTerm> noise)
    : hamiltonian_(std::move(hamiltonian)), noise_(std::move(noise)) {
  if (!hamiltonian_.is_square() || hamiltonian_.rows() == 0)
    throw Error(ErrorCode::DimensionMismatch, "Hamiltonian must be square");
  const std::size_t d = hamiltonian_.rows();
  if (!is_hermitian(hamiltonian_, 1e-12)) throw Error(ErrorCode::NotHermitian, "Hamiltonian");
  if (std::abs(trace(hamiltonian_)) > 1e-10)
    throw Error(ErrorCode::InvalidArgument, "Hamiltonian must be traceless");
  for (const auto& term : noise_) {
    if (!(term.rate >= 0) || !std::isfinite(term.rate))
      throw Error(ErrorCode::InvalidArgument, "noise rates must be finite and non-negative");
    require_square(term.op, d, "noise operator");
  }
}

GklsGenerator GklsGenerator::with_trace_removed(CMatrix hamiltonian, std::vector<NoiseTerm> noise) {
  if (!hamiltonian.is_square()) throw Error(ErrorCode::DimensionMismatch, "Hamiltonian");
  const std::size_t d = hamiltonian.rows();
  const Complex shift = trace(hamiltonian) / static_cast<double>(d);
  for (std::size_t i = 0; i < d; ++i) hamiltonian(i, i) -= shift;
  return GklsGenerator(std::move(hamiltonian), std::move(noise));
}

std::vector<CMatrix> GklsGenerator::kraus() const {
  std::vector<CMatrix> out;
  out.reserve(noise_.size());
  for (const auto& term : noise_) out.push_back(term.op * Complex{std::sqrt(term.rate)});
  return out;
}

Superoperator hamiltonian_superop(const CMatrix& h) {
  return Superoperator(h.rows(),
                       (Superoperator::left(h).mat() - Superoperator::right(h).mat()) * (-kI));
}

Superoperator dissipator(const CMatrix& v, double rate) {
  const CMatrix k = adjoint(v) * v;
  Superoperator out = Superoperator::sandwich(v, v) -
                      (Superoperator::left(k) + Superoperator::right(k)) * 0.5;
  return out * rate;
}

Superoperator compile(const GklsGenerator& gen) {
  Superoperator out = hamiltonian_superop(gen.hamiltonian());
  for (const auto& term : gen.noise()) {
    if (term.rate == 0.0) continue;
    out += dissipator(term.op, term.rate);
  }
  return out;
}

DensityOperator evolve(const Superoperator& generator, const DensityOperator& rho, double t) {
  if (!(t >= 0)) throw Error(ErrorCode::InvalidArgument, "evolution time must be >= 0");
  if (generator.dim() != rho.dim()) throw Error(ErrorCode::DimensionMismatch, "evolve");
  if (t == 0.0) return rho;
  const CMatrix image = exp_superop(generator, t).apply(rho.mat());
  try {
    return validate_density(image, 1e-7);
  } catch (const Error& e) {
    throw Error(ErrorCode::EvolutionLeftStateSpace, e.what());
  }
}

double unitality_defect(const Superoperator& generator) {
  return frobenius_norm(generator.apply(CMatrix::identity(generator.dim())));
}

bool is_unital_generator(const Superoperator& generator) {
  return unitality_defect(generator) <= 1e-10 * static_cast<double>(generator.dim());
}

bool jointly_normal(std::span<const CMatrix> kraus) {
  if (kraus.empty()) throw Error(ErrorCode::InvalidArgument, "empty Kraus list");
  const std::size_t d = kraus.front().rows();
  CMatrix acc(d, d);
  for (const auto& v : kraus) {
    require_square(v, d, "Kraus operator");
    const CMatrix va = adjoint(v);
    acc += v * va;
    acc -= va * v;
  }
  return frobenius_norm(acc) <= 1e-10;
}

std::vector<CMatrix> traceless_hermitian_basis(std::size_t d) {
  std::vector<CMatrix> basis;
  const double r2 = 1.0 / std::numbers::sqrt2;
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k) {
      CMatrix sym(d, d);
      sym(j, k) = r2;
      sym(k, j) = r2;
      CMatrix asym(d, d);
      asym(j, k) = -kI * r2;
      asym(k, j) = kI * r2;
      basis.push_back(std::move(sym));
      basis.push_back(std::move(asym));
    }
  for (std::size_t l = 1; l < d; ++l) {
    CMatrix diag(d, d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
    for (std::size_t k = 0; k < l; ++k) diag(k, k) = norm;
    diag(l, l) = -static_cast<double>(l) * norm;
    basis.push_back(std::move(diag));
  }
  return basis;
}

DiagonalForm diagonalize_generator(const Superoperator& generator) {
  const std::size_t d = generator.dim();
  const double scale = std::max(1.0, max_abs(generator.mat()));
  if (!is_adjoint_preserving(generator, 1e-10))
    throw Error(ErrorCode::NotAdjointPreserving, "generator does not preserve adjoints");
  if (!is_trace_annihilating(generator, 1e-10 * scale))
    throw Error(ErrorCode::NotTracePreserving, "generator is not trace-annihilating");

  const auto basis = traceless_hermitian_basis(d);
  const std::size_t m = basis.size();
  const CMatrix choi = hermitian_part(generator.choi());

  CMatrix kossakowski(m, m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b) {
      const Complex c = choi_coefficient(choi, basis[a], basis[b]);
      kossakowski(a, b) = c;
      kossakowski(b, a) = std::conj(c);
    }
  for (std::size_t a = 0; a < m; ++a) kossakowski(a, a) = kossakowski(a, a).real();

  DiagonalForm out;
  out.hamiltonian = CMatrix(d, d);
  if (m > 0) {
    const HermEigen eig = herm_eig(kossakowski);
    const double rate_scale = std::max(1.0, std::max(std::abs(eig.values.front()),
                                                     std::abs(eig.values.back())));
    for (std::size_t j = 0; j < m; ++j) {
      const double g = eig.values[j];
      if (std::abs(g) <= 1e-12) continue;
      if (g < -1e-10 * rate_scale) out.completely_positive = false;
      CMatrix f(d, d);
      for (std::size_t a = 0; a < m; ++a) f += basis[a] * eig.vectors(a, j);
      out.rates.push_back(g);
      out.ops.push_back(std::move(f));
    }
  }

  Superoperator residual = generator;
  for (std::size_t j = 0; j < out.rates.size(); ++j) residual -= dissipator(out.ops[j], out.rates[j]);
  const CMatrix residual_choi = residual.choi();
  CMatrix g0 = CMatrix::identity(d) * Complex{1.0 / std::sqrt(static_cast<double>(d))};
  for (std::size_t a = 0; a < m; ++a) {
    const Complex c = choi_coefficient(residual_choi, basis[a], g0);
    out.hamiltonian += basis[a] * (kI * c / std::sqrt(static_cast<double>(d)));
  }
  out.hamiltonian = hermitian_part(out.hamiltonian);
  residual -= hamiltonian_superop(out.hamiltonian);
  if (max_abs(residual.mat()) > 1e-9 * scale)
    throw Error(ErrorCode::InvalidArgument, "generator has no GKLS-type diagonal form");
  return out;
}

GklsGenerator diagonal_form(const GklsGenerator& gen) {
  const DiagonalForm form = diagonalize_generator(compile(gen));
  if (!form.completely_positive)
    throw Error(ErrorCode::NotCPTP, "diagonal form has negative rates");
  std::vector<NoiseTerm> noise;
  for (std::size_t j = 0; j < form.rates.size(); ++j)
    if (form.rates[j] > 0) noise.push_back({form.rates[j], form.ops[j]});
  return GklsGenerator(form.hamiltonian, std::move(noise));
}

bool is_gkls_generator(const Superoperator& generator) {
  const std::size_t d = generator.dim();
  const double scale = std::max(1.0, max_abs(generator.mat()));
  if (!is_adjoint_preserving(generator, 1e-10)) return false;
  if (!is_trace_annihilating(generator, 1e-10 * scale)) return false;
  const CMatrix choi = hermitian_part(generator.choi());
  // Π = 1 − ωω†/d, ω = Σ_k |k⟩|k⟩.
  const std::size_t n = d * d;
  CMatrix proj = CMatrix::identity(n);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) proj(a * d + a, b * d + b) -= 1.0 / static_cast<double>(d);
  const CMatrix projected = hermitian_part(proj * choi * proj);
  const auto eig = herm_eig(projected);
  return eig.values.back() >= -1e-9 * std::max(1.0, std::abs(eig.values.front()));
}

PositivityReport check_positive_generator(const Superoperator& generator, std::size_t samples,
                                          std::uint64_t seed) {
  if (samples == 0) throw Error(ErrorCode::InvalidArgument, "samples must be >= 1");
  PositivityReport report;
  const std::size_t d = generator.dim();
  const double scale = std::max(1.0, max_abs(generator.mat()));
  report.unital = is_unital_generator(generator);
  if (!is_adjoint_preserving(generator, 1e-10) ||
      !is_trace_annihilating(generator, 1e-10 * scale)) {
    report.exact = true;
    report.verdict = false;
    return report;
  }

  if (d == 2) {
    const auto margin = qubit::positivity_margin(generator);
    report.exact = true;
    report.bases_checked = 0;
    report.worst_offdiagonal = -0.5 * margin.margin;
    report.verdict = margin.margin <= 1e-10 * scale;
    if (!report.verdict) {
      // Eigenbasis of n·σ: P₁ = (1 + n·σ)/2, P₂ = (1 − n·σ)/2.
      CMatrix ns(2, 2);
      for (std::size_t j = 0; j < 3; ++j) ns += qubit::pauli(j + 1) * Complex{margin.direction[j]};
      report.witness_basis = herm_eig(ns).vectors;
    }
    return report;
  }

  std::vector<CMatrix> fixed{CMatrix::identity(d), fourier_basis(d)};
  const std::size_t total = fixed.size() + samples;
  std::vector<double> worst(total, kInf);
  std::vector<CMatrix> bases(total);
  kernels::parallel_for(total, [&](std::size_t i) {
    if (i < fixed.size()) {
      bases[i] = fixed[i];
    } else {
      Rng rng(derive_seed(seed, i));
      bases[i] = random_unitary(rng, d);
    }
    worst[i] = min_offdiagonal(basis_matrix(generator, bases[i]));
  });

  report.exact = false;
  report.bases_checked = total;
  report.worst_offdiagonal = kInf;
  report.verdict = true;
  for (std::size_t i = 0; i < total; ++i) {
    report.worst_offdiagonal = std::min(report.worst_offdiagonal, worst[i]);
    if (worst[i] < -1e-9 && report.verdict) {
      report.verdict = false;
      report.witness_basis = bases[i];
    }
  }
  return report;
}

std::vector<double> uniform_grid(double t_max, std::size_t points) {
  if (points < 2 || !(t_max > 0))
    throw Error(ErrorCode::InvalidArgument, "grid needs t_max > 0 and at least 2 points");
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i)
    grid[i] = t_max * static_cast<double>(i) / static_cast<double>(points - 1);
  return grid;
}

Theorem1Report classify_theorem1(const GklsGenerator& gen, const ClassifyOptions& options) {
  const GklsGenerator diag = diagonal_form(gen);
  const bool normal = diag.noise().empty() ? true : jointly_normal(diag.kraus());
  return run_theorem1(compile(gen), normal, options);
}

Theorem1Report classify_theorem1(const Superoperator& generator, const ClassifyOptions& options) {
  const DiagonalForm form = diagonalize_generator(generator);
  const std::size_t d = generator.dim();
  CMatrix acc(d, d);
  for (std::size_t j = 0; j < form.rates.size(); ++j) {
    const CMatrix& f = form.ops[j];
    acc += (f * adjoint(f) - adjoint(f) * f) * Complex{form.rates[j]};
  }
  return run_theorem1(generator, frobenius_norm(acc) <= 1e-10, options);
}

bool non_decreasing(std::span<const double> values) {
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] - values[i - 1] < -1e-9 * (1.0 + std::abs(values[i - 1]))) return false;
  return true;
}

}  // namespace qds
