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

#include "qds/qubit.hpp"

#include <algorithm>
#include <cmath>

namespace qds::qubit {
namespace {

constexpr Complex kI{0.0, 1.0};

void require_qubit(const Superoperator& s) {
  if (s.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "qubit map expected");
}

double det3(const RMatrix& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

// Determinant by elimination with partial pivoting; small enough for 4×4.
double det(RMatrix a) {
  const std::size_t n = a.rows();
  double out = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
    if (a(piv, c) == 0.0) return 0.0;
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a(c, k), a(piv, k));
      out = -out;
    }
    out *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a(r, c) / a(c, c);
      for (std::size_t k = c; k < n; ++k) a(r, k) -= f * a(c, k);
    }
  }
  return out;
}

// Pauli matrix realising the even sign vertex s (product of signs +1).
CMatrix vertex_pauli(const std::array<int, 3>& s) {
  if (s[0] > 0 && s[1] > 0) return pauli(0);
  if (s[0] > 0) return pauli(1);
  if (s[1] > 0) return pauli(2);
  return pauli(3);
}

std::array<int, 3> vertex(std::size_t index) {
  return {index & 1 ? -1 : 1, index & 2 ? -1 : 1, index & 4 ? -1 : 1};
}

bool is_odd(const std::array<int, 3>& s) { return s[0] * s[1] * s[2] < 0; }

}  // namespace

const CMatrix& pauli(std::size_t j) {
  static const std::array<CMatrix, 4> p{
      CMatrix{{1, 0}, {0, 1}},
      CMatrix{{0, 1}, {1, 0}},
      CMatrix{{0, -kI}, {kI, 0}},
      CMatrix{{1, 0}, {0, -1}},
  };
  if (j > 3) throw Error(ErrorCode::InvalidArgument, "Pauli index out of range");
  return p[j];
}

CMatrix half_pauli(std::size_t j) { return pauli(j) * Complex{0.5}; }

double BlochVector::norm() const { return std::hypot(r[0], r[1], r[2]); }

DensityOperator BlochVector::to_density() const {
  if (norm() > 1.0 + 1e-10) throw Error(ErrorCode::NotPositive, "Bloch vector outside the ball");
  CMatrix m = half_pauli(0);
  for (std::size_t j = 0; j < 3; ++j) m += half_pauli(j + 1) * Complex{r[j]};
  return validate_density(m, 1e-9);
}

BlochVector BlochVector::of(const DensityOperator& rho) {
  if (rho.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "qubit state expected");
  BlochVector b{};
  for (std::size_t j = 0; j < 3; ++j) b.r[j] = trace(rho.mat() * pauli(j + 1)).real();
  return b;
}

RMatrix matrix_rep(const Superoperator& s) {
  require_qubit(s);
  RMatrix m(4, 4);
  double residue = 0;
  for (std::size_t k = 0; k < 4; ++k) {
    const CMatrix image = s.apply(pauli(k));
    for (std::size_t j = 0; j < 4; ++j) {
      const Complex v = 0.5 * trace(pauli(j) * image);
      m(j, k) = v.real();
      residue = std::max(residue, std::abs(v.imag()));
    }
  }
  if (residue > 1e-11 * std::max(1.0, max_abs(m)))
    throw Error(ErrorCode::NotAdjointPreserving, "map does not preserve Hermiticity");
  return m;
}

Superoperator from_matrix_rep(const RMatrix& m) {
  if (m.rows() != 4 || m.cols() != 4)
    throw Error(ErrorCode::DimensionMismatch, "Bloch matrix must be 4×4");
  // S = Σ_jk 2 M_jk |σ̂_j⟩⟩⟨⟨σ̂_k|.
  CMatrix out(4, 4);
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t k = 0; k < 4; ++k) {
      if (m(j, k) == 0.0) continue;
      out += vec(half_pauli(j)) * adjoint(vec(half_pauli(k))) * Complex{2.0 * m(j, k)};
    }
  return Superoperator(2, std::move(out));
}

RMatrix bloch_block(const RMatrix& m) {
  if (m.rows() != 4 || m.cols() != 4)
    throw Error(ErrorCode::DimensionMismatch, "Bloch matrix must be 4×4");
  RMatrix b(3, 3);
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t k = 0; k < 3; ++k) b(j, k) = m(j + 1, k + 1);
  return b;
}

QubitGeneratorParams::QubitGeneratorParams(Vec3 h_in, RMatrix k_in)
    : h(h_in), k(std::move(k_in)) {
  if (k.rows() != 3 || k.cols() != 3) throw Error(ErrorCode::InvalidArgument, "K must be 3×3");
  const double tol = 1e-12 * std::max(1.0, max_abs(k));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      if (std::abs(k(i, j) - k(j, i)) > tol)
        throw Error(ErrorCode::InvalidArgument, "K must be symmetric");
  for (double x : h)
    if (!std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "h must be finite");
}

QubitGenerator build_qubit_generator(const QubitGeneratorParams& params) {
  Superoperator l = Superoperator::zero(2);
  for (std::size_t j = 0; j < 3; ++j) {
    const CMatrix s = half_pauli(j + 1);
    l += Superoperator(2, (Superoperator::left(s).mat() - Superoperator::right(s).mat()) *
                              (-kI * params.h[j]));
  }
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t k = 0; k < 3; ++k) {
      const double c = params.k(j, k);
      if (c == 0.0) continue;
      const CMatrix sj = half_pauli(j + 1);
      const CMatrix sk = half_pauli(k + 1);
      const CMatrix prod = sk * sj;
      l += (Superoperator::sandwich(sj, sk) -
            (Superoperator::left(prod) + Superoperator::right(prod)) * 0.5) *
           c;
    }
  return {l, generator_block(params), positivity_matrix(params)};
}

RMatrix generator_block(const QubitGeneratorParams& p) {
  const auto& k = p.k;
  const auto& h = p.h;
  return RMatrix{
      {-(k(1, 1) + k(2, 2)) / 2, k(0, 1) / 2 - h[2], k(0, 2) / 2 + h[1]},
      {k(0, 1) / 2 + h[2], -(k(0, 0) + k(2, 2)) / 2, k(1, 2) / 2 - h[0]},
      {k(0, 2) / 2 - h[1], k(1, 2) / 2 + h[0], -(k(0, 0) + k(1, 1)) / 2},
  };
}

RMatrix positivity_matrix(const QubitGeneratorParams& p) {
  RMatrix out = p.k * -1.0;
  const double tr = trace(p.k);
  for (std::size_t i = 0; i < 3; ++i) out(i, i) += tr;
  return out;
}

QubitGeneratorParams params_from_generator(const Superoperator& generator) {
  const RMatrix m = matrix_rep(generator);
  const double tol = 1e-10 * std::max(1.0, max_abs(m));
  for (std::size_t k = 0; k < 4; ++k)
    if (std::abs(m(0, k)) > tol)
      throw Error(ErrorCode::NotTracePreserving, "generator does not annihilate the trace");
  for (std::size_t j = 1; j < 4; ++j)
    if (std::abs(m(j, 0)) > tol) throw Error(ErrorCode::NotUnital, "generator is not unital");
  const RMatrix f = bloch_block(m);
  const double s = -trace(f);
  RMatrix k(3, 3);
  for (std::size_t i = 0; i < 3; ++i) k(i, i) = s + 2.0 * f(i, i);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) k(i, j) = k(j, i) = f(i, j) + f(j, i);
  const Vec3 h{(f(2, 1) - f(1, 2)) / 2, (f(0, 2) - f(2, 0)) / 2, (f(1, 0) - f(0, 1)) / 2};
  return QubitGeneratorParams(h, std::move(k));
}

bool is_positive_qubit_generator(const RMatrix& f) {
  if (f.rows() != 3 || f.cols() != 3) throw Error(ErrorCode::DimensionMismatch, "F must be 3×3");
  return sym_eig(f + transpose(f)).values.front() <= 1e-10;
}

PositivityMargin positivity_margin(const Superoperator& generator) {
  const RMatrix m = matrix_rep(generator);
  const double scale = std::max(1.0, max_abs(m));
  for (std::size_t k = 0; k < 4; ++k)
    if (std::abs(m(0, k)) > 1e-10 * scale)
      throw Error(ErrorCode::NotTracePreserving, "generator does not annihilate the trace");
  const RMatrix f = bloch_block(m);
  const Vec3 c{m(1, 0), m(2, 0), m(3, 0)};
  const SymEigen eig = sym_eig((f + transpose(f)) * 0.5);
  const auto& lam = eig.values;
  const RMatrix& q = eig.vectors;

  // Maximise n·c + nᵀ S n on the unit sphere. Stationary points satisfy
  // (μ − S) n = c/2; the maximum has μ ≥ λ_max, fixed by ‖n‖ = 1.
  Vec3 b{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) b[i] += q(j, i) * c[j];
  const double bnorm = std::hypot(b[0], b[1], b[2]);

  // Value of n·c + nᵀSn at a unit vector given in eigen-coordinates.
  auto objective = [&](const Vec3& y) {
    double v = 0;
    for (std::size_t i = 0; i < 3; ++i) v += b[i] * y[i] + lam[i] * y[i] * y[i];
    return v;
  };
  auto norm2 = [](const Vec3& v) { return v[0] * v[0] + v[1] * v[1] + v[2] * v[2]; };
  auto normalized = [&](Vec3 v) {
    const double len = std::sqrt(norm2(v));
    for (double& x : v) x /= len;
    return v;
  };

  std::vector<Vec3> candidates{{1.0, 0.0, 0.0}, {-1.0, 0.0, 0.0}};
  if (bnorm > 1e-15 * scale) {
    auto coords = [&](double mu) {
      Vec3 out{};
      for (std::size_t i = 0; i < 3; ++i) {
        const double gap = mu - lam[i];
        out[i] = gap > 0 ? b[i] / (2.0 * gap) : (b[i] == 0.0 ? 0.0 : kInf);
      }
      return out;
    };
    double lo = lam[0];
    double hi = lam[0] + bnorm / 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-16 * (1.0 + std::abs(hi)); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (norm2(coords(mid)) > 1.0)
        lo = mid;
      else
        hi = mid;
    }
    const Vec3 y = coords(hi);
    if (std::isfinite(norm2(y)) && norm2(y) > 0) candidates.push_back(normalized(y));
    // Hard case: c has (almost) no weight on the top eigenspace, μ = λ_max
    // and the leftover length goes into that eigenspace.
    Vec3 z{};
    for (std::size_t i = 0; i < 3; ++i)
      if (lam[0] - lam[i] > 1e-12 * scale) z[i] = b[i] / (2.0 * (lam[0] - lam[i]));
    const double rest = 1.0 - norm2(z);
    if (rest >= 0)
      for (std::size_t i = 0; i < 3; ++i) {
        if (lam[0] - lam[i] > 1e-12 * scale) continue;
        for (double sign : {-1.0, 1.0}) {
          Vec3 w = z;
          w[i] = sign * std::sqrt(rest);
          if (norm2(w) > 0) candidates.push_back(normalized(w));
        }
      }
  }
  Vec3 y = candidates.front();
  for (const auto& cand : candidates)
    if (objective(cand) > objective(y)) y = cand;

  PositivityMargin out{};
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < 3; ++i) out.direction[j] += q(j, i) * y[i];
  const double len = std::hypot(out.direction[0], out.direction[1], out.direction[2]);
  for (double& x : out.direction) x /= len;
  double value = 0;
  for (std::size_t j = 0; j < 3; ++j) {
    double fn = c[j];
    for (std::size_t k = 0; k < 3; ++k) fn += f(j, k) * out.direction[k];
    value += out.direction[j] * fn;
  }
  out.margin = value;
  return out;
}

const char* to_string(Cone c) {
  switch (c) {
    case Cone::CPTU: return "CPTU";
    case Cone::PTU_only: return "PTU_only";
    case Cone::Outside: return "outside";
  }
  return "?";
}

bool psd_by_minors(const RMatrix& m, double tol) {
  if (m.rows() != 3 || m.cols() != 3) throw Error(ErrorCode::DimensionMismatch, "3×3 expected");
  const double scale = std::max(1.0, max_abs(m));
  for (std::size_t i = 0; i < 3; ++i)
    if (m(i, i) < -tol * scale) return false;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      if (m(i, i) * m(j, j) - m(i, j) * m(j, i) < -tol * scale * scale) return false;
  return det3(m) >= -tol * scale * scale * scale;
}

ConeVerdict classify_cone(const QubitGeneratorParams& params) {
  const double tol = 1e-10;
  const double scale = std::max(1.0, max_abs(params.k));
  ConeVerdict v;
  v.k_eigenvalues = sym_eig(params.k).values;
  const RMatrix p = positivity_matrix(params);
  v.p_eigenvalues = sym_eig(p).values;
  const bool cp = v.k_eigenvalues.back() >= -tol * scale;
  const bool pos = v.p_eigenvalues.back() >= -tol * scale;
  v.cone = cp ? Cone::CPTU : (pos ? Cone::PTU_only : Cone::Outside);
  v.minors_agree = psd_by_minors(p, tol) == pos;
  return v;
}

Superoperator StormerDecomposition::reconstruct() const {
  Superoperator out = Superoperator::zero(2);
  const Superoperator t = Superoperator::transposition(2);
  for (const auto& term : mu) out += Superoperator::conjugation(term.unitary) * term.weight;
  for (const auto& term : nu) out += (Superoperator::conjugation(term.unitary) * t) * term.weight;
  return out;
}

RMatrix bloch_rotation(const CMatrix& u) {
  if (u.rows() != 2 || u.cols() != 2) throw Error(ErrorCode::DimensionMismatch, "2×2 expected");
  const CMatrix ua = adjoint(u);
  RMatrix r(3, 3);
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t k = 0; k < 3; ++k)
      r(j, k) = 0.5 * trace(pauli(j + 1) * u * pauli(k + 1) * ua).real();
  return r;
}

CMatrix su2_lift(const RMatrix& r) {
  if (r.rows() != 3 || r.cols() != 3) throw Error(ErrorCode::DimensionMismatch, "3×3 expected");
  if (max_abs(transpose(r) * r - RMatrix::identity(3)) > 1e-9 || det3(r) < 0)
    throw Error(ErrorCode::InvalidArgument, "not a proper rotation");
  // Quaternion (w, x, y, z) of the rotation, choosing the best-conditioned pivot.
  double w, x, y, z;
  const double tr = r(0, 0) + r(1, 1) + r(2, 2);
  if (tr >= r(0, 0) && tr >= r(1, 1) && tr >= r(2, 2)) {
    w = 0.5 * std::sqrt(std::max(0.0, 1.0 + tr));
    x = (r(2, 1) - r(1, 2)) / (4 * w);
    y = (r(0, 2) - r(2, 0)) / (4 * w);
    z = (r(1, 0) - r(0, 1)) / (4 * w);
  } else if (r(0, 0) >= r(1, 1) && r(0, 0) >= r(2, 2)) {
    x = 0.5 * std::sqrt(std::max(0.0, 1.0 + 2 * r(0, 0) - tr));
    w = (r(2, 1) - r(1, 2)) / (4 * x);
    y = (r(0, 1) + r(1, 0)) / (4 * x);
    z = (r(0, 2) + r(2, 0)) / (4 * x);
  } else if (r(1, 1) >= r(2, 2)) {
    y = 0.5 * std::sqrt(std::max(0.0, 1.0 + 2 * r(1, 1) - tr));
    w = (r(0, 2) - r(2, 0)) / (4 * y);
    x = (r(0, 1) + r(1, 0)) / (4 * y);
    z = (r(1, 2) + r(2, 1)) / (4 * y);
  } else {
    z = 0.5 * std::sqrt(std::max(0.0, 1.0 + 2 * r(2, 2) - tr));
    w = (r(1, 0) - r(0, 1)) / (4 * z);
    x = (r(0, 2) + r(2, 0)) / (4 * z);
    y = (r(1, 2) + r(2, 1)) / (4 * z);
  }
  if (w < 0) {
    w = -w;
    x = -x;
    y = -y;
    z = -z;
  }
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  w /= n;
  x /= n;
  y /= n;
  z /= n;
  // U = w − i(x σ₁ + y σ₂ + z σ₃).
  return CMatrix{{Complex{w, -z}, Complex{-y, -x}}, {Complex{y, -x}, Complex{w, z}}};
}

StormerDecomposition stormer_decompose(const Superoperator& s) {
  const RMatrix m = matrix_rep(s);
  if (std::abs(m(0, 0) - 1.0) > 1e-9 || std::abs(m(0, 1)) > 1e-9 || std::abs(m(0, 2)) > 1e-9 ||
      std::abs(m(0, 3)) > 1e-9)
    throw Error(ErrorCode::NotTracePreserving, "map is not trace-preserving");
  for (std::size_t j = 1; j < 4; ++j)
    if (std::abs(m(j, 0)) > 1e-9) throw Error(ErrorCode::NotUnital, "map is not unital");

  // Λ = U diag(D) Vᵀ with U, V proper rotations.
  RealSvd dec = svd(bloch_block(m));
  std::array<double, 3> dvals{dec.s[0], dec.s[1], dec.s[2]};
  if (det3(dec.u) < 0) {
    for (std::size_t i = 0; i < 3; ++i) dec.u(i, 2) = -dec.u(i, 2);
    dvals[2] = -dvals[2];
  }
  if (det3(dec.v) < 0) {
    for (std::size_t i = 0; i < 3; ++i) dec.v(i, 2) = -dec.v(i, 2);
    dvals[2] = -dvals[2];
  }
  for (double x : dvals)
    if (std::abs(x) > 1.0 + 1e-9) throw Error(ErrorCode::NotPositive, "map is not positive");

  // D as a convex combination of the cube vertices with the least odd mass:
  // scan every basic solution of the 4×4 barycentric system.
  std::array<double, 8> best_w{};
  double best_odd = kInf;
  for (unsigned mask = 0; mask < 256; ++mask) {
    if (__builtin_popcount(mask) != 4) continue;
    std::array<std::size_t, 4> idx{};
    std::size_t n = 0;
    for (std::size_t v = 0; v < 8; ++v)
      if (mask & (1u << v)) idx[n++] = v;
    RMatrix a(4, 4);
    RMatrix rhs(4, 1);
    for (std::size_t col = 0; col < 4; ++col) {
      const auto sv = vertex(idx[col]);
      for (std::size_t row = 0; row < 3; ++row) a(row, col) = sv[row];
      a(3, col) = 1.0;
    }
    for (std::size_t row = 0; row < 3; ++row) rhs(row, 0) = dvals[row];
    rhs(3, 0) = 1.0;
    if (std::abs(det(a)) < 1e-9) continue;
    const RMatrix sol = solve(a, rhs);
    bool feasible = true;
    double odd = 0;
    for (std::size_t col = 0; col < 4; ++col) {
      if (sol(col, 0) < -1e-12) feasible = false;
      if (is_odd(vertex(idx[col]))) odd += std::max(0.0, sol(col, 0));
    }
    if (!feasible || odd >= best_odd - 1e-14) continue;
    best_odd = odd;
    best_w.fill(0.0);
    for (std::size_t col = 0; col < 4; ++col) best_w[idx[col]] = std::max(0.0, sol(col, 0));
  }
  if (!std::isfinite(best_odd))
    throw Error(ErrorCode::NotPositive, "no convex decomposition of the Bloch block");

  double total = 0;
  for (double w : best_w) total += w;
  const CMatrix u1 = su2_lift(dec.u);
  const CMatrix u2c = conjugate(su2_lift(transpose(dec.v)));
  const CMatrix u2 = su2_lift(transpose(dec.v));
  StormerDecomposition out;
  for (std::size_t v = 0; v < 8; ++v) {
    const double w = best_w[v] / total;
    if (w <= 1e-14) continue;
    auto sv = vertex(v);
    if (!is_odd(sv)) {
      out.mu.push_back({w, u1 * vertex_pauli(sv) * u2});
    } else {
      sv[1] = -sv[1];
      out.nu.push_back({w, u1 * vertex_pauli(sv) * u2c});
    }
  }
  return out;
}

DensityOperator asymptotic_state(const Superoperator& generator) {
  const std::size_t d = generator.dim();
  const Svd dec = svd(generator.mat());
  const double cutoff = 1e-10 * std::max(dec.s.front(), 1e-300);
  std::size_t null_dim = 0;
  std::size_t column = 0;
  for (std::size_t i = 0; i < dec.s.size(); ++i)
    if (dec.s[i] <= cutoff) {
      ++null_dim;
      column = i;
    }
  if (null_dim != 1)
    throw Error(ErrorCode::NonUniqueStationaryState,
                "stationary space has dimension " + std::to_string(null_dim));
  CMatrix v(d * d, 1);
  for (std::size_t i = 0; i < d * d; ++i) v(i, 0) = dec.v(i, column);
  CMatrix rho = unvec(v, d);
  const Complex tr = trace(rho);
  if (std::abs(tr) < 1e-12)
    throw Error(ErrorCode::NonUniqueStationaryState, "stationary direction is traceless");
  rho = hermitian_part(rho * (1.0 / tr));
  return validate_density(rho, 1e-7);
}

}  // namespace qds::qubit
