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

#include "qds/states.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace qds {

EigenvalueVector EigenvalueVector::from_values(std::vector<double> values) {
  std::sort(values.begin(), values.end(), std::greater<>());
  double sum = 0;
  for (double& v : values) {
    if (v < -1e-12) throw Error(ErrorCode::NotPositive, "eigenvalue below -1e-12");
    v = std::clamp(v, 0.0, 1.0);
    sum += v;
  }
  if (values.empty() || std::abs(sum - 1.0) > 1e-9)
    throw Error(ErrorCode::TraceNotOne, "eigenvalues do not sum to one");
  for (double& v : values) v /= sum;
  return EigenvalueVector(std::move(values));
}

DensityOperator DensityOperator::maximally_mixed(std::size_t d) {
  CMatrix m = CMatrix::identity(d) * Complex{1.0 / static_cast<double>(d)};
  return validate_density(m);
}

DensityOperator validate_density(const CMatrix& a, double tol) {
  if (!a.is_square() || a.rows() == 0)
    throw Error(ErrorCode::DimensionMismatch, "density operator must be square");
  if (!is_hermitian(a, tol)) throw Error(ErrorCode::NotHermitian, "density operator");
  CMatrix h = hermitian_part(a);
  HermEigen eig = herm_eig(h);
  if (eig.values.back() < -tol)
    throw Error(ErrorCode::NotPositive,
                "minimum eigenvalue " + std::to_string(eig.values.back()));
  const double tr = trace(h).real();
  if (std::abs(tr - 1.0) > tol)
    throw Error(ErrorCode::TraceNotOne, "trace " + std::to_string(tr));
  return DensityOperator(std::move(h), std::move(eig), tol);
}

EigenvalueVector eigenvalue_vector(const DensityOperator& rho) {
  std::vector<double> v = rho.eigen().values;
  for (double& x : v) x = std::max(x, 0.0);
  double sum = std::accumulate(v.begin(), v.end(), 0.0);
  for (double& x : v) x /= sum;
  return EigenvalueVector::from_values(std::move(v));
}

bool majorizes(std::span<const double> x, std::span<const double> y, double tol) {
  if (x.size() != y.size()) throw Error(ErrorCode::LengthMismatch, "majorization operands");
  std::vector<double> xs(x.begin(), x.end());
  std::vector<double> ys(y.begin(), y.end());
  std::sort(xs.begin(), xs.end(), std::greater<>());
  std::sort(ys.begin(), ys.end(), std::greater<>());
  double sx = 0;
  double sy = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sx += xs[k];
    sy += ys[k];
    if (sy > sx + tol) return false;
  }
  return std::abs(sx - sy) <= tol;
}

bool majorizes(const EigenvalueVector& x, const EigenvalueVector& y, double tol) {
  return majorizes(x.probs(), y.probs(), tol);
}

BistochasticMatrix BistochasticMatrix::from(RMatrix e) {
  if (!e.is_square() || e.rows() == 0)
    throw Error(ErrorCode::NotBistochastic, "matrix must be square and non-empty");
  const std::size_t d = e.rows();
  for (auto& x : e.data()) {
    if (x < -1e-10) throw Error(ErrorCode::NotBistochastic, "negative entry");
    if (x < 0) x = 0;
  }
  for (std::size_t i = 0; i < d; ++i) {
    double row = 0;
    double col = 0;
    for (std::size_t j = 0; j < d; ++j) {
      row += e(i, j);
      col += e(j, i);
    }
    if (std::abs(row - 1.0) > 1e-9 || std::abs(col - 1.0) > 1e-9)
      throw Error(ErrorCode::NotBistochastic, "row or column sum differs from one");
  }
  return BistochasticMatrix(std::move(e));
}

std::vector<double> BistochasticMatrix::apply(std::span<const double> x) const {
  if (x.size() != dim()) throw Error(ErrorCode::LengthMismatch, "bistochastic apply");
  std::vector<double> y(dim(), 0.0);
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) y[i] += entries_(i, j) * x[j];
  return y;
}

namespace {

// Orders eigenvectors inside each degenerate block lexicographically by their
// phase-normalised coefficients, so the pairing of projectors is reproducible.
CMatrix canonical_eigenbasis(const HermEigen& eig) {
  const std::size_t d = eig.values.size();
  CMatrix v = eig.vectors;
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t i = 0; i < d; ++i) {
      const double mag = std::abs(v(i, k));
      if (mag > 1e-12) {
        const Complex phase = std::conj(v(i, k)) / mag;
        for (std::size_t r = 0; r < d; ++r) v(r, k) *= phase;
        break;
      }
    }
  }
  auto less = [&](std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < d; ++i) {
      if (v(i, a).real() != v(i, b).real()) return v(i, a).real() < v(i, b).real();
      if (v(i, a).imag() != v(i, b).imag()) return v(i, a).imag() < v(i, b).imag();
    }
    return false;
  };
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::size_t start = 0;
  while (start < d) {
    std::size_t end = start + 1;
    while (end < d && std::abs(eig.values[end] - eig.values[start]) <= 1e-10) ++end;
    std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(start),
                     order.begin() + static_cast<std::ptrdiff_t>(end), less);
    start = end;
  }
  CMatrix out(d, d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < d; ++i) out(i, k) = v(i, order[k]);
  return out;
}

CMatrix projector(const CMatrix& basis, std::size_t k) {
  const std::size_t d = basis.rows();
  CMatrix p(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) p(i, j) = basis(i, k) * std::conj(basis(j, k));
  return p;
}

// Kuhn's augmenting-path matching on the bipartite support graph.
class Matcher {
 public:
  explicit Matcher(const std::vector<std::vector<bool>>& allowed)
      : allowed_(allowed), n_(allowed.size()), col_owner_(n_, npos) {}

  bool perfect(Permutation& perm) {
    std::fill(col_owner_.begin(), col_owner_.end(), npos);
    for (std::size_t row = 0; row < n_; ++row) {
      std::vector<bool> seen(n_, false);
      if (!augment(row, seen)) return false;
    }
    perm.assign(n_, 0);
    for (std::size_t col = 0; col < n_; ++col) perm[col_owner_[col]] = col;
    return true;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  bool augment(std::size_t row, std::vector<bool>& seen) {
    for (std::size_t col = 0; col < n_; ++col) {
      if (!allowed_[row][col] || seen[col]) continue;
      seen[col] = true;
      if (col_owner_[col] == npos || augment(col_owner_[col], seen)) {
        col_owner_[col] = row;
        return true;
      }
    }
    return false;
  }

  const std::vector<std::vector<bool>>& allowed_;
  std::size_t n_;
  std::vector<std::size_t> col_owner_;
};

bool matching_at_threshold(const RMatrix& r, double threshold, Permutation& perm) {
  const std::size_t d = r.rows();
  std::vector<std::vector<bool>> allowed(d, std::vector<bool>(d, false));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) allowed[i][j] = r(i, j) >= threshold;
  Matcher m(allowed);
  return m.perfect(perm);
}

}  // namespace

BistochasticMatrix extract_bistochastic(const Superoperator& phi, const DensityOperator& rho) {
  if (phi.dim() != rho.dim()) throw Error(ErrorCode::DimensionMismatch, "map and state");
  if (!is_trace_preserving(phi, 1e-9))
    throw Error(ErrorCode::NotTracePreserving, "extract_bistochastic needs a trace-preserving map");
  if (!is_unital_map(phi, 1e-9))
    throw Error(ErrorCode::NotUnital, "extract_bistochastic needs a unital map");
  const std::size_t d = rho.dim();
  const DensityOperator image = validate_density(phi.apply(rho.mat()), 1e-7);
  const CMatrix p_basis = canonical_eigenbasis(rho.eigen());
  const CMatrix q_basis = canonical_eigenbasis(image.eigen());

  RMatrix b(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    const CMatrix image_k = phi.apply(projector(p_basis, k));
    for (std::size_t j = 0; j < d; ++j) {
      Complex acc{};
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c)
          acc += std::conj(q_basis(r, j)) * image_k(r, c) * q_basis(c, j);
      b(j, k) = acc.real();
    }
  }
  for (auto& x : b.data())
    if (x < -1e-10) throw Error(ErrorCode::NotPositive, "map sends a projector outside the cone");
  return BistochasticMatrix::from(std::move(b));
}

RMatrix permutation_matrix(const Permutation& perm) {
  RMatrix p(perm.size(), perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) p(i, perm[i]) = 1.0;
  return p;
}

RMatrix BirkhoffDecomposition::reconstruct(std::size_t d) const {
  RMatrix r(d, d);
  for (const auto& t : terms) {
    if (t.perm.size() != d) throw Error(ErrorCode::DimensionMismatch, "permutation length");
    for (std::size_t i = 0; i < d; ++i) r(i, t.perm[i]) += t.weight;
  }
  return r;
}

BirkhoffDecomposition birkhoff_decompose(const BistochasticMatrix& b) {
  constexpr double kZero = 1e-12;
  const std::size_t d = b.dim();
  RMatrix residual = b.entries();
  for (auto& x : residual.data())
    if (x < kZero) x = 0;

  BirkhoffDecomposition out;
  const std::size_t max_terms = d * d - 2 * d + 2;
  while (true) {
    double remaining = 0;
    for (std::size_t j = 0; j < d; ++j) remaining += residual(0, j);
    if (remaining <= kZero) break;

    std::vector<double> levels;
    for (double x : residual.data())
      if (x > 0) levels.push_back(x);
    std::sort(levels.begin(), levels.end(), std::greater<>());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    // Largest threshold that still admits a perfect matching; feasibility
    // is monotone in the threshold so a binary search over levels suffices.
    Permutation best;
    std::size_t lo = 0;
    std::size_t hi = levels.size();
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      Permutation perm;
      if (matching_at_threshold(residual, levels[mid], perm)) {
        best = std::move(perm);
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    if (best.empty())
      throw Error(ErrorCode::NotBistochastic, "support admits no perfect matching");

    double w = kInf;
    for (std::size_t i = 0; i < d; ++i) w = std::min(w, residual(i, best[i]));
    for (std::size_t i = 0; i < d; ++i) residual(i, best[i]) -= w;
    for (auto& x : residual.data())
      if (x < kZero) x = 0;
    out.terms.push_back({w, std::move(best)});
    if (out.terms.size() > max_terms)
      throw Error(ErrorCode::NotBistochastic, "term bound exceeded");
  }

  double total = 0;
  for (const auto& t : out.terms) total += t.weight;
  for (auto& t : out.terms) t.weight /= total;
  return out;
}

}  // namespace qds
