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

#include "qds/linalg.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace qds {
namespace {

inline double cnj(double x) { return x; }
inline Complex cnj(Complex z) { return std::conj(z); }
inline double abs2(double x) { return x * x; }
inline double abs2(Complex z) { return std::norm(z); }
inline double real_of(double x) { return x; }
inline double real_of(Complex z) { return z.real(); }

template <class T>
T phase_of(T z, double mag) {
  if constexpr (std::is_same_v<T, double>) {
    return z < 0 ? -1.0 : 1.0;
  } else {
    return z / mag;
  }
}

// Unitary J = [[c, s], [-s·conj(e), c·conj(e)]] with J† G J diagonal for the
// 2×2 Hermitian block G = [[app, apq], [conj(apq), aqq]].
template <class T>
struct Rotation {
  double c;
  double s;
  T e;
};

template <class T>
Rotation<T> jacobi_rotation(double app, double aqq, T apq) {
  const double mag = std::abs(apq);
  const T e = phase_of(apq, mag);
  const double zeta = (aqq - app) / (2.0 * mag);
  const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  return {c, c * t, e};
}

// Column update X[:, p], X[:, q] <- [X[:, p], X[:, q]] J.
template <class T>
void rotate_columns(Matrix<T>& x, std::size_t p, std::size_t q, const Rotation<T>& r) {
  const T ec = cnj(r.e);
  for (std::size_t k = 0; k < x.rows(); ++k) {
    const T xp = x(k, p);
    const T xq = x(k, q);
    x(k, p) = r.c * xp - r.s * ec * xq;
    x(k, q) = r.s * xp + r.c * ec * xq;
  }
}

// Row update X[p, :], X[q, :] <- J† [X[p, :]; X[q, :]].
template <class T>
void rotate_rows(Matrix<T>& x, std::size_t p, std::size_t q, const Rotation<T>& r) {
  for (std::size_t k = 0; k < x.cols(); ++k) {
    const T xp = x(p, k);
    const T xq = x(q, k);
    x(p, k) = r.c * xp - r.s * r.e * xq;
    x(q, k) = r.s * xp + r.c * r.e * xq;
  }
}

template <class T>
double off_diagonal_norm(const Matrix<T>& a) {
  double acc = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) acc += abs2(a(i, j));
  return std::sqrt(acc);
}

template <class T>
double frob(const Matrix<T>& a) {
  double acc = 0;
  for (const auto& x : a.data()) acc += abs2(x);
  return std::sqrt(acc);
}

template <class T>
std::pair<std::vector<double>, Matrix<T>> jacobi_eig(Matrix<T> a) {
  const std::size_t n = a.rows();
  Matrix<T> v = Matrix<T>::identity(n);
  const double scale = frob(a);
  if (scale > 0) {
    const double target = 1e-13 * scale;
    for (int sweep = 0; sweep < 100 && off_diagonal_norm(a) >= target; ++sweep) {
      for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
          const T apq = a(p, q);
          if (std::abs(apq) < std::numeric_limits<double>::min()) continue;
          const auto r = jacobi_rotation(real_of(a(p, p)), real_of(a(q, q)), apq);
          rotate_columns(a, p, q, r);
          rotate_rows(a, p, q, r);
          a(p, q) = T{};
          a(q, p) = T{};
          a(p, p) = real_of(a(p, p));
          a(q, q) = real_of(a(q, q));
          rotate_columns(v, p, q, r);
        }
      }
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return real_of(a(i, i)) > real_of(a(j, j));
  });
  std::vector<double> values(n);
  Matrix<T> vectors(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    values[k] = real_of(a(order[k], order[k]));
    for (std::size_t i = 0; i < n; ++i) vectors(i, k) = v(i, order[k]);
  }
  return {std::move(values), std::move(vectors)};
}

// Completes the columns flagged in `missing` to an orthonormal basis using
// Gram–Schmidt against canonical basis vectors.
template <class T>
void complete_orthonormal(Matrix<T>& u, const std::vector<bool>& missing) {
  const std::size_t n = u.rows();
  std::size_t candidate = 0;
  for (std::size_t col = 0; col < u.cols(); ++col) {
    if (!missing[col]) continue;
    while (candidate < n) {
      std::vector<T> w(n, T{});
      w[candidate++] = T{1};
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t other = 0; other < u.cols(); ++other) {
          if (other == col || (missing[other] && other > col)) continue;
          T dot{};
          for (std::size_t i = 0; i < n; ++i) dot += cnj(u(i, other)) * w[i];
          for (std::size_t i = 0; i < n; ++i) w[i] -= dot * u(i, other);
        }
      }
      double nrm = 0;
      for (const auto& x : w) nrm += abs2(x);
      nrm = std::sqrt(nrm);
      if (nrm > 1e-8) {
        for (std::size_t i = 0; i < n; ++i) u(i, col) = w[i] / nrm;
        break;
      }
    }
  }
}

template <class T>
void one_sided_jacobi(const Matrix<T>& a, Matrix<T>& u_out, std::vector<double>& s_out,
                      Matrix<T>& v_out) {
  if (!a.is_square()) throw Error(ErrorCode::DimensionMismatch, "svd expects a square matrix");
  const std::size_t n = a.rows();
  Matrix<T> u = a;
  Matrix<T> v = Matrix<T>::identity(n);
  const double eps = std::numeric_limits<double>::epsilon();
  for (int sweep = 0; sweep < 100; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0;
        double beta = 0;
        T gamma{};
        for (std::size_t k = 0; k < n; ++k) {
          alpha += abs2(u(k, p));
          beta += abs2(u(k, q));
          gamma += cnj(u(k, p)) * u(k, q);
        }
        if (std::abs(gamma) <= eps * std::sqrt(alpha * beta) ||
            std::abs(gamma) < std::numeric_limits<double>::min())
          continue;
        rotated = true;
        const auto r = jacobi_rotation(alpha, beta, gamma);
        rotate_columns(u, p, q, r);
        rotate_columns(v, p, q, r);
      }
    }
    if (!rotated) break;
  }
  std::vector<double> s(n);
  for (std::size_t k = 0; k < n; ++k) {
    double acc = 0;
    for (std::size_t i = 0; i < n; ++i) acc += abs2(u(i, k));
    s[k] = std::sqrt(acc);
  }
  const double smax = s.empty() ? 0.0 : *std::max_element(s.begin(), s.end());
  std::vector<bool> missing(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    if (s[k] > 0 && s[k] > smax * 1e-300) {
      for (std::size_t i = 0; i < n; ++i) u(i, k) /= s[k];
    } else {
      missing[k] = true;
    }
  }
  complete_orthonormal(u, missing);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return s[i] > s[j]; });
  u_out = Matrix<T>(n, n);
  v_out = Matrix<T>(n, n);
  s_out.assign(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    s_out[k] = s[order[k]];
    for (std::size_t i = 0; i < n; ++i) {
      u_out(i, k) = u(i, order[k]);
      v_out(i, k) = v(i, order[k]);
    }
  }
}

template <class T>
Matrix<T> lu_solve(Matrix<T> a, Matrix<T> b) {
  if (!a.is_square() || a.rows() != b.rows())
    throw Error(ErrorCode::DimensionMismatch, "solve shape");
  const std::size_t n = a.rows();
  const std::size_t m = b.cols();
  const double scale = std::max(frob(a), std::numeric_limits<double>::min());
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    double best = std::abs(a(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a(r, col)) > best) {
        best = std::abs(a(r, col));
        piv = r;
      }
    }
    if (best <= 1e-300 * scale || best == 0.0)
      throw Error(ErrorCode::InvalidArgument, "singular matrix in solve");
    if (piv != col) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a(col, k), a(piv, k));
      for (std::size_t k = 0; k < m; ++k) std::swap(b(col, k), b(piv, k));
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const T f = a(r, col) / a(col, col);
      if (f == T{}) continue;
      for (std::size_t k = col; k < n; ++k) a(r, k) -= f * a(col, k);
      for (std::size_t k = 0; k < m; ++k) b(r, k) -= f * b(col, k);
    }
  }
  Matrix<T> x(n, m);
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t k = 0; k < m; ++k) {
      T acc = b(ii, k);
      for (std::size_t j = ii + 1; j < n; ++j) acc -= a(ii, j) * x(j, k);
      x(ii, k) = acc / a(ii, ii);
    }
  }
  return x;
}

}  // namespace

CMatrix adjoint(const CMatrix& a) {
  CMatrix r(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = std::conj(a(i, j));
  return r;
}

CMatrix transpose(const CMatrix& a) {
  CMatrix r(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
  return r;
}

RMatrix transpose(const RMatrix& a) {
  RMatrix r(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
  return r;
}

CMatrix conjugate(const CMatrix& a) {
  CMatrix r = a;
  for (auto& x : r.data()) x = std::conj(x);
  return r;
}

CMatrix to_complex(const RMatrix& a) {
  CMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.size(); ++i) r.data()[i] = a.data()[i];
  return r;
}

Complex trace(const CMatrix& a) {
  Complex t{};
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) t += a(i, i);
  return t;
}

double trace(const RMatrix& a) {
  double t = 0;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) t += a(i, i);
  return t;
}

double frobenius_norm(const CMatrix& a) { return frob(a); }
double frobenius_norm(const RMatrix& a) { return frob(a); }

double norm1(const CMatrix& a) {
  double best = 0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double col = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) col += std::abs(a(i, j));
    best = std::max(best, col);
  }
  return best;
}

double max_abs(const CMatrix& a) {
  double m = 0;
  for (const auto& x : a.data()) m = std::max(m, std::abs(x));
  return m;
}

double max_abs(const RMatrix& a) {
  double m = 0;
  for (const auto& x : a.data()) m = std::max(m, std::abs(x));
  return m;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return r;
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }
CMatrix anticommutator(const CMatrix& a, const CMatrix& b) { return a * b + b * a; }

Complex hs_inner(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::DimensionMismatch, "hs_inner shape");
  Complex acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a.data()[i]) * b.data()[i];
  return acc;
}

bool is_hermitian(const CMatrix& a, double rel_tol) {
  if (!a.is_square()) return false;
  return frobenius_norm(a - adjoint(a)) <= rel_tol * std::max(1.0, frobenius_norm(a));
}

CMatrix hermitian_part(const CMatrix& a) { return (a + adjoint(a)) * Complex{0.5}; }

bool is_unitary(const CMatrix& u, double tol) {
  if (!u.is_square()) return false;
  return max_abs(adjoint(u) * u - CMatrix::identity(u.rows())) <= tol;
}

HermEigen herm_eig(const CMatrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::DimensionMismatch, "herm_eig expects a square matrix");
  if (!is_hermitian(a, 1e-12)) throw Error(ErrorCode::NotHermitian, "herm_eig input");
  auto [values, vectors] = jacobi_eig(hermitian_part(a));
  return {std::move(values), std::move(vectors)};
}

SymEigen sym_eig(const RMatrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::DimensionMismatch, "sym_eig expects a square matrix");
  RMatrix sym = a;
  double asym = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      asym += abs2(a(i, j) - a(j, i));
      sym(i, j) = 0.5 * (a(i, j) + a(j, i));
    }
  if (std::sqrt(asym) > 1e-12 * std::max(1.0, frob(a)))
    throw Error(ErrorCode::NotHermitian, "sym_eig input is not symmetric");
  auto [values, vectors] = jacobi_eig(std::move(sym));
  return {std::move(values), std::move(vectors)};
}

Svd svd(const CMatrix& a) {
  Svd r;
  one_sided_jacobi(a, r.u, r.s, r.v);
  return r;
}

RealSvd svd(const RMatrix& a) {
  RealSvd r;
  one_sided_jacobi(a, r.u, r.s, r.v);
  return r;
}

std::vector<double> singular_values(const CMatrix& a) { return svd(a).s; }

CMatrix solve(const CMatrix& a, const CMatrix& b) { return lu_solve(a, b); }
RMatrix solve(const RMatrix& a, const RMatrix& b) { return lu_solve(a, b); }

CMatrix expm(const CMatrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::DimensionMismatch, "expm expects a square matrix");
  const std::size_t n = a.rows();
  const CMatrix ident = CMatrix::identity(n);
  const double nrm = norm1(a);
  if (nrm == 0.0) return ident;

  // Padé degree selection and scaling thresholds for double precision.
  constexpr std::array<double, 4> theta = {1.495585217958292e-2, 2.539398330063230e-1,
                                           9.504178996162932e-1, 2.097847961257068e0};
  constexpr double theta13 = 5.371920351148152e0;
  static const std::vector<std::vector<double>> low_coeffs = {
      {120., 60., 12., 1.},
      {30240., 15120., 3360., 420., 30., 1.},
      {17297280., 8648640., 1995840., 277200., 25200., 1512., 56., 1.},
      {17643225600., 8821612800., 2075673600., 302702400., 30270240., 2162160., 110880.,
       3960., 90., 1.}};

  const CMatrix a2 = a * a;
  for (std::size_t idx = 0; idx < theta.size(); ++idx) {
    if (nrm > theta[idx]) continue;
    const auto& b = low_coeffs[idx];
    CMatrix u_even = ident * Complex{b[1]};
    CMatrix v_even = ident * Complex{b[0]};
    CMatrix power = ident;
    for (std::size_t k = 2; k < b.size(); k += 2) {
      power = power * a2;
      u_even += power * Complex{b[k + 1]};
      v_even += power * Complex{b[k]};
    }
    const CMatrix u = a * u_even;
    return solve(v_even - u, v_even + u);
  }

  int squarings = std::max(0, static_cast<int>(std::ceil(std::log2(nrm / theta13))));
  const double scale = std::ldexp(1.0, -squarings);
  const CMatrix as = a * Complex{scale};
  const CMatrix s2 = as * as;
  const CMatrix s4 = s2 * s2;
  const CMatrix s6 = s4 * s2;
  constexpr std::array<double, 14> b = {64764752532480000., 32382376266240000., 7771770303897600.,
                                        1187353796428800.,  129060195264000.,   10559470521600.,
                                        670442572800.,      33522128640.,       1323241920.,
                                        40840800.,          960960.,            16380.,
                                        182.,               1.};
  auto c = [](double x) { return Complex{x}; };
  const CMatrix u_inner = s6 * c(b[13]) + s4 * c(b[11]) + s2 * c(b[9]);
  const CMatrix u = as * (s6 * u_inner + s6 * c(b[7]) + s4 * c(b[5]) + s2 * c(b[3]) + ident * c(b[1]));
  const CMatrix v_inner = s6 * c(b[12]) + s4 * c(b[10]) + s2 * c(b[8]);
  const CMatrix v = s6 * v_inner + s6 * c(b[6]) + s4 * c(b[4]) + s2 * c(b[2]) + ident * c(b[0]);
  CMatrix r = solve(v - u, v + u);
  for (int k = 0; k < squarings; ++k) r = r * r;
  return r;
}

double schatten_norm(const CMatrix& a, double p) {
  if (std::isnan(p) || p < 1.0) throw Error(ErrorCode::InvalidP, "Schatten norm needs p >= 1");
  const auto s = singular_values(a);
  if (s.empty()) return 0.0;
  if (std::isinf(p)) return s.front();
  // Factor out the largest value to avoid overflow for large p.
  const double smax = s.front();
  if (smax == 0.0) return 0.0;
  double acc = 0;
  for (double x : s) acc += std::pow(x / smax, p);
  return smax * std::pow(acc, 1.0 / p);
}

}  // namespace qds
