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

// Self-contained dense matrix kernel: storage, products, Hermitian
// eigendecomposition (cyclic Jacobi), one-sided Jacobi SVD, Padé matrix
// exponential, LU solves and Schatten norms.

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <vector>

#include "qds/error.hpp"
#include "qds/kernels.hpp"

namespace qds {

using Complex = std::complex<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

template <class T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged initializer");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::span<T> data() noexcept { return data_; }
  std::span<const T> data() const noexcept { return data_; }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(T s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) { return a *= T{-1}; }
  friend Matrix operator*(Matrix a, T s) { return a *= s; }
  friend Matrix operator*(T s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product shape");
    Matrix c(a.rows_, b.cols_);
    kernels::matmul(a.data_.data(), b.data_.data(), c.data_.data(), a.rows_, a.cols_, b.cols_);
    return c;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw Error(ErrorCode::DimensionMismatch, "elementwise operation shape");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using CMatrix = Matrix<Complex>;
using RMatrix = Matrix<double>;

// ---------------------------------------------------------------- basics

CMatrix adjoint(const CMatrix& a);
CMatrix transpose(const CMatrix& a);
CMatrix conjugate(const CMatrix& a);
RMatrix transpose(const RMatrix& a);
CMatrix to_complex(const RMatrix& a);

Complex trace(const CMatrix& a);
double trace(const RMatrix& a);
double frobenius_norm(const CMatrix& a);
double frobenius_norm(const RMatrix& a);
/// Maximum absolute column sum.
double norm1(const CMatrix& a);
double max_abs(const CMatrix& a);
double max_abs(const RMatrix& a);

/// Kronecker product; (A⊗B)_{(i·p+k),(j·q+l)} = A_ij B_kl.
CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix commutator(const CMatrix& a, const CMatrix& b);
CMatrix anticommutator(const CMatrix& a, const CMatrix& b);
/// Hilbert–Schmidt product tr(A† B).
Complex hs_inner(const CMatrix& a, const CMatrix& b);

bool is_hermitian(const CMatrix& a, double rel_tol);
CMatrix hermitian_part(const CMatrix& a);
bool is_unitary(const CMatrix& u, double tol);

// ------------------------------------------------------- decompositions

struct HermEigen {
  std::vector<double> values;  ///< non-increasing
  CMatrix vectors;             ///< unitary, column k pairs with values[k]
};

struct SymEigen {
  std::vector<double> values;  ///< non-increasing
  RMatrix vectors;             ///< orthogonal
};

/// Throws NotHermitian when ‖A − A†‖_F > 1e-12·max(1, ‖A‖_F).
HermEigen herm_eig(const CMatrix& a);
SymEigen sym_eig(const RMatrix& a);

struct Svd {
  CMatrix u;
  std::vector<double> s;  ///< non-increasing, non-negative
  CMatrix v;              ///< A = U diag(s) V†
};

struct RealSvd {
  RMatrix u;
  std::vector<double> s;
  RMatrix v;  ///< A = U diag(s) Vᵀ
};

Svd svd(const CMatrix& a);
RealSvd svd(const RMatrix& a);
std::vector<double> singular_values(const CMatrix& a);

CMatrix expm(const CMatrix& a);

/// Solves A X = B by LU with partial pivoting. Throws InvalidArgument when
/// A is numerically singular.
CMatrix solve(const CMatrix& a, const CMatrix& b);
RMatrix solve(const RMatrix& a, const RMatrix& b);

/// Schatten p-norm for p ≥ 1; p = kInf gives the operator norm.
double schatten_norm(const CMatrix& a, double p);

}  // namespace qds
