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

#include "qds/superop.hpp"

#include <algorithm>

namespace qds {

CMatrix vec(const CMatrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::DimensionMismatch, "vec expects a square operator");
  const std::size_t d = a.rows();
  CMatrix v(d * d, 1);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) v(i + j * d, 0) = a(i, j);
  return v;
}

CMatrix unvec(const CMatrix& v, std::size_t d) {
  if (v.rows() != d * d || v.cols() != 1)
    throw Error(ErrorCode::DimensionMismatch, "unvec length");
  CMatrix a(d, d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) a(i, j) = v(i + j * d, 0);
  return a;
}

Superoperator::Superoperator(std::size_t dim, CMatrix mat) : dim_(dim), mat_(std::move(mat)) {
  if (mat_.rows() != dim_ * dim_ || mat_.cols() != dim_ * dim_)
    throw Error(ErrorCode::DimensionMismatch, "superoperator must be d²×d²");
}

Superoperator Superoperator::zero(std::size_t d) { return {d, CMatrix(d * d, d * d)}; }

Superoperator Superoperator::identity(std::size_t d) {
  return {d, CMatrix::identity(d * d)};
}

Superoperator Superoperator::sandwich(const CMatrix& v, const CMatrix& w) {
  if (!v.is_square() || v.rows() != w.rows() || !w.is_square())
    throw Error(ErrorCode::DimensionMismatch, "sandwich operands");
  return {v.rows(), kron(conjugate(w), v)};
}

Superoperator Superoperator::conjugation(const CMatrix& u) { return sandwich(u, u); }

Superoperator Superoperator::left(const CMatrix& x) {
  return {x.rows(), kron(CMatrix::identity(x.rows()), x)};
}

Superoperator Superoperator::right(const CMatrix& x) {
  return {x.rows(), kron(transpose(x), CMatrix::identity(x.rows()))};
}

Superoperator Superoperator::transposition(std::size_t d) {
  CMatrix m(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(j + i * d, i + j * d) = 1.0;
  return {d, std::move(m)};
}

CMatrix Superoperator::apply(const CMatrix& a) const {
  if (a.rows() != dim_ || a.cols() != dim_)
    throw Error(ErrorCode::DimensionMismatch, "apply: operator dimension");
  return unvec(mat_ * vec(a), dim_);
}

Superoperator Superoperator::adjoint() const { return {dim_, qds::adjoint(mat_)}; }

CMatrix Superoperator::choi() const {
  const std::size_t d = dim_;
  CMatrix c(d * d, d * d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l)
          c(a * d + k, b * d + l) = mat_(a + b * d, k + l * d);
  return c;
}

Superoperator Superoperator::from_choi(const CMatrix& choi) {
  std::size_t d = 0;
  while (d * d < choi.rows()) ++d;
  if (d * d != choi.rows() || !choi.is_square())
    throw Error(ErrorCode::DimensionMismatch, "Choi matrix must be d²×d²");
  CMatrix m(d * d, d * d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l)
          m(a + b * d, k + l * d) = choi(a * d + k, b * d + l);
  return {d, std::move(m)};
}

Superoperator& Superoperator::operator+=(const Superoperator& o) {
  if (o.dim_ != dim_) throw Error(ErrorCode::DimensionMismatch, "superoperator sum");
  mat_ += o.mat_;
  return *this;
}

Superoperator& Superoperator::operator-=(const Superoperator& o) {
  if (o.dim_ != dim_) throw Error(ErrorCode::DimensionMismatch, "superoperator difference");
  mat_ -= o.mat_;
  return *this;
}

Superoperator& Superoperator::operator*=(double s) {
  mat_ *= Complex{s};
  return *this;
}

Superoperator operator*(const Superoperator& a, const Superoperator& b) {
  if (a.dim_ != b.dim_) throw Error(ErrorCode::DimensionMismatch, "superoperator composition");
  return {a.dim_, a.mat_ * b.mat_};
}

Superoperator exp_superop(const Superoperator& generator, double t) {
  return {generator.dim(), expm(generator.mat() * Complex{t})};
}

double distance(const Superoperator& a, const Superoperator& b) {
  return frobenius_norm(a.mat() - b.mat());
}

namespace {

// Row of the superoperator matrix that computes tr(S A): Σ_a S[(a + a·d), :].
CMatrix trace_row(const Superoperator& s) {
  const std::size_t d = s.dim();
  CMatrix row(1, d * d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t c = 0; c < d * d; ++c) row(0, c) += s.mat()(a + a * d, c);
  return row;
}

}  // namespace

bool is_trace_preserving(const Superoperator& s, double tol) {
  const std::size_t d = s.dim();
  CMatrix row = trace_row(s);
  for (std::size_t a = 0; a < d; ++a) row(0, a + a * d) -= 1.0;
  return max_abs(row) <= tol;
}

bool is_trace_annihilating(const Superoperator& s, double tol) {
  return max_abs(trace_row(s)) <= tol;
}

bool is_unital_map(const Superoperator& s, double tol) {
  const std::size_t d = s.dim();
  return frobenius_norm(s.apply(CMatrix::identity(d)) - CMatrix::identity(d)) <= tol;
}

bool is_adjoint_preserving(const Superoperator& s, double tol) {
  const CMatrix c = s.choi();
  return frobenius_norm(c - qds::adjoint(c)) <= tol * std::max(1.0, frobenius_norm(c));
}

bool is_completely_positive(const Superoperator& s, double tol) {
  if (!is_adjoint_preserving(s, 1e-10)) return false;
  const CMatrix c = hermitian_part(s.choi());
  const auto eig = herm_eig(c);
  return eig.values.back() >= -tol * std::max(1.0, eig.values.front());
}

}  // namespace qds
