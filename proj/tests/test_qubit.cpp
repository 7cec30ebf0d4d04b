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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qds/gkls.hpp"
#include "qds/qubit.hpp"
#include "support.hpp"

using namespace qds;
using namespace qds::qubit;
using qds::test::max_diff;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

RMatrix random_rotation(Rng& rng) { return bloch_rotation(random_unitary(rng, 2)); }

RMatrix random_symmetric(Rng& rng, double lo, double hi) {
  const RMatrix r = random_rotation(rng);
  RMatrix d(3, 3);
  for (std::size_t i = 0; i < 3; ++i) d(i, i) = rng.uniform(lo, hi);
  RMatrix k = r * d * transpose(r);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < i; ++j) k(i, j) = k(j, i);
  return k;
}

Vec3 random_h(Rng& rng) { return {rng.normal(), rng.normal(), rng.normal()}; }

}  // namespace

TEST_CASE("Bloch vectors") {
  const BlochVector b{{0.3, -0.4, 0.5}};
  const auto rho = b.to_density();
  const auto back = BlochVector::of(rho);
  for (std::size_t j = 0; j < 3; ++j) CHECK(back.r[j] == doctest::Approx(b.r[j]));
  CHECK(code_of([] { BlochVector{{1, 1, 0}}.to_density(); }) == ErrorCode::NotPositive);
  CHECK_NOTHROW(BlochVector{{0, 0, 1}}.to_density());
}

TEST_CASE("matrix representation examples") {
  CHECK(max_diff(matrix_rep(Superoperator::identity(2)), RMatrix::identity(4)) <= 1e-15);

  const double g = 0.7;
  const auto l = compile(test::raising_lowering(g, g));
  const RMatrix expect{{0, 0, 0, 0}, {0, -g, 0, 0}, {0, 0, -g, 0}, {0, 0, 0, -2 * g}};
  CHECK(max_diff(matrix_rep(l), expect) <= 1e-15);

  const double theta = 0.9;
  const CMatrix u = expm(pauli(3) * Complex{0, -theta / 2});
  const RMatrix m = matrix_rep(Superoperator::conjugation(u));
  const double c = std::cos(theta), s = std::sin(theta);
  const RMatrix rot{{1, 0, 0, 0}, {0, c, -s, 0}, {0, s, c, 0}, {0, 0, 0, 1}};
  CHECK(max_diff(m, rot) <= 1e-15);

  CHECK(code_of([] { matrix_rep(Superoperator::left(CMatrix{{0, 1}, {0, 0}})); }) ==
        ErrorCode::NotAdjointPreserving);

  Rng rng(4);
  const auto t = Superoperator::conjugation(random_unitary(rng, 2)) * 0.3 +
                 Superoperator::transposition(2) * 0.7;
  CHECK(max_diff(from_matrix_rep(matrix_rep(t)).mat(), t.mat()) <= 1e-15);
}

TEST_CASE("generator block examples") {
  const QubitGeneratorParams ex6({0, 0, 0}, RMatrix{{1, 0, 0}, {0, 2, 0}, {0, 0, 3}});
  const auto g = build_qubit_generator(ex6);
  CHECK(max_diff(g.f, RMatrix{{-2.5, 0, 0}, {0, -2, 0}, {0, 0, -1.5}}) <= 1e-15);

  const QubitGeneratorParams rot({0, 0, 0.8}, RMatrix(3, 3));
  const auto gr = build_qubit_generator(rot);
  CHECK(max_diff(gr.f, RMatrix{{0, -0.8, 0}, {0.8, 0, 0}, {0, 0, 0}}) <= 1e-15);
  CHECK(max_abs(gr.p) == 0.0);

  const double c = 0.6;
  const QubitGeneratorParams off({0, 0, 0}, RMatrix{{0, c, 0}, {c, 0, 0}, {0, 0, 0}});
  const auto go = build_qubit_generator(off);
  CHECK(go.f(0, 1) == doctest::Approx(c / 2));
  CHECK(go.f(1, 0) == doctest::Approx(c / 2));
  CHECK(go.f(0, 0) == 0.0);
  CHECK(go.f(2, 2) == 0.0);
}

TEST_CASE("closed-form F matches the compiled generator") {
  Rng rng(8);
  for (int rep = 0; rep < 100; ++rep) {
    const QubitGeneratorParams p(random_h(rng), random_symmetric(rng, -2, 2));
    const auto g = build_qubit_generator(p);
    const RMatrix m = matrix_rep(g.generator);
    CHECK(max_diff(bloch_block(m), g.f) <= 1e-14);
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(m(0, k)) <= 1e-15);  // trace
    for (std::size_t j = 1; j < 4; ++j) CHECK(std::abs(m(j, 0)) <= 1e-15);  // unital
    CHECK(max_abs(g.p + g.f + transpose(g.f)) <= 1e-11);
    const auto back = params_from_generator(g.generator);
    for (std::size_t j = 0; j < 3; ++j) CHECK(back.h[j] == doctest::Approx(p.h[j]).epsilon(1e-12));
    CHECK(max_diff(back.k, p.k) <= 1e-13);
  }
  CHECK(code_of([] { params_from_generator(compile(test::raising_lowering(2, 1))); }) ==
        ErrorCode::NotUnital);
  CHECK(code_of([] { QubitGeneratorParams({0, 0, 0}, RMatrix{{0, 1, 0}, {0, 0, 0}, {0, 0, 0}}); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("F criterion") {
  CHECK(is_positive_qubit_generator(RMatrix::identity(3) * -1.0));
  CHECK(is_positive_qubit_generator(RMatrix{{0, 1, -2}, {-1, 0, 3}, {2, -3, 0}}));
  CHECK_FALSE(is_positive_qubit_generator(RMatrix{{1, 0, 0}, {0, -1, 0}, {0, 0, -1}}));
}

TEST_CASE("cone classification") {
  auto v = classify_cone(QubitGeneratorParams({0, 0, 0}, RMatrix::identity(3)));
  CHECK(v.cone == Cone::CPTU);
  v = classify_cone(QubitGeneratorParams({0, 0, 0}, RMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, -0.5}}));
  CHECK(v.cone == Cone::PTU_only);
  CHECK(v.k_eigenvalues.back() < 0);
  CHECK(v.p_eigenvalues.back() >= 0);
  CHECK(v.minors_agree);
  v = classify_cone(QubitGeneratorParams({0, 0, 0}, RMatrix{{1, 0, 0}, {0, -2, 0}, {0, 0, 0}}));
  CHECK(v.cone == Cone::Outside);
  CHECK(std::string(to_string(Cone::PTU_only)) == "PTU_only");
}

TEST_CASE("cone verdicts agree with the Choi test and the minors test") {
  Rng rng(13);
  for (int rep = 0; rep < 200; ++rep) {
    const QubitGeneratorParams p(random_h(rng), random_symmetric(rng, -1, 2));
    const auto v = classify_cone(p);
    const auto g = build_qubit_generator(p);
    CHECK((v.cone == Cone::CPTU) == is_gkls_generator(g.generator));
    CHECK((v.cone != Cone::Outside) == is_positive_qubit_generator(g.f));
    CHECK(v.minors_agree);
    if (v.cone == Cone::CPTU) CHECK(v.p_eigenvalues.back() >= -1e-10);
  }
}

TEST_CASE("rotating K to its eigenbasis is a unitary change of frame") {
  Rng rng(17);
  for (int rep = 0; rep < 50; ++rep) {
    const QubitGeneratorParams p(random_h(rng), random_symmetric(rng, -1, 2));
    SymEigen eig = sym_eig(p.k);
    RMatrix r = eig.vectors;
    if (r(0, 0) * (r(1, 1) * r(2, 2) - r(1, 2) * r(2, 1)) -
            r(0, 1) * (r(1, 0) * r(2, 2) - r(1, 2) * r(2, 0)) +
            r(0, 2) * (r(1, 0) * r(2, 1) - r(1, 1) * r(2, 0)) <
        0)
      for (std::size_t i = 0; i < 3; ++i) r(i, 2) = -r(i, 2);
    RMatrix d(3, 3);
    for (std::size_t i = 0; i < 3; ++i) d(i, i) = eig.values[i];
    Vec3 h{};
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) h[i] += r(j, i) * p.h[j];
    const auto diag_gen = build_qubit_generator(QubitGeneratorParams(h, d)).generator;
    const CMatrix u = su2_lift(r);
    const auto frame = Superoperator::conjugation(u) * diag_gen *
                       Superoperator::conjugation(adjoint(u));
    CHECK(distance(frame, build_qubit_generator(p).generator) <= 1e-9);
  }
}

TEST_CASE("positivity margin") {
  Rng rng(19);
  // Unital: the margin is the top eigenvalue of (F + Fᵀ)/2.
  for (int rep = 0; rep < 20; ++rep) {
    const QubitGeneratorParams p(random_h(rng), random_symmetric(rng, -1, 2));
    const auto g = build_qubit_generator(p);
    const auto m = positivity_margin(g.generator);
    CHECK(m.margin == doctest::Approx(sym_eig((g.f + transpose(g.f)) * 0.5).values[0]).epsilon(1e-10));
  }
  // Non-unital: compare with a dense sphere scan.
  for (int rep = 0; rep < 20; ++rep) {
    const auto gen = test::random_generator(rng, 2, false);
    const auto l = rep % 2 ? compile(gen) : compile(gen) * -1.0;
    const RMatrix m = matrix_rep(l);
    const auto margin = positivity_margin(l);
    double best = -kInf;
    for (int i = 0; i <= 200; ++i)
      for (int j = 0; j < 400; ++j) {
        const double th = std::numbers::pi * i / 200, ph = 2 * std::numbers::pi * j / 400;
        const double n[3] = {std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
        double v = 0;
        for (std::size_t a = 0; a < 3; ++a) {
          double fa = m(a + 1, 0);
          for (std::size_t b = 0; b < 3; ++b) fa += m(a + 1, b + 1) * n[b];
          v += n[a] * fa;
        }
        best = std::max(best, v);
      }
    CHECK(margin.margin >= best - 1e-12);
    CHECK(margin.margin <= best + 1e-3 * (1 + max_abs(m)));
    if (rep % 2) CHECK(margin.margin <= 1e-12);  // compiled GKLS generators are positive
  }
}

TEST_CASE("SU(2) lift") {
  Rng rng(23);
  for (int rep = 0; rep < 100; ++rep) {
    const RMatrix r = random_rotation(rng);
    const CMatrix u = su2_lift(r);
    CHECK(is_unitary(u, 1e-12));
    CHECK(std::abs(u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0) - 1.0) <= 1e-12);
    CHECK(u(0, 0).real() >= 0);
    CHECK(max_diff(bloch_rotation(u), r) <= 1e-12);
  }
  // Rotation by π: the trace pivot is degenerate.
  CHECK(max_diff(bloch_rotation(su2_lift(RMatrix{{1, 0, 0}, {0, -1, 0}, {0, 0, -1}})),
                 RMatrix{{1, 0, 0}, {0, -1, 0}, {0, 0, -1}}) <= 1e-14);
  CHECK_THROWS_AS(su2_lift(RMatrix{{-1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), Error);
}

TEST_CASE("Stormer decomposition examples") {
  Rng rng(29);
  const CMatrix u = random_unitary(rng, 2);
  auto dec = stormer_decompose(Superoperator::conjugation(u));
  REQUIRE(dec.mu.size() == 1);
  CHECK(dec.nu.empty());
  CHECK(dec.mu[0].weight == doctest::Approx(1.0));
  CHECK(std::abs(std::abs(hs_inner(dec.mu[0].unitary, u)) - 2.0) <= 1e-12);

  dec = stormer_decompose(Superoperator::transposition(2));
  CHECK(dec.mu.empty());
  REQUIRE(dec.nu.size() == 1);
  CHECK(dec.nu[0].weight == doctest::Approx(1.0));
  CHECK(std::abs(std::abs(hs_inner(dec.nu[0].unitary, CMatrix::identity(2))) - 2.0) <= 1e-12);

  RMatrix dep(4, 4);
  dep(0, 0) = 1;
  dec = stormer_decompose(from_matrix_rep(dep));
  CHECK(dec.nu.empty());
  REQUIRE(dec.mu.size() == 4);
  std::vector<bool> seen(4, false);
  for (const auto& t : dec.mu) {
    CHECK(t.weight == doctest::Approx(0.25));
    for (std::size_t j = 0; j < 4; ++j)
      if (std::abs(std::abs(hs_inner(t.unitary, pauli(j))) - 2.0) <= 1e-12) seen[j] = true;
  }
  CHECK(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }));
  CHECK(distance(dec.reconstruct(), from_matrix_rep(dep)) <= 1e-12);
}

TEST_CASE("Stormer decomposition errors") {
  RMatrix m = RMatrix::identity(4) * 1.2;
  m(0, 0) = 1;
  CHECK(code_of([&] { stormer_decompose(from_matrix_rep(m)); }) == ErrorCode::NotPositive);
  CHECK(code_of([] { stormer_decompose(exp_superop(compile(test::raising_lowering(2, 1)), 1)); }) ==
        ErrorCode::NotUnital);
}

TEST_CASE("Stormer decomposition on random mixtures") {
  Rng rng(31);
  for (int rep = 0; rep < 60; ++rep) {
    Superoperator s = Superoperator::zero(2);
    const std::size_t terms = 1 + rng.index(4);
    std::vector<double> w(terms);
    double total = 0;
    for (auto& x : w) total += (x = rng.uniform(0.1, 1));
    const bool cp_only = rep % 3 == 0;
    for (std::size_t k = 0; k < terms; ++k) {
      auto c = Superoperator::conjugation(random_unitary(rng, 2));
      if (!cp_only && rng.uniform() < 0.5) c = c * Superoperator::transposition(2);
      s += c * (w[k] / total);
    }
    const auto dec = stormer_decompose(s);
    double sum = 0;
    for (const auto& t : dec.mu) sum += t.weight;
    for (const auto& t : dec.nu) sum += t.weight;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(distance(dec.reconstruct(), s) <= 1e-9);
    if (cp_only) CHECK(dec.nu.empty());
  }
}

TEST_CASE("asymptotic state") {
  auto rho = asymptotic_state(compile(test::raising_lowering(2, 1)));
  const auto v = eigenvalue_vector(rho);
  CHECK(v[0] == doctest::Approx(2.0 / 3).epsilon(1e-10));
  CHECK(v[1] == doctest::Approx(1.0 / 3).epsilon(1e-10));
  CHECK(frobenius_norm(compile(test::raising_lowering(2, 1)).apply(rho.mat())) <= 1e-10);

  rho = asymptotic_state(compile(test::raising_lowering(1.3, 1.3)));
  CHECK(max_diff(rho.mat(), CMatrix::identity(2) * Complex{0.5}) <= 1e-10);

  Rng rng(37);
  CHECK(code_of([&] { asymptotic_state(hamiltonian_superop(random_traceless_hermitian(rng, 2))); }) ==
        ErrorCode::NonUniqueStationaryState);
}
