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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit status
// when any criterion fails.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <unsupported/Eigen/MatrixFunctions>

#include "qds/app.hpp"
#include "qds/gkls.hpp"
#include "qds/qubit.hpp"
#include "qds/states.hpp"
#include "qds/twirling.hpp"
#include "support.hpp"

using namespace qds;

namespace {

constexpr std::uint64_t kRoot = 0x51a7e;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::string digest;  ///< verdict stream, compared across runs
};

std::uint64_t seed_for(int criterion, std::uint64_t index) {
  return derive_seed(kRoot, std::uint64_t(criterion) * 100000 + index);
}

Superoperator expm_oracle(const Superoperator& l, double t) {
  const Eigen::MatrixXcd e = (test::to_eigen(l.mat()) * t).exp();
  return Superoperator(l.dim(), test::from_eigen(e));
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

ClassifyOptions suite_options() {
  ClassifyOptions o;
  o.t_grid = uniform_grid(5.0, 50);
  return o;
}

// 1 ─ Unitality, majorization and entropy monotonicity agree.
Outcome ac1() {
  Outcome out;
  std::size_t agree = 0, monotone_unital = 0, unital_total = 0, total = 0;
  const auto opts = suite_options();
  for (std::size_t d = 2; d <= 4; ++d)
    for (std::size_t i = 0; i < 100; ++i) {
      Rng rng(seed_for(1, d * 1000 + i));
      const bool unital = i < 50;
      const auto gen = test::random_generator(rng, d, unital);
      auto o = opts;
      o.seed = seed_for(1, 500000 + d * 1000 + i);
      const auto rep = classify_theorem1(gen, o);
      ++total;
      agree += rep.all_agree;
      if (unital) {
        ++unital_total;
        monotone_unital += rep.unital && rep.entropies_ok;
      }
      out.digest += rep.all_agree ? '1' : '0';
      out.digest += rep.unital ? 'u' : 'n';
      out.digest += rep.entropies_ok ? 'm' : 'x';
    }
  out.pass = agree == total && monotone_unital == unital_total;
  out.detail = std::to_string(agree) + "/" + std::to_string(total) + " all_agree, " +
               std::to_string(monotone_unital) + "/" + std::to_string(unital_total) +
               " unital cases monotone in all 13 entropies";
  return out;
}

// 2 ─ Non-unital generators lower the entropy of ρ*.
Outcome ac2() {
  Outcome out;
  std::size_t ok = 0, considered = 0;
  double smallest_drop = kInf;
  const auto grid = uniform_grid(0.5, 51);
  for (std::size_t i = 0; i < 100; ++i) {
    Rng rng(seed_for(2, i));
    const std::size_t d = 2 + i % 3;
    const auto l = compile(test::random_generator(rng, d, false));
    if (unitality_defect(l) <= 1e-6) continue;
    ++considered;
    const auto mms = DensityOperator::maximally_mixed(d);
    const double s0 = von_neumann(mms);
    double drop = 0;
    for (std::size_t k = 1; k < grid.size(); ++k)
      drop = std::max(drop, s0 - von_neumann(evolve(l, mms, grid[k])));
    smallest_drop = std::min(smallest_drop, drop);
    const bool pass = drop > 1e-8;
    ok += pass;
    out.digest += pass ? '1' : '0';
  }
  out.pass = considered == 100 && ok == considered;
  out.detail = std::to_string(ok) + "/" + std::to_string(considered) +
               " non-unital cases, smallest drop " + fmt(smallest_drop);
  return out;
}

// 3 ─ Stationary states of the raising/lowering qubit generator.
Outcome ac3() {
  Outcome out;
  double err_skew = 0, err_mixed = 0;
  const auto skew = compile(test::raising_lowering(2, 1));
  const auto balanced = compile(test::raising_lowering(1, 1));
  for (std::size_t i = 0; i < 10; ++i) {
    Rng rng(seed_for(3, i));
    const auto rho = validate_density(random_density(rng, 2));
    const auto v = eigenvalue_vector(evolve(skew, rho, 30.0));
    err_skew = std::max({err_skew, std::abs(v[0] - 2.0 / 3), std::abs(v[1] - 1.0 / 3)});
    const auto m = evolve(balanced, rho, 30.0).mat();
    err_mixed = std::max(err_mixed, max_abs(m - CMatrix::identity(2) * Complex{0.5}));
  }
  out.pass = err_skew <= 1e-6 && err_mixed <= 1e-8;
  out.detail = "spectrum error " + fmt(err_skew) + ", distance to mms " + fmt(err_mixed);
  out.digest = out.pass ? "1" : "0";
  return out;
}

// 4 ─ Poisson twirl closed form against the exponential.
Outcome ac4() {
  Outcome out;
  double worst = 0;
  for (std::size_t i = 0; i < 20; ++i) {
    Rng rng(seed_for(4, i));
    const std::size_t d = 2 + rng.index(3);
    const double lambda = rng.uniform(0.1, 3), t = rng.uniform(0, 3);
    const CMatrix u = random_unitary(rng, d);
    const double err = max_abs(poisson_twirl(lambda, u, t).mat() -
                               expm_oracle(poisson_generator(lambda, u), t).mat());
    worst = std::max(worst, err);
    out.digest += err <= 1e-10 ? '1' : '0';
  }
  out.pass = worst <= 1e-10;
  out.detail = "20 triples, worst entry error " + fmt(worst);
  return out;
}

// 5 ─ Projection semigroups.
Outcome ac5() {
  Outcome out;
  double worst = 0;
  bool luders_ok = true, replacement_ok = true;
  for (std::size_t i = 0; i < 20; ++i) {
    Rng rng(seed_for(5, i));
    const std::size_t d = 2 + rng.index(3);
    const double gamma = rng.uniform(0.1, 2), t = rng.uniform(0, 4);
    const auto p = i % 2 ? luders_projection(random_unitary(rng, d))
                         : replacement_projection(random_density(rng, d, d));
    worst = std::max(worst, max_abs(projection_semigroup(p, gamma, t).mat() -
                                    expm_oracle(projection_generator(p, gamma), t).mat()));
  }
  for (std::size_t i = 0; i < 10; ++i) {
    Rng rng(seed_for(5, 1000 + i));
    const std::size_t d = 2 + rng.index(3);
    auto opts = suite_options();
    opts.seed = seed_for(5, 2000 + i);
    const auto lu = classify_theorem1(projection_generator(luders_projection(random_unitary(rng, d)), 1.0),
                                      opts);
    luders_ok = luders_ok && lu.unital && lu.entropies_ok && lu.majorization_ok && lu.all_agree;
    CMatrix rho0 = random_density(rng, d, d);
    const auto rep = classify_theorem1(projection_generator(replacement_projection(rho0), 1.0), opts);
    replacement_ok = replacement_ok && !rep.unital && !rep.entropies_ok && rep.witness.has_value() &&
                     rep.all_agree;
    out.digest += lu.all_agree ? '1' : '0';
    out.digest += rep.witness ? 'w' : '-';
  }
  out.pass = worst <= 1e-10 && luders_ok && replacement_ok;
  out.detail = "closed form error " + fmt(worst) + ", Lüders suite " + (luders_ok ? "ok" : "FAILED") +
               ", replacement non-unital with witness " + (replacement_ok ? "ok" : "FAILED");
  return out;
}

// 6 ─ Qubit F + Fᵀ criterion against Bloch-ball sampling.
Outcome ac6() {
  Outcome out;
  std::vector<double> grid;
  for (int i = 0; i < 40; ++i) grid.push_back(1e-4 * std::pow(5e4, i / 39.0));
  std::size_t disagreements = 0, nonpositive = 0;
  std::string misses;
  for (std::size_t i = 0; i < 1000; ++i) {
    Rng rng(seed_for(6, i));
    const qubit::Vec3 h{rng.normal(), rng.normal(), rng.normal()};
    RMatrix k(3, 3);
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = a; b < 3; ++b) k(a, b) = k(b, a) = rng.normal();
    const auto g = qubit::build_qubit_generator(qubit::QubitGeneratorParams(h, k));
    const bool criterion = qubit::is_positive_qubit_generator(g.f);
    nonpositive += !criterion;

    std::vector<qubit::Vec3> states(200);
    for (auto& n : states) {
      const double x = rng.normal(), y = rng.normal(), z = rng.normal();
      const double len = std::sqrt(x * x + y * y + z * z);
      n = {x / len, y / len, z / len};
    }
    bool preserved = true;
    for (double t : grid) {
      const RMatrix m = qubit::matrix_rep(exp_superop(g.generator, t));
      for (const auto& n : states) {
        double norm2 = 0;
        for (std::size_t a = 0; a < 3; ++a) {
          double v = m(a + 1, 0);
          for (std::size_t b = 0; b < 3; ++b) v += m(a + 1, b + 1) * n[b];
          norm2 += v * v;
        }
        if (std::sqrt(norm2) > 1 + 1e-8) preserved = false;
      }
      if (!preserved) break;
    }
    out.digest += criterion ? 'p' : 'n';
    out.digest += preserved ? 'p' : 'n';
    if (criterion != preserved) {
      ++disagreements;
      // Exact reference on the same grid: largest singular value of the
      // Bloch block of Φ_t, which exceeds one iff some pure state leaves the ball.
      double stretch = 0;
      for (double t : grid)
        stretch = std::max(stretch, svd(qubit::bloch_block(qubit::matrix_rep(exp_superop(g.generator, t)))).s[0]);
      const auto eig = sym_eig(g.f + transpose(g.f)).values;
      misses += " [#" + std::to_string(i) + " F+Fᵀ eigenvalues " + fmt(eig[0]) + "," + fmt(eig[1]) +
                "," + fmt(eig[2]) + ", max stretch on the grid 1+" + fmt(stretch - 1) +
                (criterion ? "; sampling found a violation" : "; the 200 states missed it") + "]";
    }
  }
  out.pass = disagreements == 0;
  out.detail = std::to_string(disagreements) + " disagreements in 1000 samples (" +
               std::to_string(nonpositive) + " non-positive by the criterion)" + misses;
  return out;
}

// 7 ─ Qubit cone points.
Outcome ac7() {
  Outcome out;
  using qubit::Cone;
  auto cone = [](double a, double b, double c) {
    RMatrix k(3, 3);
    k(0, 0) = a, k(1, 1) = b, k(2, 2) = c;
    return qubit::classify_cone(qubit::QubitGeneratorParams({0, 0, 0}, k));
  };
  const auto ptu = cone(1, 1, -0.5), cp = cone(1, 1, 1), outside = cone(1, -2, 0);
  out.pass = ptu.cone == Cone::PTU_only && ptu.p_eigenvalues.back() >= 0 &&
             ptu.k_eigenvalues.back() < 0 && cp.cone == Cone::CPTU && outside.cone == Cone::Outside;
  out.detail = std::string("diag(1,1,-1/2) ") + qubit::to_string(ptu.cone) + ", diag(1,1,1) " +
               qubit::to_string(cp.cone) + ", diag(1,-2,0) " + qubit::to_string(outside.cone);
  out.digest = out.detail;
  return out;
}

// 8 ─ Størmer decomposition of unital positive qubit maps.
Outcome ac8() {
  Outcome out;
  double worst = 0, worst_sum = 0;
  std::size_t cp_inputs = 0, cp_with_nu = 0, negative_weights = 0;
  for (std::size_t i = 0; i < 300; ++i) {
    Rng rng(seed_for(8, i));
    Superoperator s = Superoperator::zero(2);
    if (i % 3 == 0) {
      // Mixture of unitary conjugations: CP by construction.
      const std::size_t terms = 1 + rng.index(4);
      std::vector<double> w(terms);
      double total = 0;
      for (auto& x : w) total += (x = rng.uniform(0.05, 1));
      for (std::size_t k = 0; k < terms; ++k)
        s += Superoperator::conjugation(random_unitary(rng, 2)) * (w[k] / total);
    } else {
      // Bloch block R₁ diag(λ) R₂ with |λ_i| ≤ 1: the general unital positive map.
      RMatrix d(3, 3);
      for (std::size_t k = 0; k < 3; ++k) d(k, k) = rng.uniform(-1, 1);
      const RMatrix t = qubit::bloch_rotation(random_unitary(rng, 2)) * d *
                        qubit::bloch_rotation(random_unitary(rng, 2));
      RMatrix m(4, 4);
      m(0, 0) = 1;
      for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b) m(a + 1, b + 1) = t(a, b);
      s = qubit::from_matrix_rep(m);
    }
    const auto dec = qubit::stormer_decompose(s);
    worst = std::max(worst, max_abs(dec.reconstruct().mat() - s.mat()));
    double sum = 0;
    for (const auto* part : {&dec.mu, &dec.nu})
      for (const auto& t : *part) {
        sum += t.weight;
        negative_weights += t.weight < 0;
      }
    worst_sum = std::max(worst_sum, std::abs(sum - 1));
    if (is_completely_positive(s, 1e-9)) {
      ++cp_inputs;
      cp_with_nu += !dec.nu.empty();
    }
    out.digest += std::to_string(dec.mu.size()) + std::to_string(dec.nu.size());
  }
  out.pass = worst <= 1e-9 && worst_sum <= 1e-9 && negative_weights == 0 && cp_with_nu == 0;
  out.detail = "300 maps, reconstruction error " + fmt(worst) + ", weight-sum error " + fmt(worst_sum) +
               ", " + std::to_string(cp_inputs) + " CP inputs with " + std::to_string(cp_with_nu) +
               " non-empty co-CP parts";
  return out;
}

// 9 ─ Birkhoff decomposition.
Outcome ac9() {
  Outcome out;
  double worst = 0;
  std::size_t too_long = 0, majorization_failures = 0;
  for (std::size_t i = 0; i < 200; ++i) {
    Rng rng(seed_for(9, i));
    const std::size_t d = 1 + rng.index(6);
    RMatrix b(d, d);
    if (i % 4 == 0) {
      // Sparse: a random mixture of a few permutations.
      const std::size_t terms = 1 + rng.index(d + 1);
      double total = 0;
      std::vector<double> w(terms);
      for (auto& x : w) total += (x = rng.uniform(0.05, 1));
      for (std::size_t k = 0; k < terms; ++k) {
        Permutation perm(d);
        for (std::size_t r = 0; r < d; ++r) perm[r] = r;
        for (std::size_t r = d; r > 1; --r) std::swap(perm[r - 1], perm[rng.index(r)]);
        b += permutation_matrix(perm) * (w[k] / total);
      }
    } else if (i % 4 == 2) {
      // Sinkhorn balancing of a strictly positive matrix.
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) b(r, c) = rng.uniform(0.01, 1);
      for (int it = 0; it < 2000; ++it) {
        for (std::size_t r = 0; r < d; ++r) {
          double s = 0;
          for (std::size_t c = 0; c < d; ++c) s += b(r, c);
          for (std::size_t c = 0; c < d; ++c) b(r, c) /= s;
        }
        for (std::size_t c = 0; c < d; ++c) {
          double s = 0;
          for (std::size_t r = 0; r < d; ++r) s += b(r, c);
          for (std::size_t r = 0; r < d; ++r) b(r, c) /= s;
        }
      }
    } else {
      // Transition matrix of a random unital channel between eigenbases.
      const auto phi = exp_superop(compile(test::random_generator(rng, d, true)), rng.uniform(0.05, 2));
      b = extract_bistochastic(phi, validate_density(random_density(rng, d, d))).entries();
    }
    const auto bm = BistochasticMatrix::from(b);
    const auto dec = birkhoff_decompose(bm);
    worst = std::max(worst, max_abs(dec.reconstruct(d) - bm.entries()));
    too_long += dec.terms.size() > d * d - 2 * d + 2;
    const auto x = eigenvalue_vector(validate_density(random_density(rng, d)));
    const auto y = EigenvalueVector::from_values(bm.apply(x.probs()));
    majorization_failures += !majorizes(x, y);
    out.digest += std::to_string(dec.terms.size()) + ",";
  }
  out.pass = worst <= 1e-9 && too_long == 0 && majorization_failures == 0;
  out.detail = "200 matrices, reconstruction error " + fmt(worst) + ", " + std::to_string(too_long) +
               " over the term bound, " + std::to_string(majorization_failures) + " majorization failures";
  return out;
}

// 10 ─ Trace-norm contraction and p-norm growth of ρ* under non-unital flow.
Outcome ac10() {
  Outcome out;
  double worst_excess = -kInf;
  std::size_t nonunital = 0, grows = 0;
  const auto grid = uniform_grid(2.0, 21);
  for (std::size_t i = 0; i < 60; ++i) {
    Rng rng(seed_for(10, i));
    const std::size_t d = 2 + i % 3;
    const bool unital = i % 2 == 0;
    const auto l = compile(test::random_generator(rng, d, unital));
    for (std::size_t k = 1; k < grid.size(); k += 4) {
      const auto phi = exp_superop(l, grid[k]);
      for (int rep = 0; rep < 3; ++rep) {
        const CMatrix a = random_density(rng, d), b = random_density(rng, d);
        const double before = schatten_norm(a - b, 1);
        const double after = schatten_norm(phi.apply(a) - phi.apply(b), 1);
        worst_excess = std::max(worst_excess, after - before);
      }
    }
    if (unital) continue;
    ++nonunital;
    const auto mms = DensityOperator::maximally_mixed(d);
    bool two = false, inf = false;
    for (std::size_t k = 1; k < grid.size(); ++k) {
      const CMatrix m = evolve(l, mms, grid[k]).mat();
      two = two || schatten_norm(m, 2) > schatten_norm(mms.mat(), 2) + 1e-12;
      inf = inf || schatten_norm(m, kInf) > schatten_norm(mms.mat(), kInf) + 1e-12;
    }
    grows += two && inf;
    out.digest += two && inf ? '1' : '0';
  }
  out.pass = worst_excess <= 1e-9 && grows == nonunital;
  out.detail = "worst trace-distance increase " + fmt(worst_excess) + ", p-norm growth in " +
               std::to_string(grows) + "/" + std::to_string(nonunital) + " non-unital cases";
  return out;
}

using Suite = std::function<Outcome()>;

// 11 ─ Same root seed, same verdicts; also across thread counts. CLI
// artifacts are produced by the same functions the executable calls.
Outcome ac11(const std::vector<Suite>& suites, const std::vector<std::string>& first) {
  Outcome out;
  std::size_t mismatches = 0;
  const int threads = omp_get_max_threads();
  omp_set_num_threads(threads > 1 ? 1 : 3);
  for (std::size_t k = 0; k < suites.size(); ++k) mismatches += suites[k]().digest != first[k];
  omp_set_num_threads(threads);

  std::size_t artifact_mismatches = 0;
  app::EvolveOptions eo;
  eo.t_max = 3;
  eo.steps = 31;
  eo.entropies = standard_entropy_set();
  eo.state = "random:7";
  app::ClassifyFlags cf;
  cf.seed = 5;
  const std::vector<app::json> configs = {
      {{"named_example", "example4"}, {"parameters", {{"gamma1", 2}, {"gamma2", 1}}}},
      {{"named_example", "example5"}, {"parameters", {{"projection", "luders"}, {"dimension", 3}, {"seed", 2}}}},
      {{"named_example", "example1"}, {"parameters", {{"lambda", 1}, {"dimension", 3}}}},
  };
  for (const auto& doc : configs) {
    const auto cfg = app::load_config(doc);
    const std::string csv = app::run_evolve(cfg, eo), report = app::run_classify(cfg, cf).dump(2);
    omp_set_num_threads(threads > 1 ? 1 : 3);
    artifact_mismatches += app::run_evolve(cfg, eo) != csv;
    artifact_mismatches += app::run_classify(cfg, cf).dump(2) != report;
    omp_set_num_threads(threads);
  }
  out.pass = mismatches == 0 && artifact_mismatches == 0;
  out.detail = std::to_string(suites.size() - mismatches) + "/" + std::to_string(suites.size()) +
               " suites reproduced, " + std::to_string(artifact_mismatches) + " differing CLI artifacts";
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Suite>> named = {
      {"unitality equivalence suite", ac1},
      {"non-unital entropy witness", ac2},
      {"raising/lowering asymptotics", ac3},
      {"Poisson twirl oracle", ac4},
      {"projection semigroup oracle", ac5},
      {"qubit criterion agreement", ac6},
      {"qubit cone points", ac7},
      {"Stormer reconstruction", ac8},
      {"Birkhoff suite", ac9},
      {"contraction properties", ac10},
  };
  std::vector<Suite> suites;
  std::vector<std::string> digests;
  int failures = 0;
  auto report = [&](std::size_t n, const std::string& title, const Outcome& o, double seconds) {
    std::printf("AC%-2zu %s  %s: %s (%.1fs)\n", n, o.pass ? "PASS" : "FAIL", title.c_str(), o.detail.c_str(),
                seconds);
    std::fflush(stdout);
    failures += !o.pass;
  };
  for (std::size_t k = 0; k < named.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = named[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("threw: ") + e.what();
    }
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    report(k + 1, named[k].first, o, dt.count());
    suites.push_back(named[k].second);
    digests.push_back(o.digest);
  }
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = ac11(suites, digests);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("threw: ") + e.what();
  }
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
  report(11, "determinism", o, dt.count());
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
