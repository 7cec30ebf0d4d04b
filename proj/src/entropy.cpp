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

#include "qds/entropy.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace qds {
namespace {

double power_sum(std::span<const double> probs, double q) {
  double acc = 0;
  for (double p : probs)
    if (p > 0) acc += std::pow(p, q);
  return acc;
}

std::string shortest(double x) {
  if (std::isinf(x)) return "inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void check_q(double q) {
  if (!(q > 0) || std::isinf(q)) throw Error(ErrorCode::InvalidQ, "q must be a positive real");
}

void check_p(double p) {
  if (!(p > 1)) throw Error(ErrorCode::InvalidP, "p must lie in (1, inf]");
}

std::vector<double> spectrum(const DensityOperator& rho) {
  const auto v = eigenvalue_vector(rho);
  return {v.probs().begin(), v.probs().end()};
}

}  // namespace

double von_neumann(std::span<const double> probs) {
  double s = 0;
  for (double p : probs)
    if (p > 0) s -= p * std::log(p);
  return s;
}

double tsallis(std::span<const double> probs, double q) {
  check_q(q);
  if (q == 1.0) return von_neumann(probs);
  return (power_sum(probs, q) - 1.0) / (1.0 - q);
}

double renyi(std::span<const double> probs, double q) {
  check_q(q);
  if (q == 1.0) return von_neumann(probs);
  return std::log(power_sum(probs, q)) / (1.0 - q);
}

double schatten_defect(std::span<const double> probs, double p) {
  check_p(p);
  if (std::isinf(p)) {
    double m = 0;
    for (double x : probs) m = std::max(m, x);
    return 1.0 - m;
  }
  // ‖·‖_p of a probability vector, scaled by its maximum to stay finite.
  double m = 0;
  for (double x : probs) m = std::max(m, x);
  if (m == 0) return 1.0;
  double acc = 0;
  for (double x : probs)
    if (x > 0) acc += std::pow(x / m, p);
  return 1.0 - m * std::pow(acc, 1.0 / p);
}

double von_neumann(const DensityOperator& rho) { return von_neumann(spectrum(rho)); }
double tsallis(const DensityOperator& rho, double q) { return tsallis(spectrum(rho), q); }
double renyi(const DensityOperator& rho, double q) { return renyi(spectrum(rho), q); }
double schatten_defect(const DensityOperator& rho, double p) {
  return schatten_defect(spectrum(rho), p);
}

GenericEntropy::GenericEntropy(std::function<double(std::span<const double>)> outer,
                               Monotonicity direction, std::vector<InnerFunction> inner)
    : outer_(std::move(outer)), direction_(direction), inner_(std::move(inner)) {
  if (!outer_) throw Error(ErrorCode::InconsistentSpec, "missing outer function");
  if (inner_.empty()) throw Error(ErrorCode::InconsistentSpec, "no inner functions");
  const Curvature required = direction_ == Monotonicity::StrictlyIncreasing
                                 ? Curvature::StrictlyConcave
                                 : Curvature::StrictlyConvex;
  constexpr int kGrid = 64;
  for (const auto& f : inner_) {
    if (!f.g) throw Error(ErrorCode::InconsistentSpec, "missing inner function");
    if (f.curvature != required)
      throw Error(ErrorCode::InconsistentSpec,
                  "inner curvature does not match the outer monotonicity direction");
    std::vector<double> vals(kGrid + 1);
    for (int i = 0; i <= kGrid; ++i) {
      vals[i] = f.g(static_cast<double>(i) / kGrid);
      if (!std::isfinite(vals[i]))
        throw Error(ErrorCode::InconsistentSpec, "inner function is not finite on [0, 1]");
    }
    // Midpoint test on the grid against the declared curvature.
    for (int i = 1; i < kGrid; ++i) {
      const double second = vals[i - 1] + vals[i + 1] - 2.0 * vals[i];
      const double slack = 1e-12 * (1.0 + std::abs(vals[i]));
      if ((f.curvature == Curvature::StrictlyConvex && second < -slack) ||
          (f.curvature == Curvature::StrictlyConcave && second > slack))
        throw Error(ErrorCode::InconsistentSpec, "inner function contradicts declared curvature");
    }
  }
}

double GenericEntropy::operator()(std::span<const double> probs) const {
  std::vector<double> traces(inner_.size(), 0.0);
  for (std::size_t j = 0; j < inner_.size(); ++j)
    for (double p : probs) traces[j] += inner_[j].g(p);
  return outer_(traces);
}

double generic_entropy(const DensityOperator& rho, const GenericEntropy& spec) {
  return spec(spectrum(rho));
}

EntropySpec EntropySpec::tsallis(double q) {
  check_q(q);
  return EntropySpec(TsallisKind{q});
}

EntropySpec EntropySpec::renyi(double q) {
  check_q(q);
  return EntropySpec(RenyiKind{q});
}

EntropySpec EntropySpec::schatten_defect(double p) {
  check_p(p);
  return EntropySpec(SchattenDefectKind{p});
}

EntropySpec EntropySpec::parse(const std::string& token) {
  const auto colon = token.find(':');
  const std::string name = token.substr(0, colon);
  if (name == "vn" || name == "S") {
    if (colon != std::string::npos)
      throw Error(ErrorCode::InvalidArgument, "vn takes no parameter");
    return von_neumann();
  }
  if (colon == std::string::npos)
    throw Error(ErrorCode::InvalidArgument, "entropy '" + token + "' needs a parameter");
  const std::string arg = token.substr(colon + 1);
  double value = 0;
  if (arg == "inf") {
    value = kInf;
  } else {
    auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), value);
    if (ec != std::errc() || ptr != arg.data() + arg.size())
      throw Error(ErrorCode::InvalidArgument, "bad entropy parameter '" + arg + "'");
  }
  if (name == "tsallis") return tsallis(value);
  if (name == "renyi") return renyi(value);
  if (name == "np") return schatten_defect(value);
  throw Error(ErrorCode::InvalidArgument, "unknown entropy '" + name + "'");
}

double EntropySpec::evaluate(std::span<const double> probs) const {
  return std::visit(
      [&](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, VonNeumannKind>) return qds::von_neumann(probs);
        if constexpr (std::is_same_v<K, TsallisKind>) return qds::tsallis(probs, k.q);
        if constexpr (std::is_same_v<K, RenyiKind>) return qds::renyi(probs, k.q);
        if constexpr (std::is_same_v<K, SchattenDefectKind>) return qds::schatten_defect(probs, k.p);
        if constexpr (std::is_same_v<K, GenericEntropy>) return k(probs);
      },
      kind_);
}

double EntropySpec::evaluate(const DensityOperator& rho) const { return evaluate(spectrum(rho)); }

std::string EntropySpec::label() const {
  return std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, VonNeumannKind>) return "S";
        if constexpr (std::is_same_v<K, TsallisKind>) return "T_" + shortest(k.q);
        if constexpr (std::is_same_v<K, RenyiKind>) return "R_" + shortest(k.q);
        if constexpr (std::is_same_v<K, SchattenDefectKind>) return "N_" + shortest(k.p);
        if constexpr (std::is_same_v<K, GenericEntropy>) return "G";
      },
      kind_);
}

std::vector<EntropySpec> standard_entropy_set() {
  std::vector<EntropySpec> out{EntropySpec::von_neumann()};
  for (double q : {0.5, 1.0, 2.0, 3.0}) out.push_back(EntropySpec::tsallis(q));
  for (double q : {0.5, 1.0, 2.0, 3.0}) out.push_back(EntropySpec::renyi(q));
  for (double p : {1.5, 2.0, 4.0, kInf}) out.push_back(EntropySpec::schatten_defect(p));
  return out;
}

}  // namespace qds
