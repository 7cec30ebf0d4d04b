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

#include <fstream>
#include <sstream>

#include "qds/app.hpp"
#include "qds/gkls.hpp"
#include "qds/random.hpp"
#include "qds/twirling.hpp"

namespace qds::app {
namespace {

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorCode::ConfigError, msg); }

const json& require(const json& node, const char* key, const std::string& ctx) {
  if (!node.is_object() || !node.contains(key))
    config_error(ctx + ": missing \"" + key + "\"");
  return node.at(key);
}

double get_number(const json& node, const char* key, double fallback) {
  if (!node.contains(key)) return fallback;
  const json& v = node.at(key);
  if (!v.is_number()) config_error(std::string("\"") + key + "\" must be a number");
  return v.get<double>();
}

std::size_t get_size(const json& node, const char* key, std::size_t fallback) {
  if (!node.contains(key)) return fallback;
  const json& v = node.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) config_error(std::string("\"") + key + "\" must be a non-negative integer");
  return v.get<std::size_t>();
}

std::vector<double> get_numbers(const json& node, const std::string& what) {
  if (!node.is_array()) config_error(what + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : node) {
    if (!x.is_number()) config_error(what + " must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

RMatrix real_matrix(const json& node, const std::string& what) {
  if (!node.is_array() || node.empty()) config_error(what + " must be a non-empty nested array");
  const std::size_t rows = node.size();
  const std::size_t cols = node.front().is_array() ? node.front().size() : 0;
  if (cols == 0) config_error(what + " must be a non-empty nested array");
  RMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto row = get_numbers(node[i], what + " row");
    if (row.size() != cols) config_error(what + " is ragged");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = row[j];
  }
  return m;
}

Superoperator example1(const json& p) {
  const double lambda = get_number(p, "lambda", 1.0);
  CMatrix u;
  if (p.contains("unitary")) {
    u = parse_complex_matrix(p.at("unitary"), "unitary");
  } else {
    Rng rng(static_cast<std::uint64_t>(get_size(p, "seed", 1)));
    u = random_unitary(rng, get_size(p, "dimension", 2));
  }
  return poisson_generator(lambda, u);
}

Superoperator example2(const json& p) {
  const std::size_t d = get_size(p, "dimension", 2);
  const auto rates = p.contains("rates") ? get_numbers(p.at("rates"), "rates") : std::vector{1.0};
  const auto basis = traceless_hermitian_basis(d);
  if (rates.size() > basis.size()) config_error("example2: at most d²−1 rates");
  std::vector<SelfadjointNoise> noise;
  for (std::size_t k = 0; k < rates.size(); ++k) noise.push_back({rates[k], basis[k]});
  const RandomUnitarySpec trivial({{1.0, CMatrix::identity(d)}});
  return twirl_generator(0.0, trivial, noise, CMatrix(d, d));
}

Superoperator example4(const json& p) {
  const double g1 = get_number(p, "gamma1", 1.0);
  const double g2 = get_number(p, "gamma2", 1.0);
  const CMatrix raise{{0, 1}, {0, 0}};
  const CMatrix lower{{0, 0}, {1, 0}};
  return compile(GklsGenerator(CMatrix(2, 2), {{g1, lower}, {g2, raise}}));
}

Superoperator example5(const json& p) {
  const double gamma = get_number(p, "gamma", 1.0);
  const std::string kind = p.value("projection", std::string("luders"));
  const std::size_t d = get_size(p, "dimension", 2);
  if (kind == "luders") {
    CMatrix basis = CMatrix::identity(d);
    if (p.contains("seed")) {
      Rng rng(static_cast<std::uint64_t>(get_size(p, "seed", 0)));
      basis = random_unitary(rng, d);
    }
    return projection_generator(luders_projection(basis), gamma);
  }
  if (kind == "replacement") {
    CMatrix rho0;
    if (p.contains("rho0")) {
      rho0 = parse_complex_matrix(p.at("rho0"), "rho0");
    } else {
      std::vector<double> diag{0.75, 0.25};
      if (p.contains("rho0_diag")) diag = get_numbers(p.at("rho0_diag"), "rho0_diag");
      rho0 = CMatrix(diag.size(), diag.size());
      for (std::size_t i = 0; i < diag.size(); ++i) rho0(i, i) = diag[i];
    }
    return projection_generator(replacement_projection(rho0), gamma);
  }
  config_error("example5: projection must be \"luders\" or \"replacement\"");
}

qubit::QubitGeneratorParams example6(const json& p) {
  const auto g = p.contains("gammas") ? get_numbers(p.at("gammas"), "gammas")
                                      : std::vector<double>{1.0, 1.0, -0.5};
  const auto h = p.contains("h") ? get_numbers(p.at("h"), "h") : std::vector<double>{0, 0, 0};
  if (g.size() != 3 || h.size() != 3) config_error("example6: gammas and h need 3 entries");
  RMatrix k(3, 3);
  for (std::size_t i = 0; i < 3; ++i) k(i, i) = g[i];
  return qubit::QubitGeneratorParams({h[0], h[1], h[2]}, k);
}

}  // namespace

CMatrix parse_complex_matrix(const json& node, const std::string& what) {
  if (!node.is_object()) config_error(what + " must be an object with \"re\" (and \"im\")");
  const RMatrix re = real_matrix(require(node, "re", what), what + ".re");
  CMatrix out = to_complex(re);
  if (node.contains("im")) {
    const RMatrix im = real_matrix(node.at("im"), what + ".im");
    if (im.rows() != re.rows() || im.cols() != re.cols())
      throw Error(ErrorCode::DimensionMismatch, what + ": re and im shapes differ");
    for (std::size_t i = 0; i < re.rows(); ++i)
      for (std::size_t j = 0; j < re.cols(); ++j) out(i, j) += Complex{0.0, im(i, j)};
  }
  return out;
}

namespace {

LoadedConfig load_unchecked(const json& doc) {
  if (!doc.is_object()) config_error("config must be a JSON object");
  const bool explicit_form = doc.contains("hamiltonian") || doc.contains("noise");
  const bool qubit_form = doc.contains("qubit_params");
  const bool named_form = doc.contains("named_example");
  if (int(explicit_form) + int(qubit_form) + int(named_form) != 1)
    config_error("config needs exactly one of matrices, qubit_params, named_example");

  LoadedConfig cfg;
  if (explicit_form) {
    const CMatrix h = parse_complex_matrix(require(doc, "hamiltonian", "config"), "hamiltonian");
    const std::size_t d = get_size(doc, "dimension", h.rows());
    if (h.rows() != d || h.cols() != d)
      throw Error(ErrorCode::DimensionMismatch, "hamiltonian does not match dimension");
    std::vector<NoiseTerm> noise;
    if (doc.contains("noise")) {
      if (!doc.at("noise").is_array()) config_error("noise must be an array");
      for (const auto& term : doc.at("noise")) {
        const double rate = get_number(term, "rate", 1.0);
        CMatrix op = parse_complex_matrix(require(term, "matrix", "noise term"), "noise matrix");
        if (op.rows() != d || op.cols() != d)
          throw Error(ErrorCode::DimensionMismatch, "noise matrix does not match dimension");
        noise.push_back({rate, std::move(op)});
      }
    }
    cfg.source = "matrices";
    cfg.generator = compile(GklsGenerator::with_trace_removed(h, std::move(noise)));
  } else if (qubit_form) {
    const json& q = doc.at("qubit_params");
    const auto h = get_numbers(require(q, "h", "qubit_params"), "h");
    if (h.size() != 3) config_error("qubit_params.h needs 3 entries");
    const RMatrix k = real_matrix(require(q, "K", "qubit_params"), "K");
    if (k.rows() != 3 || k.cols() != 3) config_error("qubit_params.K must be 3×3");
    cfg.source = "qubit_params";
    cfg.qubit_params = qubit::QubitGeneratorParams({h[0], h[1], h[2]}, k);
    cfg.generator = qubit::build_qubit_generator(*cfg.qubit_params).generator;
  } else {
    if (!doc.at("named_example").is_string()) config_error("named_example must be a string");
    const std::string name = doc.at("named_example").get<std::string>();
    const json params = doc.value("parameters", json::object());
    if (!params.is_object()) config_error("parameters must be an object");
    cfg.source = "named_example:" + name;
    if (name == "example1") {
      cfg.generator = example1(params);
    } else if (name == "example2") {
      cfg.generator = example2(params);
    } else if (name == "example4") {
      cfg.generator = example4(params);
    } else if (name == "example5") {
      cfg.generator = example5(params);
    } else if (name == "example6") {
      cfg.qubit_params = example6(params);
      cfg.generator = qubit::build_qubit_generator(*cfg.qubit_params).generator;
    } else {
      config_error("unknown named_example \"" + name + "\"");
    }
  }
  return cfg;
}

}  // namespace

LoadedConfig load_config(const json& doc) {
  try {
    return load_unchecked(doc);
  } catch (const json::exception& e) {
    config_error(e.what());
  }
}

LoadedConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    config_error(path.string() + ": " + e.what());
  }
  return load_config(doc);
}

}  // namespace qds::app
