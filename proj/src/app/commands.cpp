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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "qds/app.hpp"
#include "qds/gkls.hpp"
#include "qds/random.hpp"

namespace qds::app {
namespace {

json matrix_json(const RMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

DensityOperator initial_state(const std::string& spec, std::size_t d) {
  if (spec == "mms") return DensityOperator::maximally_mixed(d);
  if (spec.rfind("random:", 0) == 0) {
    const std::string arg = spec.substr(7);
    std::uint64_t seed = 0;
    auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), seed);
    if (ec != std::errc() || ptr != arg.data() + arg.size() || arg.empty())
      throw Error(ErrorCode::ConfigError, "bad seed in --state " + spec);
    Rng rng(seed);
    return validate_density(random_density(rng, d));
  }
  if (spec.rfind("file:", 0) == 0) {
    const std::string path = spec.substr(5);
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ConfigError, "cannot open state file " + path);
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::ConfigError, path + ": " + e.what());
    }
    const CMatrix m = parse_complex_matrix(doc, "state");
    if (m.rows() != d || m.cols() != d)
      throw Error(ErrorCode::DimensionMismatch, "state does not match the generator dimension");
    return validate_density(m);
  }
  throw Error(ErrorCode::ConfigError, "--state must be mms, random:SEED or file:PATH");
}

json cone_json(const qubit::QubitGeneratorParams& params) {
  const auto v = qubit::classify_cone(params);
  return {{"cone", qubit::to_string(v.cone)},
          {"k_eigenvalues", v.k_eigenvalues},
          {"p_eigenvalues", v.p_eigenvalues},
          {"minors_agree", v.minors_agree}};
}

bool is_bool_or_null(const json& j) { return j.is_boolean() || j.is_null(); }

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

json run_classify(const LoadedConfig& cfg, const ClassifyFlags& flags) {
  const Superoperator& l = cfg.generator;
  const std::size_t d = l.dim();
  json report;
  report["dimension"] = d;
  report["source"] = cfg.source;
  report["unital"] = is_unital_generator(l);
  report["gkls"] = is_gkls_generator(l);

  const auto pos = check_positive_generator(l, flags.samples, flags.seed);
  report["positive_sampled"] = pos.verdict;
  report["positivity_exact"] = pos.exact;

  json diag;
  diag["unitality_defect"] = unitality_defect(l);
  diag["worst_offdiagonal"] = pos.worst_offdiagonal;
  diag["bases_checked"] = pos.bases_checked;
  diag["samples"] = flags.samples;
  diag["seed"] = flags.seed;

  ClassifyOptions opts;
  opts.t_grid = uniform_grid(5.0, 50);
  opts.seed = flags.seed;
  diag["t_grid"] = {{"t_max", 5.0}, {"points", 50}};
  report["witness"] = nullptr;
  try {
    const auto t1 = classify_theorem1(l, opts);
    report["theorem1_all_agree"] = t1.all_agree;
    diag["majorization_ok"] = t1.majorization_ok;
    diag["kraus_jointly_normal"] = t1.kraus_jointly_normal;
    json entropies = json::object();
    for (const auto& e : t1.entropies_monotone) entropies[e.label] = e.monotone;
    diag["entropies_monotone"] = std::move(entropies);
    if (t1.witness) {
      const auto& w = *t1.witness;
      report["witness"] = {{"entropy", w.entropy},     {"state_index", w.state_index},
                           {"initial_state", w.state_index == 0 ? "mms" : "random"},
                           {"t_from", w.t_from},       {"t_to", w.t_to},
                           {"value_from", w.value_from}, {"value_to", w.value_to}};
    }
  } catch (const Error& e) {
    report["theorem1_all_agree"] = nullptr;
    diag["theorem1_error"] = e.what();
  }

  report["qubit_cone"] = nullptr;
  if (d == 2) {
    try {
      const auto params =
          cfg.qubit_params ? *cfg.qubit_params : qubit::params_from_generator(l);
      const auto cone = cone_json(params);
      report["qubit_cone"] = cone["cone"];
      diag["qubit"] = cone;
    } catch (const Error& e) {
      report["qubit_cone"] = "not_unital";
      diag["qubit_error"] = e.what();
    }
  }
  report["diagnostics"] = std::move(diag);
  return report;
}

bool validate_report(const json& r, std::string* why) {
  auto fail = [&](const std::string& field) {
    if (why) *why = field;
    return false;
  };
  if (!r.is_object()) return fail("<root>");
  for (const char* key : {"unital", "gkls", "positive_sampled", "positivity_exact"})
    if (!r.contains(key) || !r.at(key).is_boolean()) return fail(key);
  if (!r.contains("dimension") || !r.at("dimension").is_number_unsigned()) return fail("dimension");
  if (!r.contains("source") || !r.at("source").is_string()) return fail("source");
  if (!r.contains("theorem1_all_agree") || !is_bool_or_null(r.at("theorem1_all_agree")))
    return fail("theorem1_all_agree");
  if (!r.contains("qubit_cone")) return fail("qubit_cone");
  const json& cone = r.at("qubit_cone");
  if (r.at("dimension") == 2) {
    static const std::vector<std::string> allowed{"CPTU", "PTU_only", "outside", "not_unital"};
    if (!cone.is_string() ||
        std::find(allowed.begin(), allowed.end(), cone.get<std::string>()) == allowed.end())
      return fail("qubit_cone");
  } else if (!cone.is_null()) {
    return fail("qubit_cone");
  }
  if (!r.contains("diagnostics") || !r.at("diagnostics").is_object()) return fail("diagnostics");
  const json& diag = r.at("diagnostics");
  for (const char* key : {"unitality_defect", "worst_offdiagonal"})
    if (!diag.contains(key) || !diag.at(key).is_number()) return fail(std::string("diagnostics.") + key);
  if (!r.contains("witness")) return fail("witness");
  const json& w = r.at("witness");
  if (!w.is_null()) {
    if (!w.is_object()) return fail("witness");
    for (const char* key : {"t_from", "t_to", "value_from", "value_to"})
      if (!w.contains(key) || !w.at(key).is_number()) return fail(std::string("witness.") + key);
    if (!w.contains("entropy") || !w.at("entropy").is_string()) return fail("witness.entropy");
  }
  return true;
}

std::vector<EntropySpec> parse_entropy_list(const std::string& csv) {
  std::vector<EntropySpec> out;
  std::stringstream ss(csv);
  std::string token;
  while (std::getline(ss, token, ','))
    if (!token.empty()) out.push_back(EntropySpec::parse(token));
  if (out.empty()) throw Error(ErrorCode::ConfigError, "no entropies requested");
  return out;
}

std::string run_evolve(const LoadedConfig& cfg, const EvolveOptions& opts) {
  if (!(opts.t_max > 0)) throw Error(ErrorCode::ConfigError, "--t-max must be positive");
  if (opts.steps < 2) throw Error(ErrorCode::ConfigError, "--steps must be at least 2");
  const std::size_t d = cfg.generator.dim();
  const DensityOperator rho0 = initial_state(opts.state, d);
  const auto grid = uniform_grid(opts.t_max, opts.steps);

  std::ostringstream out;
  out << 't';
  for (const auto& e : opts.entropies) out << ',' << e.label();
  out << ",purity,trace_norm\n";
  for (double t : grid) {
    const DensityOperator rho = evolve(cfg.generator, rho0, t);
    out << format_number(t);
    for (const auto& e : opts.entropies) out << ',' << format_number(e.evaluate(rho));
    const auto spectrum = eigenvalue_vector(rho);
    double purity = 0;
    for (double p : spectrum.probs()) purity += p * p;
    out << ',' << format_number(purity) << ',' << format_number(schatten_norm(rho.mat(), 1.0))
        << '\n';
  }
  return out.str();
}

json run_birkhoff(const json& doc) {
  const json& node = doc.is_object() && doc.contains("matrix") ? doc.at("matrix") : doc;
  if (!node.is_array() || node.empty())
    throw Error(ErrorCode::ConfigError, "birkhoff input must be a nested array");
  const std::size_t d = node.size();
  RMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    if (!node[i].is_array() || node[i].size() != d)
      throw Error(ErrorCode::ConfigError, "birkhoff input must be square");
    for (std::size_t j = 0; j < d; ++j) {
      if (!node[i][j].is_number()) throw Error(ErrorCode::ConfigError, "non-numeric entry");
      m(i, j) = node[i][j].get<double>();
    }
  }
  const auto b = BistochasticMatrix::from(m);
  const auto dec = birkhoff_decompose(b);
  json terms = json::array();
  for (const auto& t : dec.terms) {
    std::vector<std::size_t> perm;
    for (auto p : t.perm) perm.push_back(p + 1);
    terms.push_back({{"weight", t.weight}, {"permutation", perm}});
  }
  return {{"dimension", d},
          {"count", dec.terms.size()},
          {"terms", terms},
          {"reconstruction_error", max_abs(dec.reconstruct(d) - b.entries())}};
}

json run_qubit_cone(const std::vector<double>& h, const std::vector<double>& k) {
  if (h.size() != 3) throw Error(ErrorCode::ConfigError, "--h needs 3 values");
  RMatrix km(3, 3);
  if (k.size() == 6) {
    km = RMatrix{{k[0], k[1], k[2]}, {k[1], k[3], k[4]}, {k[2], k[4], k[5]}};
  } else if (k.size() == 9) {
    for (std::size_t i = 0; i < 9; ++i) km(i / 3, i % 3) = k[i];
  } else {
    throw Error(ErrorCode::ConfigError, "--K needs 6 (upper triangle) or 9 values");
  }
  qubit::QubitGeneratorParams params;
  try {
    params = qubit::QubitGeneratorParams({h[0], h[1], h[2]}, km);
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigError, e.what());
  }
  json out = cone_json(params);
  out["h"] = h;
  out["K"] = matrix_json(km);
  out["F"] = matrix_json(qubit::generator_block(params));
  out["positive_generator"] = qubit::is_positive_qubit_generator(qubit::generator_block(params));
  return out;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::ConfigError, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::ConfigError, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(ErrorCode::ConfigError, "cannot move output into " + path.string());
  }
}

}  // namespace qds::app
