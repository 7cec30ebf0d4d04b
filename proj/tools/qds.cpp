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

// qds: classify quantum dynamical semigroup generators and trace entropies
// along their evolution.

#include <fstream>
#include <sstream>
#include <iostream>

#include <CLI11.hpp>

#include "qds/app.hpp"

namespace {

using qds::app::json;

std::vector<double> split_numbers(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string token;
  while (std::getline(ss, token, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw qds::Error(qds::ErrorCode::ConfigError, "not a number: '" + token + "'");
    }
  }
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    qds::app::write_atomic(out_path, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Quantum dynamical semigroups: generator classification and entropy traces"};
  cli.require_subcommand(1);

  std::string config;
  std::string out_path;

  auto* classify = cli.add_subcommand("classify", "Classify a generator, print a JSON report");
  qds::app::ClassifyFlags flags;
  classify->add_option("config", config, "generator config (JSON)")->required();
  classify->add_option("--samples", flags.samples, "random bases for d > 2")
      ->check(CLI::PositiveNumber);
  classify->add_option("--seed", flags.seed, "root seed");
  classify->add_option("--out", out_path, "write the report here");

  auto* evolve = cli.add_subcommand("evolve", "Entropy trace of exp(tL)ρ as CSV");
  qds::app::EvolveOptions eopts;
  std::string entropies = "vn";
  evolve->add_option("config", config, "generator config (JSON)")->required();
  evolve->add_option("--t-max", eopts.t_max, "final time")->required();
  evolve->add_option("--steps", eopts.steps, "grid points including t = 0")->required();
  evolve->add_option("--entropies", entropies, "comma list: vn,tsallis:Q,renyi:Q,np:P");
  evolve->add_option("--state", eopts.state, "mms | random:SEED | file:PATH");
  evolve->add_option("--out", out_path, "write the CSV here");

  auto* birkhoff = cli.add_subcommand("birkhoff", "Birkhoff decomposition of a bistochastic matrix");
  std::string matrix_path;
  birkhoff->add_option("matrix", matrix_path, "JSON nested array or {\"matrix\": ...}")->required();

  auto* cone = cli.add_subcommand("qubit-cone", "Place a qubit generator in the CPTU/PTU cones");
  cone->set_help_flag("--help", "Print this help message and exit");
  std::string h_csv = "0,0,0";
  std::string k_csv;
  cone->add_option("--h", h_csv, "Hamiltonian vector h1,h2,h3");
  cone->add_option("--K", k_csv, "K as 6 upper-triangle or 9 values")->required();

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? qds::app::kExitOk : qds::app::kExitConfig;
  }

  // Configuration problems exit with 2, numerical failures with 3.
  int stage_code = qds::app::kExitConfig;
  try {
    if (*classify) {
      const auto cfg = qds::app::load_config_file(config);
      stage_code = qds::app::kExitNumerical;
      emit(qds::app::run_classify(cfg, flags).dump(2) + "\n", out_path);
    } else if (*evolve) {
      const auto cfg = qds::app::load_config_file(config);
      eopts.entropies = qds::app::parse_entropy_list(entropies);
      stage_code = qds::app::kExitNumerical;
      emit(qds::app::run_evolve(cfg, eopts), out_path);
    } else if (*birkhoff) {
      std::ifstream in(matrix_path);
      if (!in) throw qds::Error(qds::ErrorCode::ConfigError, "cannot open " + matrix_path);
      json doc;
      try {
        doc = json::parse(in);
      } catch (const json::exception& e) {
        throw qds::Error(qds::ErrorCode::ConfigError, e.what());
      }
      std::cout << qds::app::run_birkhoff(doc).dump(2) << "\n";
    } else if (*cone) {
      const auto h = split_numbers(h_csv);
      const auto k = split_numbers(k_csv);
      std::cout << qds::app::run_qubit_cone(h, k).dump(2) << "\n";
    }
  } catch (const qds::Error& e) {
    std::cerr << "qds: " << e.what() << "\n";
    if (e.code() == qds::ErrorCode::ConfigError) return qds::app::kExitConfig;
    return stage_code;
  } catch (const std::exception& e) {
    std::cerr << "qds: " << e.what() << "\n";
    return stage_code;
  }
  return qds::app::kExitOk;
}
