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

// Command implementations behind the `qds` executable. Kept in a library so
// the tests can drive them without spawning processes.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qds/entropy.hpp"
#include "qds/qubit.hpp"
#include "qds/superop.hpp"

namespace qds::app {

using nlohmann::json;

/// Exit codes of the executable.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// A generator ready for analysis, plus where it came from.
struct LoadedConfig {
  std::string source;  ///< "matrices", "qubit_params" or "named_example:<name>"
  Superoperator generator;
  std::optional<qubit::QubitGeneratorParams> qubit_params;
};

/// Accepts exactly one of
///   {"dimension", "hamiltonian", "noise"}  explicit matrices,
///   {"qubit_params": {"h", "K"}},
///   {"named_example": name, "parameters": {...}}.
/// Complex matrices are {"re": [[...]], "im": [[...]]} ("im" optional).
/// Throws ConfigError on schema problems; numerical validation errors of
/// the underlying types propagate unchanged.
LoadedConfig load_config(const json& doc);
LoadedConfig load_config_file(const std::filesystem::path& path);

CMatrix parse_complex_matrix(const json& node, const std::string& what);

struct ClassifyFlags {
  std::size_t samples = 200;
  std::uint64_t seed = 1;
};

/// Report with keys unital, gkls, positive_sampled, positivity_exact,
/// theorem1_all_agree, qubit_cone (null when d ≠ 2), diagnostics, witness.
json run_classify(const LoadedConfig& cfg, const ClassifyFlags& flags);

/// Structural check of a classify report; on failure `why` names the field.
bool validate_report(const json& report, std::string* why = nullptr);

struct EvolveOptions {
  double t_max = 1.0;
  std::size_t steps = 11;  ///< grid points including t = 0
  std::vector<EntropySpec> entropies = {EntropySpec::von_neumann()};
  std::string state = "mms";  ///< mms | random:SEED | file:PATH
};

std::vector<EntropySpec> parse_entropy_list(const std::string& csv);

/// CSV text with columns t, one per entropy, purity, trace_norm.
std::string run_evolve(const LoadedConfig& cfg, const EvolveOptions& opts);

/// Input {"matrix": [[...]]} or a bare nested array. Permutations are
/// reported 1-based.
json run_birkhoff(const json& doc);

/// K given as 6 upper-triangle values (k11,k12,k13,k22,k23,k33) or all 9.
json run_qubit_cone(const std::vector<double>& h, const std::vector<double>& k);

/// Writes through a sibling temporary file and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Shortest round-trip decimal form.
std::string format_number(double x);

}  // namespace qds::app
