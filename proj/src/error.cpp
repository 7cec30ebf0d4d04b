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

#include "qds/error.hpp"

namespace qds {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::TraceNotOne: return "TraceNotOne";
    case ErrorCode::InvalidP: return "InvalidP";
    case ErrorCode::InvalidQ: return "InvalidQ";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotUnital: return "NotUnital";
    case ErrorCode::NotTracePreserving: return "NotTracePreserving";
    case ErrorCode::NotBistochastic: return "NotBistochastic";
    case ErrorCode::EvolutionLeftStateSpace: return "EvolutionLeftStateSpace";
    case ErrorCode::NotAdjointPreserving: return "NotAdjointPreserving";
    case ErrorCode::NonUniqueStationaryState: return "NonUniqueStationaryState";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::WeightsNotProbability: return "WeightsNotProbability";
    case ErrorCode::WeightsNotNormalized: return "WeightsNotNormalized";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::NotSelfadjoint: return "NotSelfadjoint";
    case ErrorCode::NotIdempotent: return "NotIdempotent";
    case ErrorCode::NotCPTP: return "NotCPTP";
    case ErrorCode::InconsistentSpec: return "InconsistentSpec";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace qds
