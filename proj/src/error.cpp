// Copyright 2026 The hhl-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hhl/error.hpp"

namespace hhl {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::NotPowerOfTwo: return "NotPowerOfTwo";
        case ErrorCode::NotUnitVector: return "NotUnitVector";
        case ErrorCode::Singular: return "Singular";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::IndefiniteSpectrum: return "IndefiniteSpectrum";
        case ErrorCode::InexactRatioNoOverride: return "InexactRatioNoOverride";
        case ErrorCode::RotationDomain: return "RotationDomain";
        case ErrorCode::ZeroSuccessProbability: return "ZeroSuccessProbability";
        case ErrorCode::ZeroSuccessCounts: return "ZeroSuccessCounts";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::NonUnitaryGate: return "NonUnitaryGate";
        case ErrorCode::EmptyList: return "EmptyList";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

}  // namespace hhl
