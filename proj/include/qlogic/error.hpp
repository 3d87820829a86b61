// Copyright 2026 The qlogic Authors
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

#include <stdexcept>
#include <string>
#include <string_view>

namespace qlogic {

enum class ErrorKind {
    InvalidArgument,
    DimensionMismatch,
    NotHermitian,
    NotProjector,
    NotInAlgebra,
    NotPositive,
    NotNormalized,
    NotCommutative,
    NotOrthogonalFamily,
    PreconditionFailed,
    // Numerical failures: the inputs were valid but an iteration or a
    // tolerance-dependent classification did not settle.
    ClosureNotReached,
    CenterDiagonalizationFailed,
    ConvergenceFailed,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotProjector: return "NotProjector";
    case ErrorKind::NotInAlgebra: return "NotInAlgebra";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::NotCommutative: return "NotCommutative";
    case ErrorKind::NotOrthogonalFamily: return "NotOrthogonalFamily";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::ClosureNotReached: return "ClosureNotReached";
    case ErrorKind::CenterDiagonalizationFailed: return "CenterDiagonalizationFailed";
    case ErrorKind::ConvergenceFailed: return "ConvergenceFailed";
    }
    return "Unknown";
}

constexpr bool is_numerical_failure(ErrorKind kind) noexcept {
    return kind == ErrorKind::ClosureNotReached ||
           kind == ErrorKind::CenterDiagonalizationFailed ||
           kind == ErrorKind::ConvergenceFailed;
}

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace qlogic
