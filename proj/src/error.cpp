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

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::OutOfUnitInterval: return "OutOfUnitInterval";
    case ErrorKind::NotUnital: return "NotUnital";
    case ErrorKind::NegativeTime: return "NegativeTime";
    case ErrorKind::FamilyNotSubharmonic: return "FamilyNotSubharmonic";
    case ErrorKind::NotFixedPoint: return "NotFixedPoint";
    case ErrorKind::TheoremViolation: return "TheoremViolation";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::InternalError: return "InternalError";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::Usage: return "Usage";
  }
  return "Unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::TheoremViolation:
    case ErrorKind::FamilyNotSubharmonic:
      return 2;
    case ErrorKind::ConvergenceFailure:
    case ErrorKind::InternalError:
      return 3;
    default:
      return 1;
  }
}

}  // namespace qds
