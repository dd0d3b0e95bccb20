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

#include <stdexcept>
#include <string>
#include <string_view>

namespace qds {

enum class ErrorKind {
  NotHermitian,
  NotPSD,
  DimMismatch,
  OutOfUnitInterval,
  NotUnital,
  NegativeTime,
  FamilyNotSubharmonic,
  NotFixedPoint,
  TheoremViolation,
  ConvergenceFailure,
  InternalError,
  ParseError,
  ValidationError,
  Usage,
};

std::string_view to_string(ErrorKind kind);

// Process exit code associated with an error kind:
// 1 validation/parse, 2 property/theorem failure, 3 internal numerical failure.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qds
