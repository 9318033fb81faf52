// SPDX-License-Identifier: Apache-2.0
//
// evocsit - DoF regions and multi-phase scheme verification for the
// two-user MISO broadcast channel with evolving and asymmetric CSIT
// Copyright (C) 2026 The evocsit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef EVOCSIT_ERROR_HPP
#define EVOCSIT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace evocsit {

enum class ErrorCode {
    MalformedInput,
    DomainError,
    WrongCase,
    InvalidDelta,
    DegenerateParameters,
    Infeasible,
    OutOfRange,
    InsufficientGrid,
    BudgetExceeded,
    ConstructionFailure,
};

std::string_view to_string(ErrorCode code);

// Every precondition violation in the library is reported through this type.
class Error : public std::invalid_argument {
  public:
    Error(ErrorCode code, const std::string &message)
        : std::invalid_argument(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

} // namespace evocsit

#endif
