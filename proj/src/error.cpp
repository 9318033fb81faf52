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

#include "evocsit/error.hpp"

namespace evocsit {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::MalformedInput: return "malformed-input";
    case ErrorCode::DomainError: return "domain-error";
    case ErrorCode::WrongCase: return "wrong-case";
    case ErrorCode::InvalidDelta: return "invalid-delta";
    case ErrorCode::DegenerateParameters: return "degenerate-parameters";
    case ErrorCode::Infeasible: return "infeasible";
    case ErrorCode::OutOfRange: return "out-of-range";
    case ErrorCode::InsufficientGrid: return "insufficient-grid";
    case ErrorCode::BudgetExceeded: return "budget-exceeded";
    case ErrorCode::ConstructionFailure: return "construction-failure";
    }
    return "unknown";
}

} // namespace evocsit
