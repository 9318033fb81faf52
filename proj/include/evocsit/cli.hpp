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

#ifndef EVOCSIT_CLI_HPP
#define EVOCSIT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace evocsit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitContractFailure = 1;
inline constexpr int kExitConfigError = 64;

// Runs one command line (without the program name). Reports go to the files
// named by --report/--csv, or to `out` when no --report is given.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace evocsit

#endif
