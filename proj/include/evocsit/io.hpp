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

// JSON profile files and report formatting shared by the command-line tool.

#ifndef EVOCSIT_IO_HPP
#define EVOCSIT_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "evocsit/quality.hpp"
#include "evocsit/region.hpp"
#include "evocsit/scheme.hpp"

namespace evocsit {

using json = nlohmann::ordered_json;

inline constexpr int kReportFormatVersion = 1;

// {"T": n, "alpha1": [...], "alpha2": [...]?, "beta": b} or "beta1"/"beta2".
QualityProfile profile_from_json(const json &j);
json profile_to_json(const QualityProfile &p);
json read_json_file(const std::string &path);
QualityProfile load_profile(const std::string &path);

// Scheme selection and options: {"kind": "x3", "profile": {...}, "S": .., "T1": ..,
// "delta": .., "omega": .., "assignment": "split", "round": false}.
SchemeOptions scheme_options_from_json(const json &j);
json scheme_options_to_json(const SchemeConfig &cfg, const SchemeOptions &requested);

// Numbers are rounded to 12 significant digits; non-finite values become null.
json num(double v);
std::string fmt12(double v);
json point_json(DofPoint p);

// "0.2,0.4" -> {0.2, 0.4}
std::vector<double> parse_list(const std::string &text);

} // namespace evocsit

#endif
