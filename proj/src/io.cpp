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

#include "evocsit/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "evocsit/error.hpp"

namespace evocsit {

namespace {

std::vector<double> number_list(const json &j, const char *key)
{
    if (!j.contains(key) || !j[key].is_array())
        throw Error(ErrorCode::MalformedInput, std::string("profile field '").append(key).append("' must be a list"));
    std::vector<double> v;
    for (const auto &x : j[key]) {
        if (!x.is_number())
            throw Error(ErrorCode::MalformedInput, std::string("profile field '").append(key).append("' must hold numbers"));
        v.push_back(x.get<double>());
    }
    return v;
}

double number(const json &j, const char *key)
{
    if (!j.contains(key) || !j[key].is_number())
        throw Error(ErrorCode::MalformedInput, std::string("field '").append(key).append("' must be a number"));
    return j[key].get<double>();
}

} // namespace

QualityProfile profile_from_json(const json &j)
{
    if (!j.is_object()) throw Error(ErrorCode::MalformedInput, "profile must be a JSON object");
    const auto a1 = number_list(j, "alpha1");
    const auto a2 = j.contains("alpha2") ? number_list(j, "alpha2") : a1;
    if (j.contains("T")) {
        if (!j["T"].is_number_integer() || j["T"].get<long long>() != static_cast<long long>(a1.size()))
            throw Error(ErrorCode::MalformedInput, "profile field 'T' must equal the length of alpha1");
    }
    if (j.contains("beta")) return QualityProfile(a1, a2, number(j, "beta"));
    if (j.contains("beta1") || j.contains("beta2")) return QualityProfile(a1, a2, number(j, "beta1"), number(j, "beta2"));
    throw Error(ErrorCode::MalformedInput, "profile needs 'beta' (or 'beta1' and 'beta2')");
}

json profile_to_json(const QualityProfile &p)
{
    json j;
    j["T"] = p.slots();
    j["alpha1"] = json::array();
    j["alpha2"] = json::array();
    // Inputs are echoed exactly so that a report's config re-runs bit for bit.
    for (double a : p.alpha1()) j["alpha1"].push_back(a);
    for (double a : p.alpha2()) j["alpha2"].push_back(a);
    if (p.beta(User::One) == p.beta(User::Two)) {
        j["beta"] = p.beta();
    } else {
        j["beta1"] = p.beta(User::One);
        j["beta2"] = p.beta(User::Two);
    }
    return j;
}

json read_json_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::MalformedInput, "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw Error(ErrorCode::MalformedInput, "'" + path + "' is not valid JSON: " + e.what());
    }
}

QualityProfile load_profile(const std::string &path) { return profile_from_json(read_json_file(path)); }

SchemeOptions scheme_options_from_json(const json &j)
{
    SchemeOptions o;
    try {
        if (j.contains("S")) o.S = j["S"].get<int>();
        if (j.contains("T1")) o.T1 = j["T1"].get<double>();
        if (j.contains("delta") && !j["delta"].is_null()) o.delta = j["delta"].get<double>();
        if (j.contains("omega") && !j["omega"].is_null()) o.omega = j["omega"].get<double>();
        if (j.contains("assignment") && !j["assignment"].is_null())
            o.assignment = common_assignment_from_string(j["assignment"].get<std::string>());
        if (j.contains("round")) o.round = j["round"].get<bool>();
    } catch (const json::exception &e) {
        throw Error(ErrorCode::MalformedInput, std::string("bad scheme option: ") + e.what());
    }
    return o;
}

json scheme_options_to_json(const SchemeConfig &cfg, const SchemeOptions &requested)
{
    json j;
    j["kind"] = to_string(cfg.kind);
    j["profile"] = profile_to_json(cfg.profile);
    j["S"] = requested.S;
    j["T1"] = requested.T1;
    j["delta"] = requested.delta ? json(*requested.delta) : json(nullptr);
    j["omega"] = requested.omega ? json(*requested.omega) : json(nullptr);
    j["assignment"] = requested.assignment ? json(to_string(*requested.assignment)) : json(nullptr);
    j["round"] = requested.round;
    return j;
}

std::string fmt12(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v == 0 ? 0.0 : v); // no "-0"
    return buf;
}

json num(double v)
{
    if (!std::isfinite(v)) return nullptr;
    return std::stod(fmt12(v));
}

json point_json(DofPoint p) { return json::array({num(p.d1), num(p.d2)}); }

std::vector<double> parse_list(const std::string &text)
{
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(item, &used));
            while (used < item.size() && item[used] == ' ') ++used;
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception &) {
            throw Error(ErrorCode::MalformedInput, "'" + item + "' is not a number");
        }
    }
    if (v.empty()) throw Error(ErrorCode::MalformedInput, "empty number list");
    return v;
}

} // namespace evocsit
