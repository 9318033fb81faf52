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

#include "evocsit/quality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "evocsit/error.hpp"

namespace evocsit {

namespace {

void check_shape(const std::vector<double> &alpha1, const std::vector<double> &alpha2)
{
    if (alpha1.empty())
        throw Error(ErrorCode::MalformedInput, "profile needs T >= 1 exponents");
    if (alpha2.size() != alpha1.size())
        throw Error(ErrorCode::MalformedInput, "alpha1 and alpha2 must both have T entries");
    for (double a : alpha1)
        if (!std::isfinite(a)) throw Error(ErrorCode::MalformedInput, "non-finite exponent");
    for (double a : alpha2)
        if (!std::isfinite(a)) throw Error(ErrorCode::MalformedInput, "non-finite exponent");
}

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

void check_user(const QualityProfile &p, User user, std::vector<Violation> &out)
{
    const int u = static_cast<int>(user);
    const auto alpha = p.alpha(user);
    const double beta = p.beta(user);
    if (beta < -kExponentTol || beta > 1.0 + kExponentTol)
        out.push_back({"range", u, -1, "beta^(" + std::to_string(u) + ") = " + fmt(beta) + " outside [0,1]"});
    for (std::size_t t = 0; t < alpha.size(); ++t) {
        const int idx = static_cast<int>(t) + 1;
        if (alpha[t] < -kExponentTol || alpha[t] > 1.0 + kExponentTol)
            out.push_back({"range", u, idx, "alpha_" + std::to_string(idx) + " = " + fmt(alpha[t]) + " outside [0,1]"});
        if (t > 0 && alpha[t] < alpha[t - 1] - kExponentTol)
            out.push_back({"non-monotone", u, idx,
                           "alpha_" + std::to_string(idx) + " = " + fmt(alpha[t]) + " < alpha_" +
                               std::to_string(idx - 1) + " = " + fmt(alpha[t - 1])});
    }
    if (alpha.back() > beta + kExponentTol)
        out.push_back({"exceeds-beta", u, static_cast<int>(alpha.size()),
                       "alpha_T = " + fmt(alpha.back()) + " > beta = " + fmt(beta)});
}

} // namespace

std::string to_string(ProfileMode mode)
{
    switch (mode) {
    case ProfileMode::Symmetric: return "symmetric";
    case ProfileMode::PartiallySymmetric: return "partially-symmetric";
    case ProfileMode::Asymmetric: return "asymmetric";
    }
    return "unknown";
}

ProfileMode profile_mode_from_string(const std::string &name)
{
    if (name == "symmetric") return ProfileMode::Symmetric;
    if (name == "partially-symmetric") return ProfileMode::PartiallySymmetric;
    if (name == "asymmetric") return ProfileMode::Asymmetric;
    throw Error(ErrorCode::MalformedInput, "unknown profile mode '" + name + "'");
}

QualityProfile::QualityProfile(std::vector<double> alpha1, std::vector<double> alpha2, double beta1,
                               double beta2)
    : alpha1_(std::move(alpha1)), alpha2_(std::move(alpha2)), beta1_(beta1), beta2_(beta2)
{
    check_shape(alpha1_, alpha2_);
    if (!std::isfinite(beta1_) || !std::isfinite(beta2_))
        throw Error(ErrorCode::MalformedInput, "non-finite beta");
}

QualityProfile::QualityProfile(std::vector<double> alpha1, std::vector<double> alpha2, double beta)
    : QualityProfile(std::move(alpha1), std::move(alpha2), beta, beta)
{
}

QualityProfile QualityProfile::symmetric(std::vector<double> alpha, double beta)
{
    auto copy = alpha;
    return QualityProfile(std::move(alpha), std::move(copy), beta);
}

std::span<const double> QualityProfile::alpha(User user) const noexcept
{
    return user == User::One ? std::span<const double>(alpha1_) : std::span<const double>(alpha2_);
}

std::vector<Violation> validate_profile(const QualityProfile &p, ProfileMode mode)
{
    std::vector<Violation> out;
    check_user(p, User::One, out);
    check_user(p, User::Two, out);

    if (std::abs(p.beta(User::One) - p.beta(User::Two)) > kExponentTol)
        out.push_back({"unequal-beta", 0, -1, "beta^(1) != beta^(2) is not covered by any region result"});

    const auto a1 = p.alpha1();
    const auto a2 = p.alpha2();
    switch (mode) {
    case ProfileMode::Symmetric:
        for (std::size_t t = 0; t < a1.size(); ++t)
            if (std::abs(a1[t] - a2[t]) > kExponentTol)
                out.push_back({"not-symmetric", 0, static_cast<int>(t) + 1,
                               "alpha^(1) and alpha^(2) differ at slot " + std::to_string(t + 1)});
        break;
    case ProfileMode::PartiallySymmetric: {
        const double gap = average_exponent(p, User::One) - average_exponent(p, User::Two);
        if (std::abs(gap) > kExponentTol)
            out.push_back({"unequal-average", 0, -1, "averages differ by " + fmt(gap)});
        break;
    }
    case ProfileMode::Asymmetric:
        for (std::size_t t = 0; t < a1.size(); ++t)
            if (a2[t] > a1[t] + kExponentTol)
                out.push_back({"user-order", 0, static_cast<int>(t) + 1,
                               "alpha^(2) > alpha^(1) at slot " + std::to_string(t + 1)});
        break;
    }
    return out;
}

void require_valid(const QualityProfile &p, ProfileMode mode)
{
    const auto violations = validate_profile(p, mode);
    if (violations.empty()) return;
    std::string msg = "profile invalid for ";
    msg.append(to_string(mode)).append(" mode:");
    for (const auto &v : violations) msg.append(" [").append(v.constraint).append("] ").append(v.message).append(";");
    throw Error(ErrorCode::DomainError, msg);
}

double average_exponent(const QualityProfile &p, User user)
{
    const auto alpha = p.alpha(user);
    return std::accumulate(alpha.begin(), alpha.end(), 0.0) / static_cast<double>(alpha.size());
}

double fractional_delay(const QualityProfile &p, User user)
{
    const auto alpha = p.alpha(user);
    const auto first_nonzero =
        std::find_if(alpha.begin(), alpha.end(), [](double a) { return std::abs(a) > kExponentTol; });
    return static_cast<double>(first_nonzero - alpha.begin()) / static_cast<double>(alpha.size());
}

ProfileSummary summarize(const QualityProfile &p)
{
    return {average_exponent(p, User::One), average_exponent(p, User::Two), fractional_delay(p, User::One),
            fractional_delay(p, User::Two)};
}

} // namespace evocsit
