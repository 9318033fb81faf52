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

#include "evocsit/region.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "evocsit/error.hpp"

namespace evocsit {

namespace {

void require_exponent(double v, const char *name)
{
    if (!std::isfinite(v) || v < -kExponentTol || v > 1.0 + kExponentTol)
        throw Error(ErrorCode::DomainError, std::string(name) + " must lie in [0,1]");
}

double snap(double v) { return std::abs(v) < 1e-13 ? 0.0 : v; }

std::vector<HalfPlane> lemma1_halfplanes(double abar1, double abar2)
{
    return {{1, 0, 1}, {0, 1, 1}, {2, 1, 2 + abar1}, {1, 2, 2 + abar2}};
}

} // namespace

std::string to_string(RegionStatus status)
{
    return status == RegionStatus::Optimal ? "optimal" : "inner-bound";
}

DofRegion::DofRegion(std::vector<HalfPlane> halfplanes, RegionStatus status)
    : halfplanes_(std::move(halfplanes)), vertices_(enumerate_vertices(halfplanes_)), status_(status)
{
}

std::vector<DofPoint> canonical_polygon(std::vector<DofPoint> points)
{
    std::vector<DofPoint> merged;
    for (const auto &p : points) {
        const bool dup = std::any_of(merged.begin(), merged.end(), [&](const DofPoint &q) {
            return std::abs(p.d1 - q.d1) <= kRegionTol && std::abs(p.d2 - q.d2) <= kRegionTol;
        });
        if (!dup) merged.push_back({snap(p.d1), snap(p.d2)});
    }
    if (merged.size() < 3) return merged;

    double cx = 0, cy = 0;
    for (const auto &p : merged) {
        cx += p.d1;
        cy += p.d2;
    }
    cx /= static_cast<double>(merged.size());
    cy /= static_cast<double>(merged.size());
    std::sort(merged.begin(), merged.end(), [&](const DofPoint &a, const DofPoint &b) {
        return std::atan2(a.d2 - cy, a.d1 - cx) < std::atan2(b.d2 - cy, b.d1 - cx);
    });
    auto start = std::min_element(merged.begin(), merged.end(), [](const DofPoint &a, const DofPoint &b) {
        return std::hypot(a.d1, a.d2) < std::hypot(b.d1, b.d2);
    });
    std::rotate(merged.begin(), start, merged.end());
    return merged;
}

std::vector<DofPoint> enumerate_vertices(const std::vector<HalfPlane> &halfplanes)
{
    std::vector<HalfPlane> all = halfplanes;
    all.push_back({-1, 0, 0});
    all.push_back({0, -1, 0});

    std::vector<DofPoint> found;
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            const auto &u = all[i];
            const auto &v = all[j];
            const double det = u.a * v.b - u.b * v.a;
            if (std::abs(det) < 1e-14) continue;
            const DofPoint p{(u.c * v.b - u.b * v.c) / det, (u.a * v.c - u.c * v.a) / det};
            const bool feasible = std::all_of(all.begin(), all.end(), [&](const HalfPlane &h) {
                return h.a * p.d1 + h.b * p.d2 <= h.c + kRegionTol;
            });
            if (feasible) found.push_back(p);
        }
    }
    return canonical_polygon(std::move(found));
}

bool contains(const DofRegion &r, DofPoint p, double tol)
{
    if (p.d1 < -tol || p.d2 < -tol) return false;
    return std::all_of(r.halfplanes().begin(), r.halfplanes().end(),
                       [&](const HalfPlane &h) { return h.a * p.d1 + h.b * p.d2 <= h.c + tol; });
}

bool same_point_set(const std::vector<DofPoint> &a, const std::vector<DofPoint> &b, double tol)
{
    auto covered = [tol](const std::vector<DofPoint> &x, const std::vector<DofPoint> &y) {
        return std::all_of(x.begin(), x.end(), [&](const DofPoint &p) {
            return std::any_of(y.begin(), y.end(), [&](const DofPoint &q) {
                return std::abs(p.d1 - q.d1) <= tol && std::abs(p.d2 - q.d2) <= tol;
            });
        });
    };
    return covered(a, b) && covered(b, a);
}

bool same_region(const DofRegion &a, const DofRegion &b, double tol)
{
    return same_point_set(a.vertices(), b.vertices(), tol);
}

bool is_subset(const DofRegion &inner, const DofRegion &outer, double tol)
{
    return std::all_of(inner.vertices().begin(), inner.vertices().end(),
                       [&](const DofPoint &p) { return contains(outer, p, tol); });
}

double delayed_threshold(double abar) { return (1.0 + 2.0 * abar) / 3.0; }

DofRegion region_theorem1(double abar)
{
    require_exponent(abar, "abar");
    return DofRegion(lemma1_halfplanes(abar, abar), RegionStatus::Optimal);
}

DofRegion region_theorem2(double abar, double beta)
{
    require_exponent(abar, "abar");
    require_exponent(beta, "beta");
    if (abar > beta + kExponentTol) throw Error(ErrorCode::DomainError, "abar must not exceed beta");
    if (beta >= delayed_threshold(abar) - kExponentTol) return region_theorem1(abar);
    auto hp = lemma1_halfplanes(abar, abar);
    hp.push_back({1, 1, 1 + beta});
    return DofRegion(std::move(hp), RegionStatus::InnerBound);
}

DofRegion region_theorem4(double abar1, double abar2)
{
    require_exponent(abar1, "abar1");
    require_exponent(abar2, "abar2");
    if (abar2 > abar1 + kExponentTol) throw Error(ErrorCode::DomainError, "theorem 4 needs abar2 <= abar1");
    return DofRegion(lemma1_halfplanes(abar1, abar2), RegionStatus::Optimal);
}

DofRegion outer_bound_lemma1(double abar1, double abar2)
{
    require_exponent(abar1, "abar1");
    require_exponent(abar2, "abar2");
    return DofRegion(lemma1_halfplanes(abar1, abar2), RegionStatus::Optimal);
}

std::vector<DofPoint> theorem1_corners(double abar)
{
    const double c = (2 + abar) / 3;
    return canonical_polygon({{0, 0}, {0, 1}, {abar, 1}, {c, c}, {1, abar}, {1, 0}});
}

std::vector<DofPoint> theorem2_corners(double abar, double beta)
{
    if (beta >= delayed_threshold(abar) - kExponentTol) return theorem1_corners(abar);
    return canonical_polygon({{0, 0},
                              {0, 1},
                              {abar, 1},
                              {2 * beta - abar, 1 + abar - beta},
                              {1 + abar - beta, 2 * beta - abar},
                              {1, abar},
                              {1, 0}});
}

std::vector<DofPoint> theorem4_corners(double abar1, double abar2)
{
    if (2 * abar1 - abar2 < 1)
        return canonical_polygon({{0, 0},
                                  {1, 0},
                                  {1, abar1},
                                  {(2 + 2 * abar1 - abar2) / 3, (2 + 2 * abar2 - abar1) / 3},
                                  {abar2, 1},
                                  {0, 1}});
    return canonical_polygon({{0, 0}, {1, 0}, {1, (1 + abar2) / 2}, {abar2, 1}, {0, 1}});
}

MinQuality solve_min_quality(double dprime)
{
    if (!std::isfinite(dprime) || dprime < 0) throw Error(ErrorCode::DomainError, "d' must be non-negative");
    if (dprime > 1 + kExponentTol) throw Error(ErrorCode::Infeasible, "symmetric DoF above 1 is not achievable");
    MinQuality q;
    if (dprime < 2.0 / 3.0 - kExponentTol) {
        // No current CSIT needed. Delayed CSIT still has to support the sum 2d'.
        q.abar_min = 0;
        q.beta_min = std::max(0.0, 2 * dprime - 1);
        q.note = "below 2/3 no current CSIT is needed";
        return q;
    }
    q.abar_min = std::clamp(3 * dprime - 2, 0.0, 1.0);
    q.beta_min = std::clamp(2 * dprime - 1, 0.0, 1.0);
    if (dprime >= 1 - kExponentTol) {
        q.requires_perfect_current = true;
        q.note = "d' = 1 requires perfect and immediately available current CSIT";
    }
    return q;
}

MaxDelay solve_max_delay(double dprime, DelayConstraint constraint)
{
    if (!std::isfinite(dprime) || dprime < 0) throw Error(ErrorCode::DomainError, "d' must be non-negative");
    if (dprime > 1 + kExponentTol) throw Error(ErrorCode::Infeasible, "symmetric DoF above 1 is not achievable");
    const double need_abar = std::max(0.0, 3 * dprime - 2);
    const double need_beta = std::max(0.0, 2 * dprime - 1);

    double gamma = 0, suffix = 1, beta = 1;
    switch (constraint.kind) {
    case DelayConstraintKind::None:
        gamma = 1 - need_abar;
        break;
    case DelayConstraintKind::AlphaMax: {
        const double a = constraint.value;
        require_exponent(a, "alpha_max");
        if (a < need_abar - kExponentTol)
            throw Error(ErrorCode::Infeasible, "alpha_max is below the required average 3d'-2");
        gamma = need_abar <= kExponentTol ? 1.0 : 1 - need_abar / a;
        suffix = a;
        beta = std::max(a, need_beta);
        break;
    }
    case DelayConstraintKind::BetaMax: {
        const double b = constraint.value;
        require_exponent(b, "beta_max");
        if (b < need_beta - kExponentTol)
            throw Error(ErrorCode::Infeasible, "beta_max is below the required delayed quality 2d'-1");
        gamma = need_abar <= kExponentTol ? 1.0 : 1 - need_abar / b;
        suffix = b;
        beta = b;
        break;
    }
    }
    gamma = std::clamp(gamma, 0.0, 1.0);

    // Canonical witness: zero prefix of length gamma*T then a constant suffix.
    constexpr int kMaxSlots = 720;
    int T = kMaxSlots;
    for (int t = 1; t <= kMaxSlots; ++t) {
        const double k = gamma * t;
        if (std::abs(k - std::round(k)) <= 1e-9) {
            T = t;
            break;
        }
    }
    const int zeros = std::min(T, static_cast<int>(std::floor(gamma * T + 1e-9)));
    std::vector<double> alpha(static_cast<std::size_t>(T), suffix);
    std::fill(alpha.begin(), alpha.begin() + zeros, 0.0);
    return {gamma, QualityProfile::symmetric(std::move(alpha), beta)};
}

AsymmetryPenalty asymmetry_penalty(double abar, double abar_prime)
{
    require_exponent(abar, "abar");
    require_exponent(abar_prime, "abar'");
    if (abar_prime >= abar) throw Error(ErrorCode::DomainError, "asymmetry penalty needs abar' < abar");
    const double shortfall = (abar - abar_prime) / 6;
    return {{(2 + abar) / 3, (2 + abar_prime) / 3 - shortfall}, shortfall};
}

} // namespace evocsit
