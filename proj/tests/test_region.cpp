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

#include <random>

#include "doctest.h"
#include "evocsit/error.hpp"
#include "evocsit/region.hpp"

using namespace evocsit;

namespace {

std::vector<DofPoint> pts(std::initializer_list<DofPoint> l) { return l; }

} // namespace

TEST_CASE("theorem 1 hexagon and its degenerate ends")
{
    auto r = region_theorem1(1.0 / 3);
    CHECK(r.status() == RegionStatus::Optimal);
    CHECK(same_point_set(r.vertices(),
                         pts({{0, 0}, {0, 1}, {1.0 / 3, 1}, {7.0 / 9, 7.0 / 9}, {1, 1.0 / 3}, {1, 0}})));
    CHECK(same_point_set(region_theorem1(1).vertices(), pts({{0, 0}, {0, 1}, {1, 1}, {1, 0}})));
    CHECK(same_point_set(region_theorem1(0).vertices(), pts({{0, 0}, {0, 1}, {2.0 / 3, 2.0 / 3}, {1, 0}})));
    CHECK(region_theorem1(0).vertices().size() == 4);
    CHECK_THROWS_AS(region_theorem1(1.5), Error);
}

TEST_CASE("vertices run counterclockwise from the origin")
{
    const auto region = region_theorem1(0.4);
    const auto &v = region.vertices();
    REQUIRE(v.size() == 6);
    CHECK(v[0].d1 == 0.0);
    CHECK(v[0].d2 == 0.0);
    CHECK(v[1].d1 == doctest::Approx(1));
    CHECK(v[1].d2 == doctest::Approx(0));
    CHECK(v.back().d1 == doctest::Approx(0));
    CHECK(v.back().d2 == doctest::Approx(1));
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto &a = v[i], &b = v[(i + 1) % v.size()], &c = v[(i + 2) % v.size()];
        CHECK((b.d1 - a.d1) * (c.d2 - b.d2) - (b.d2 - a.d2) * (c.d1 - b.d1) > 0);
    }
}

TEST_CASE("theorem 2 threshold and inner bound")
{
    CHECK(same_region(region_theorem2(1.0 / 3, 5.0 / 9), region_theorem1(1.0 / 3)));
    CHECK(region_theorem2(1.0 / 3, 5.0 / 9).status() == RegionStatus::Optimal);

    auto r = region_theorem2(0.3, 0.4);
    CHECK(r.status() == RegionStatus::InnerBound);
    auto expect = pts({{0, 0}, {0, 1}, {0.3, 1}, {0.5, 0.9}, {0.9, 0.5}, {1, 0.3}, {1, 0}});
    CHECK(same_point_set(r.vertices(), expect));
    CHECK(same_point_set(theorem2_corners(0.3, 0.4), expect));
    CHECK(same_point_set(region_theorem2(1, 1).vertices(), pts({{0, 0}, {0, 1}, {1, 1}, {1, 0}})));
    CHECK_THROWS_AS(region_theorem2(0.5, 0.4), Error);
}

TEST_CASE("theorem 4 corners in both cases")
{
    CHECK(same_point_set(region_theorem4(1, 0).vertices(), pts({{0, 0}, {1, 0}, {1, 0.5}, {0, 1}})));
    auto r = region_theorem4(0.5, 0.3);
    CHECK(same_point_set(r.vertices(), pts({{0, 0}, {1, 0}, {1, 0.5}, {0.9, 0.7}, {0.3, 1}, {0, 1}})));
    CHECK(same_region(region_theorem4(0.45, 0.45), region_theorem1(0.45)));
    CHECK(same_region(outer_bound_lemma1(0.5, 0.3), r));
    CHECK(same_point_set(outer_bound_lemma1(0, 0).vertices(), pts({{0, 0}, {0, 1}, {2.0 / 3, 2.0 / 3}, {1, 0}})));
    CHECK_THROWS_AS(region_theorem4(0.2, 0.3), Error);
}

TEST_CASE("membership")
{
    auto r = region_theorem1(1.0 / 3);
    CHECK(contains(r, {7.0 / 9, 7.0 / 9}));
    CHECK_FALSE(contains(r, {7.0 / 9 + 1e-3, 7.0 / 9}));
    CHECK(contains(region_theorem2(0, 0), {0, 0}));
    CHECK_FALSE(contains(r, {-0.1, 0}));
}

TEST_CASE("random regions: enumeration matches closed forms and structural properties hold")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0, 1);
    for (int k = 0; k < 300; ++k) {
        double a1 = u(rng), a2 = u(rng);
        if (a2 > a1) std::swap(a1, a2);
        const double beta = a1 + (1 - a1) * u(rng);
        CHECK(same_point_set(region_theorem1(a1).vertices(), theorem1_corners(a1)));
        CHECK(same_point_set(region_theorem2(a1, beta).vertices(), theorem2_corners(a1, beta)));
        CHECK(same_point_set(region_theorem4(a1, a2).vertices(), theorem4_corners(a1, a2)));
        CHECK(same_region(region_theorem4(a1, a2), outer_bound_lemma1(a1, a2)));
        CHECK(is_subset(region_theorem1(a2), region_theorem1(a1)));
        const double beta2 = beta + (1 - beta) * u(rng);
        CHECK(is_subset(region_theorem2(a1, beta), region_theorem2(a1, beta2)));
        const DofRegion r4 = region_theorem4(a1, a2);
        for (const auto &v : r4.vertices()) {
            CHECK(v.d1 <= 1 + kRegionTol);
            CHECK(v.d2 <= 1 + kRegionTol);
        }
    }
}

TEST_CASE("user 1 quality beyond the corner threshold does not matter")
{
    CHECK(same_region(region_theorem4(0.8, 0.4), region_theorem4(0.95, 0.4)));
    CHECK(same_region(region_theorem4(0.7, 0.4), region_theorem4(1.0, 0.4)));
}

TEST_CASE("minimum quality for a symmetric target")
{
    auto q = solve_min_quality(7.0 / 9);
    CHECK(q.abar_min == doctest::Approx(1.0 / 3).epsilon(1e-14));
    CHECK(q.beta_min == doctest::Approx(5.0 / 9).epsilon(1e-14));
    CHECK_FALSE(q.requires_perfect_current);
    auto one = solve_min_quality(1);
    CHECK(one.abar_min == 1);
    CHECK(one.beta_min == 1);
    CHECK(one.requires_perfect_current);
    auto low = solve_min_quality(2.0 / 3);
    CHECK(low.abar_min == doctest::Approx(0).epsilon(1e-14));
    CHECK(low.beta_min == doctest::Approx(1.0 / 3));
    CHECK(solve_min_quality(0.5).abar_min == 0);
    CHECK_FALSE(solve_min_quality(0.5).note.empty());
    CHECK_THROWS_AS(solve_min_quality(1.1), Error);
}

TEST_CASE("maximum feedback delay")
{
    auto none = solve_max_delay(7.0 / 9);
    CHECK(none.gamma_max == doctest::Approx(2.0 / 3));
    auto a_half = solve_max_delay(7.0 / 9, {DelayConstraintKind::AlphaMax, 0.5});
    CHECK(a_half.gamma_max == doctest::Approx(1.0 / 3));
    auto a_59 = solve_max_delay(7.0 / 9, {DelayConstraintKind::AlphaMax, 5.0 / 9});
    CHECK(a_59.gamma_max == doctest::Approx(2.0 / 5));
    CHECK(a_59.witness.slots() == 5);
    auto b_59 = solve_max_delay(7.0 / 9, {DelayConstraintKind::BetaMax, 5.0 / 9});
    CHECK(b_59.gamma_max == doctest::Approx(2.0 / 5));
    CHECK_THROWS_AS(solve_max_delay(7.0 / 9, {DelayConstraintKind::BetaMax, 0.5}), Error);
    CHECK_THROWS_AS(solve_max_delay(7.0 / 9, {DelayConstraintKind::AlphaMax, 0.3}), Error);

    for (const auto &res : {none, a_half, a_59, b_59}) {
        const auto &w = res.witness;
        CHECK(validate_profile(w, ProfileMode::Symmetric).empty());
        const double abar = average_exponent(w, User::One);
        CHECK(abar >= 1.0 / 3 - 1e-12);
        CHECK(fractional_delay(w, User::One) == doctest::Approx(res.gamma_max));
        CHECK(contains(region_theorem2(abar, w.beta()), {7.0 / 9, 7.0 / 9}));
    }
}

TEST_CASE("maximum delay witnesses over a sweep of targets")
{
    for (double d = 2.0 / 3; d <= 1.0 + 1e-12; d += 0.013) {
        for (const DelayConstraint c : {DelayConstraint{}, DelayConstraint{DelayConstraintKind::AlphaMax, 1.0},
                                        DelayConstraint{DelayConstraintKind::BetaMax, std::min(1.0, 2 * d - 0.9)}}) {
            MaxDelay res{0, QualityProfile::symmetric({0}, 0)};
            try {
                res = solve_max_delay(d, c);
            } catch (const Error &) {
                continue;
            }
            const auto &w = res.witness;
            REQUIRE(validate_profile(w, ProfileMode::Symmetric).empty());
            const double abar = average_exponent(w, User::One);
            CHECK(abar >= 3 * d - 2 - 1e-9);
            CHECK(contains(region_theorem2(abar, w.beta()), {d, d}, 1e-9));
        }
    }
}

TEST_CASE("asymmetry penalty")
{
    auto r = asymmetry_penalty(0.6, 0.5);
    CHECK(r.pair.d1 == doctest::Approx(2.6 / 3).epsilon(1e-14));
    CHECK(r.pair.d2 == doctest::Approx(4.9 / 6).epsilon(1e-14));
    CHECK(r.shortfall == doctest::Approx(1.0 / 60));
    auto far = asymmetry_penalty(1.0, 0.4);
    CHECK(far.pair.d1 == doctest::Approx(1));
    CHECK(far.pair.d2 == doctest::Approx(0.7));
    CHECK(far.pair.d1 + 2 * far.pair.d2 == doctest::Approx(2.4));
    CHECK(asymmetry_penalty(0.5, 0.5 - 1e-9).shortfall < 1e-9);
    CHECK_THROWS_AS(asymmetry_penalty(0.4, 0.4), Error);
}
