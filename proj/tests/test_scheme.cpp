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

#include <cmath>
#include <random>

#include "doctest.h"
#include "evocsit/error.hpp"
#include "evocsit/scheme.hpp"
#include "support.hpp"

using namespace evocsit;

namespace {

QualityProfile worked_example() { return QualityProfile::symmetric({0, 4.0 / 9, 5.0 / 9}, 5.0 / 9); }

ErrorCode code_of(auto &&fn)
{
    try {
        fn();
    } catch (const Error &e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::MalformedInput;
}

void check_allocation_invariants(const SchemeConfig &cfg)
{
    for (int s = 1; s <= cfg.S; ++s) {
        for (int t = 1; t <= static_cast<int>(cfg.profile.slots()); ++t) {
            const auto &slot = allocation(cfg, s, t);
            double pmax = 0;
            for (auto k : kAllClasses) {
                const auto &c = slot[k];
                if (!c.active) continue;
                CHECK(c.rate >= -1e-12);
                CHECK(c.power <= 1 + 1e-12);
                CHECK(c.power >= -1e-12);
                pmax = std::max(pmax, c.power);
            }
            CHECK(pmax == doctest::Approx(1));
            const double a1 = cfg.profile.alpha(User::One, static_cast<std::size_t>(t - 1));
            const double a2 = cfg.profile.alpha(User::Two, static_cast<std::size_t>(t - 1));
            CHECK(slot.phi1 == doctest::Approx(std::max(0.0, interference_exponent(slot, User::One, a1))));
            CHECK(slot.phi2 == doctest::Approx(std::max(0.0, interference_exponent(slot, User::Two, a2))));
        }
    }
}

} // namespace

TEST_CASE("X11 constants and ledger at (0.5, 0.3)")
{
    QualityProfile p({0.5}, {0.3}, 1.0);
    SchemeOptions o;
    o.delta = 0.05;
    o.S = 5;
    auto cfg = build_scheme(SchemeKind::X11, p, o);
    CHECK(cfg.mu == doctest::Approx(2.0 / 3));
    CHECK(cfg.eps1 == doctest::Approx(8.0 / 3));
    CHECK(cfg.eps2 == doctest::Approx(3.0 / 7));
    auto L = quantization_ledger(cfg);
    CHECK(L.phases[0].produced == doctest::Approx(1.2));
    CHECK(L.phases[0].consumed == doctest::Approx(1.2));
    CHECK(L.balanced);
    CHECK(L.phases.back().produced == 0);

    const auto lim = dof_limit(cfg);
    CHECK(lim.d1 == doctest::Approx(0.9));
    CHECK(lim.d2 == doctest::Approx(0.7));
    check_allocation_invariants(cfg);
}

TEST_CASE("X11 allocation rows")
{
    QualityProfile p({0.2, 0.4}, {0.1, 0.3}, 1.0);
    SchemeOptions o;
    o.delta = 0.1;
    o.S = 4;
    auto cfg = build_scheme(SchemeKind::X11, p, o);
    const auto &first = allocation(cfg, 1, 2);
    CHECK_FALSE(first[SymbolClass::C].active);
    CHECK(first[SymbolClass::A].rate == 1);
    CHECK(first[SymbolClass::A].precoder == Precoder::OrthG);
    CHECK(first[SymbolClass::APrime].rate == doctest::Approx(0.7));
    CHECK(first[SymbolClass::BPrime].rate == doctest::Approx(0.6));
    const auto &mid = allocation(cfg, 2, 2);
    CHECK(mid[SymbolClass::C].rate == doctest::Approx(0.5));
    CHECK(mid[SymbolClass::A].power == doctest::Approx(0.5));
    CHECK(mid[SymbolClass::APrime].rate == doctest::Approx(0.2));
    CHECK(mid[SymbolClass::B].precoder == Precoder::OrthH);
    CHECK(mid[SymbolClass::BPrime].rate == doctest::Approx(0.1));
    const auto &last = allocation(cfg, 4, 1);
    CHECK(last[SymbolClass::C].rate == doctest::Approx(0.9));
    CHECK(last[SymbolClass::A].rate == doctest::Approx(0.1));
    CHECK_FALSE(last[SymbolClass::APrime].active);
    CHECK_THROWS_AS(allocation(cfg, 5, 1), Error);
    CHECK_THROWS_AS(allocation(cfg, 1, 3), Error);
}

TEST_CASE("X11 finite DoF at S = 3 matches the direct sum")
{
    QualityProfile p({0.5}, {0.3}, 1.0);
    SchemeOptions o;
    o.delta = 0.05;
    o.S = 3;
    auto cfg = build_scheme(SchemeKind::X11, p, o);
    const double a1 = 0.5, a2 = 0.3, D = 0.05;
    const double T1 = 1, T2 = 8.0 / 3, T3 = T2 * 3.0 / 7;
    const double d1 = (T1 * (2 - a2) + T2 * (2 * a1 - a2 + 2 * D) + T3 * a2) / (T1 + T2 + T3);
    const double d2 = (T1 * (2 - a1) + T2 * (a1 + 2 * D) + T3 * a2) / (T1 + T2 + T3);
    auto f = dof_finite(cfg);
    CHECK(f.d1 == doctest::Approx(d1).epsilon(1e-12));
    CHECK(f.d2 == doctest::Approx(d2).epsilon(1e-12));
}

TEST_CASE("X11 parameter errors")
{
    QualityProfile case2({0.9}, {0.5}, 1.0);
    CHECK(code_of([&] { build_scheme(SchemeKind::X11, case2); }) == ErrorCode::WrongCase);
    QualityProfile p({0.5}, {0.3}, 1.0);
    SchemeOptions o;
    o.delta = 0.2;
    CHECK(code_of([&] { build_scheme(SchemeKind::X11, p, o); }) == ErrorCode::InvalidDelta);
    o.delta = 0.0;
    CHECK(code_of([&] { build_scheme(SchemeKind::X11, p, o); }) == ErrorCode::InvalidDelta);
    o.delta.reset();
    o.S = 2;
    CHECK(code_of([&] { build_scheme(SchemeKind::X11, p, o); }) == ErrorCode::OutOfRange);
    QualityProfile swapped({0.3}, {0.5}, 1.0);
    CHECK(code_of([&] { build_scheme(SchemeKind::X11, swapped); }) == ErrorCode::DomainError);
    auto cfg = build_scheme(SchemeKind::X11, p);
    CHECK(cfg.delta == doctest::Approx((1 - 1.0 + 0.3) / 6));
}

TEST_CASE("X12 collapses with equal averages and reaches its corner")
{
    auto sym = QualityProfile::symmetric({0.2, 0.4}, 1.0);
    auto cfg = build_scheme(SchemeKind::X12, sym);
    CHECK(cfg.eta == 0);
    for (int s = 3; s <= cfg.S; ++s) CHECK(cfg.durations[static_cast<std::size_t>(s - 1)] == 0);
    CHECK(quantization_ledger(cfg).balanced);

    QualityProfile c2({0.9}, {0.5}, 1.0);
    auto lim = dof_limit(SchemeKind::X12, c2);
    CHECK(lim.d1 == 1);
    CHECK(lim.d2 == doctest::Approx(0.75));
    QualityProfile c1({0.5}, {0.3}, 1.0);
    CHECK(dof_limit(SchemeKind::X12, c1).d2 == doctest::Approx(0.5));
    SchemeOptions o;
    o.S = 40;
    auto f = dof_finite(build_scheme(SchemeKind::X12, c1, o));
    CHECK(f.d1 == doctest::Approx(1).epsilon(1e-6));
    CHECK(f.d2 == doctest::Approx(0.5).epsilon(1e-6));
    CHECK_THROWS_AS(build_scheme(SchemeKind::X12, QualityProfile({1.0}, {0.5}, 1.0)), Error);
}

TEST_CASE("X13 is the terminal block with common data for one user")
{
    QualityProfile p({0.7, 0.9}, {0.2, 0.4}, 1.0);
    auto cfg = build_scheme(SchemeKind::X13, p);
    CHECK(cfg.S == 1);
    auto f = dof_finite(cfg);
    CHECK(f.d1 == doctest::Approx(0.3));
    CHECK(f.d2 == doctest::Approx(1));
    SchemeOptions o;
    o.assignment = CommonAssignment::User1;
    auto g = dof_finite(build_scheme(SchemeKind::X13, p, o));
    CHECK(g.d1 == doctest::Approx(1));
    CHECK(g.d2 == doctest::Approx(0.3));
}

TEST_CASE("X2 hits the symmetric corner exactly")
{
    QualityProfile p({0.0, 0.6}, {0.3, 0.3}, 1.0);
    auto cfg = build_scheme(SchemeKind::X2, p);
    REQUIRE(cfg.durations == std::vector<double>{1, 2});
    auto f = dof_finite(cfg);
    CHECK(f.d1 == doctest::Approx(2.3 / 3).epsilon(1e-14));
    CHECK(f.d2 == doctest::Approx(2.3 / 3).epsilon(1e-14));
    CHECK(quantization_ledger(cfg).balanced);
    const auto &v = allocation(cfg, 2, 1);
    CHECK(v.common_vector);
    CHECK(v[SymbolClass::A].rate == doctest::Approx(0.3));
    CHECK(v[SymbolClass::B].rate == doctest::Approx(0.0).epsilon(1e-14));
    check_allocation_invariants(cfg);

    SchemeOptions o;
    o.assignment = CommonAssignment::User2;
    auto t = dof_finite(build_scheme(SchemeKind::X2, p, o));
    CHECK(t.d1 == doctest::Approx(0.3));
    CHECK(t.d2 == doctest::Approx(1));
}

TEST_CASE("X3 worked example")
{
    SchemeOptions o;
    o.T1 = 3;
    o.S = 6;
    auto cfg = build_scheme(SchemeKind::X3, worked_example(), o);
    CHECK(cfg.xi == doctest::Approx(1).epsilon(1e-14));
    CHECK(cfg.zeta == doctest::Approx(2.0 / 3).epsilon(1e-14));
    for (int s = 0; s < 5; ++s) CHECK(cfg.durations[static_cast<std::size_t>(s)] == doctest::Approx(3));
    CHECK(cfg.durations.back() == doctest::Approx(2));
    auto L = quantization_ledger(cfg);
    for (int s = 0; s < 5; ++s) {
        CHECK(L.phases[static_cast<std::size_t>(s)].produced == doctest::Approx(4.0 / 3 * 3));
        CHECK(L.phases[static_cast<std::size_t>(s)].balanced);
    }
    const auto lim = dof_limit(cfg);
    CHECK(lim.d1 == doctest::Approx(7.0 / 9));
    CHECK(lim.d2 == doctest::Approx(7.0 / 9));
    check_allocation_invariants(cfg);
}

TEST_CASE("X3 common split trades DoF linearly")
{
    QualityProfile p({0.1, 0.3}, {0.2, 0.2}, 0.35);
    auto l0 = dof_limit(SchemeKind::X3, p, 0.0);
    auto lh = dof_limit(SchemeKind::X3, p, 0.5);
    auto l1 = dof_limit(SchemeKind::X3, p, 1.0);
    CHECK(l0.d1 == doctest::Approx(2 * 0.35 - 0.2));
    CHECK(l0.d2 == doctest::Approx(1 + 0.2 - 0.35));
    CHECK((lh.d1 - l0.d1) * (l1.d2 - l0.d2) - (lh.d2 - l0.d2) * (l1.d1 - l0.d1) == doctest::Approx(0).epsilon(1e-12));
    CHECK(lh.d1 == doctest::Approx((1 + 0.35) / 2));

    CHECK_THROWS_AS(build_scheme(SchemeKind::X3, QualityProfile::symmetric({0.5}, 1.0)), Error);
    SchemeOptions bad;
    bad.omega = 1.5;
    CHECK_THROWS_AS(build_scheme(SchemeKind::X3, p, bad), Error);
}

TEST_CASE("finite DoF converges monotonically to the limit")
{
    std::mt19937_64 rng(5);
    for (int k = 0; k < 50; ++k) {
        auto p = testing::random_asymmetric(rng, true);
        auto q = testing::random_partial(rng, 1);
        double prev11 = 1e9, prev3 = 1e9;
        for (int S : {5, 10, 20, 40}) {
            SchemeOptions o;
            o.S = S;
            auto c11 = build_scheme(SchemeKind::X11, p, o);
            auto f = dof_finite(c11), l = dof_limit(c11);
            const double e11 = std::max(std::abs(f.d1 - l.d1), std::abs(f.d2 - l.d2));
            CHECK(e11 <= prev11 + 1e-12);
            prev11 = e11;
            auto c3 = build_scheme(SchemeKind::X3, q, o);
            auto g = dof_finite(c3), m = dof_limit(c3);
            const double e3 = std::max(std::abs(g.d1 - m.d1), std::abs(g.d2 - m.d2));
            CHECK(e3 <= prev3 + 1e-12);
            prev3 = e3;
        }
    }
}

TEST_CASE("ledger balances and allocations stay in range for random profiles")
{
    std::mt19937_64 rng(9);
    for (int k = 0; k < 200; ++k) {
        auto c1 = testing::random_asymmetric(rng, true);
        auto c2 = testing::random_asymmetric(rng, false);
        auto ps = testing::random_partial(rng, 0);
        SchemeOptions o;
        o.S = 3 + static_cast<int>(rng() % 8);
        for (const auto &cfg : {build_scheme(SchemeKind::X11, c1, o), build_scheme(SchemeKind::X12, c1, o),
                                build_scheme(SchemeKind::X12, c2, o), build_scheme(SchemeKind::X13, c2),
                                build_scheme(SchemeKind::X2, ps), build_scheme(SchemeKind::X3, ps, o)}) {
            CHECK(quantization_ledger(cfg).balanced);
            check_allocation_invariants(cfg);
        }
    }
}

TEST_CASE("rounded durations are integers and keep the ledger feasible")
{
    QualityProfile p({0.5}, {0.3}, 1.0);
    SchemeOptions o;
    o.S = 6;
    o.T1 = 7.5;
    o.round = true;
    auto cfg = build_scheme(SchemeKind::X11, p, o);
    for (double d : cfg.durations) CHECK(d == std::floor(d));
    CHECK(cfg.durations[0] == 7);
    auto L = quantization_ledger(cfg);
    CHECK(L.feasible);
    auto f = dof_finite(cfg);
    CHECK(f.d1 > 0);
    CHECK(f.d1 <= 1);

    SchemeOptions w;
    w.T1 = 3;
    w.S = 5;
    w.round = true;
    auto x3 = build_scheme(SchemeKind::X3, worked_example(), w);
    CHECK(x3.durations == std::vector<double>{3, 3, 3, 3, 2});
    CHECK(quantization_ledger(x3).balanced);
}

TEST_CASE("kind and assignment names round trip")
{
    for (auto k : {SchemeKind::X11, SchemeKind::X12, SchemeKind::X13, SchemeKind::X2, SchemeKind::X3})
        CHECK(scheme_kind_from_string(to_string(k)) == k);
    CHECK(scheme_kind_from_string("x3") == SchemeKind::X3);
    CHECK_THROWS_AS(scheme_kind_from_string("X4"), Error);
    CHECK(common_assignment_from_string("user2") == CommonAssignment::User2);
}
