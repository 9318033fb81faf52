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

#include <doctest.h>

#include <cmath>
#include <random>

#include "evocsit/error.hpp"
#include "evocsit/lattice.hpp"

using namespace evocsit;

namespace {

ErrorCode code_of(auto &&fn)
{
    try {
        fn();
    } catch (const Error &e) {
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::MalformedInput;
}

} // namespace

TEST_CASE("build_codebook basics")
{
    const auto one = build_codebook(1, 0.5, 1e4, 0.1, 4);
    CHECK(one.G.size() == 1);
    CHECK(std::abs(one.G[0][0] - std::complex<double>(1, 0)) < 1e-15);
    CHECK(one.size() == 4);
    CHECK(min_product_distance(one) == doctest::Approx(4 * one.theta * one.theta));

    CHECK(build_codebook(2, 0.5, 1e4, 0.1, 4).theta == doctest::Approx(10.0));
    CHECK(build_codebook(2, 1.0, 1e6, 0.1, 4).theta == doctest::Approx(1.0));

    // Automatic QAM size: 4^round(log4 P^r).
    CHECK(build_codebook(2, 0.5, 1e4, 0.1).qam == 64);
    CHECK(build_codebook(1, 0.1, 1e2, 0.1).qam == 4);

    CHECK(code_of([] { build_codebook(0, 0.5, 1e4); }) == ErrorCode::OutOfRange);
    CHECK(code_of([] { build_codebook(5, 0.5, 1e4); }) == ErrorCode::OutOfRange);
    CHECK(code_of([] { build_codebook(2, 0.0, 1e4); }) == ErrorCode::DomainError);
    CHECK(code_of([] { build_codebook(2, 0.5, 1e4, 0.1, 9); }) == ErrorCode::DomainError);
    CHECK(code_of([] { build_codebook(4, 0.5, 1e4, 0.1, 64); }) == ErrorCode::BudgetExceeded);
    CHECK(code_of([] { build_codebook(2, 0.5, 1e6, 0.1); }) == ErrorCode::BudgetExceeded);
}

TEST_CASE("generators are unitary and preserve norms")
{
    std::mt19937_64 rng(5);
    for (int T = 1; T <= 4; ++T) {
        const auto cb = build_codebook(T, 0.5, 1e4, 0.1, 16);
        CHECK(unitarity_error(cb) < 1e-12);
        std::uniform_int_distribution<std::uint64_t> pick(0, cb.size() - 1);
        for (int k = 0; k < 100; ++k) {
            const auto q = cb.point(pick(rng));
            const auto c = cb.encode(q);
            double nq = 0, nc = 0;
            for (const auto &x : q) nq += std::norm(x);
            for (const auto &x : c) nc += std::norm(x);
            CHECK(std::abs(nc / (cb.theta * cb.theta) - nq) < 1e-10 * nq);
        }
    }
}

TEST_CASE("product distance is non-vanishing and P-free")
{
    for (int T = 1; T <= 3; ++T) {
        double ref = 0;
        for (double P : {1e2, 1e4, 1e6}) {
            const auto cb = build_codebook(T, 0.5, P, 0.1, 4);
            const double ratio = min_product_distance(cb) / std::pow(cb.theta, 2 * T);
            CHECK(ratio > 0.5);
            if (ref == 0) ref = ratio;
            CHECK(std::abs(ratio - ref) <= 1e-9 * ref);
        }
    }
    CHECK(min_product_distance(build_codebook(4, 0.5, 1e4, 0.1, 4)) > 0);
}

TEST_CASE("codeword energy grows like P")
{
    std::vector<double> x, y;
    for (double P : {1e2, 1e4, 1e6}) {
        const auto cb = build_codebook(2, 0.4, P, 0.1);
        x.push_back(std::log10(P));
        y.push_back(std::log10(mean_codeword_energy(cb)));
    }
    CHECK((y[2] - y[0]) / (x[2] - x[0]) == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("whitened distance: uniform reduction, AM-GM bound and slope")
{
    const auto cb = build_codebook(2, 0.5, 1e4, 0.1, 4);
    // uniform exponents reduce to P^-abar times the plain minimum distance (4 theta^2)
    CHECK(whitened_min_distance(cb, {0.4, 0.4}) == doctest::Approx(std::pow(1e4, -0.4) * 4 * cb.theta * cb.theta));
    CHECK(am_gm_slack(cb, {0.2, 0.6}) >= -1e-12);

    for (double P : {1e2, 1e4, 1e6}) {
        const auto c = build_codebook(2, 1 - 0.4 - 0.1, P, 0.1, 4);
        const double kappa = 2 * std::sqrt(min_product_distance(c) / std::pow(c.theta, 4));
        CHECK(whitened_min_distance(c, {0.2, 0.6}) >= kappa * std::pow(P, 0.1) * (1 - 1e-12));
    }

    for (double delta : {0.1, 0.2}) {
        std::vector<double> y;
        for (double P : {1e2, 1e4, 1e6}) {
            const auto c = build_codebook(2, 1 - 0.3 - delta, P, delta, 4);
            y.push_back(std::log10(whitened_min_distance(c, {0.3, 0.3})));
        }
        CHECK((y[2] - y[0]) / 4 == doctest::Approx(delta).epsilon(1e-9));
    }
    CHECK(code_of([&] { whitened_min_distance(cb, {0.2}); }) == ErrorCode::MalformedInput);
}

TEST_CASE("ML decoding")
{
    const auto cb = build_codebook(2, 0.5, 1e6, 0.1, 4);
    CHECK(decode_error_rate(cb, {0.2, 0.6}, 2000, 1, true) == 0.0);
    CHECK(decode_error_rate(cb, {0.2, 0.6}, 10000, 1) < 1e-3);
    const auto flat = build_codebook(2, 1.0, 1.0, 0.1, 4);
    CHECK(decode_error_rate(flat, {0.0, 0.0}, 4000, 2) > 0.05);
    CHECK(decode_error_rate(cb, {0.2, 0.6}, 500, 9) == decode_error_rate(cb, {0.2, 0.6}, 500, 9));

    double prev = 1.0;
    for (double P : {1e2, 1e4, 1e6}) {
        const double e = decode_error_rate(build_codebook(2, 0.5, P, 0.1, 4), {0.2, 0.6}, 4000, 3);
        CHECK(e <= prev);
        prev = e;
    }
}
