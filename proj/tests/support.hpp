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

// Random valid profiles for property tests and the acceptance run.

#ifndef EVOCSIT_TESTS_SUPPORT_HPP
#define EVOCSIT_TESTS_SUPPORT_HPP

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "evocsit/quality.hpp"

namespace evocsit::testing {

inline std::vector<double> sorted_uniform(std::mt19937_64 &rng, std::size_t T, double hi)
{
    std::uniform_real_distribution<double> u(0, hi);
    std::vector<double> v(T);
    for (auto &x : v) x = u(rng);
    std::sort(v.begin(), v.end());
    return v;
}

inline double mean(const std::vector<double> &v) { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); }

// alpha2_t <= alpha1_t, both non-decreasing. case1 selects 2*abar1 - abar2 < 1 or >= 1.
inline QualityProfile random_asymmetric(std::mt19937_64 &rng, bool case1, std::size_t max_T = 6)
{
    std::uniform_real_distribution<double> u(0, 1);
    for (;;) {
        const std::size_t T = 1 + rng() % max_T;
        const double x = u(rng);
        auto a2 = sorted_uniform(rng, T, x);
        auto d = sorted_uniform(rng, T, (1 - x) * u(rng));
        std::vector<double> a1(T);
        for (std::size_t t = 0; t < T; ++t) a1[t] = std::min(1.0, a2[t] + d[t]);
        const double m1 = mean(a1), m2 = mean(a2);
        if ((2 * m1 - m2 < 1 - 1e-6) != case1 || std::abs(2 * m1 - m2 - 1) < 1e-6) continue;
        if (m1 > 0.98) continue;
        const double top = a1.back();
        return QualityProfile(a1, a2, top + (1 - top) * u(rng));
    }
}

// Equal averages, per-slot values differ. beta_mode: 0 any, 1 below the
// delayed threshold, 2 at or above it.
inline QualityProfile random_partial(std::mt19937_64 &rng, int beta_mode, std::size_t max_T = 6)
{
    std::uniform_real_distribution<double> u(0, 1);
    for (;;) {
        const std::size_t T = 1 + rng() % max_T;
        auto a1 = sorted_uniform(rng, T, 0.2 + 0.75 * u(rng));
        const double m = mean(a1), lam = u(rng);
        std::vector<double> a2(T);
        for (std::size_t t = 0; t < T; ++t) a2[t] = lam * a1[t] + (1 - lam) * m;
        const double top = std::max(a1.back(), a2.back());
        const double thr = (1 + 2 * m) / 3;
        double beta;
        if (beta_mode == 1) {
            if (top >= thr - 1e-3) continue;
            beta = top + (thr - top) * (0.05 + 0.9 * u(rng));
        } else if (beta_mode == 2) {
            const double lo = std::max(top, thr);
            if (lo > 0.97) continue;
            beta = lo + (0.98 - lo) * u(rng);
        } else {
            beta = top + (0.98 - top) * u(rng);
            if (beta < top) continue;
        }
        return QualityProfile(a1, a2, beta);
    }
}

} // namespace evocsit::testing

#endif
