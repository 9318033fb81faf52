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

#include "evocsit/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "evocsit/error.hpp"

namespace evocsit {

using cd = std::complex<double>;
using Mat = std::vector<std::vector<cd>>;

namespace {

std::uint64_t ipow(std::uint64_t b, int e)
{
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

// Visits every non-zero integer difference vector of the alphabet, given as
// real/imag parts per coordinate, each an even integer in [-2(m-1), 2(m-1)].
template <class Fn> void for_each_difference(const LatticeCodebook &cb, Fn &&fn)
{
    const int m = static_cast<int>(std::lround(std::sqrt(cb.qam)));
    const int span = 2 * m - 1; // values -(m-1)..(m-1), times 2
    const int dims = 2 * cb.T;
    std::vector<int> idx(static_cast<std::size_t>(dims), 0);
    std::vector<cd> dq(static_cast<std::size_t>(cb.T));
    const std::uint64_t total = ipow(static_cast<std::uint64_t>(span), dims);
    for (std::uint64_t n = 0; n < total; ++n) {
        std::uint64_t k = n;
        bool zero = true;
        for (int d = 0; d < dims; ++d) {
            idx[static_cast<std::size_t>(d)] = static_cast<int>(k % span) - (m - 1);
            k /= span;
            zero = zero && idx[static_cast<std::size_t>(d)] == 0;
        }
        if (zero) continue;
        for (int t = 0; t < cb.T; ++t)
            dq[static_cast<std::size_t>(t)] = cd(2.0 * idx[static_cast<std::size_t>(2 * t)], 2.0 * idx[static_cast<std::size_t>(2 * t + 1)]);
        fn(cb.encode(dq));
    }
}

void require_nonvanishing(const std::vector<cd> &dc, double theta)
{
    for (const auto &x : dc)
        if (std::abs(x) <= 1e-9 * theta)
            throw Error(ErrorCode::ConstructionFailure, "a codeword difference has a vanishing coordinate");
}

} // namespace

Mat lattice_generator(int T)
{
    if (T < 1 || T > 4) throw Error(ErrorCode::OutOfRange, "lattice dimension must be 1..4");
    Mat G(static_cast<std::size_t>(T), std::vector<cd>(static_cast<std::size_t>(T)));
    const double pi = std::numbers::pi;
    if (T == 3) {
        // Z[2cos(2pi/7)] is totally real of degree 3; the trace-form basis
        // below makes its canonical embedding orthogonal after scaling.
        for (int t = 0; t < 3; ++t) {
            const double th = 2 * std::cos(2 * pi * (t + 1) / 7);
            const double w = 1 + th + th * th;
            const double y[3] = {-2 + th * th, -2 + th + th * th, -1};
            for (int k = 0; k < 3; ++k) G[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)] = std::sqrt(w / 7) * y[k];
        }
        return G;
    }
    // Vandermonde on the primitive roots of z^T = i (cyclotomic rotation).
    for (int t = 0; t < T; ++t) {
        const cd zeta = std::polar(1.0, pi * (4 * t + 1) / (2.0 * T));
        cd p = 1;
        for (int k = 0; k < T; ++k) {
            G[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)] = p / std::sqrt(static_cast<double>(T));
            p *= zeta;
        }
    }
    return G;
}

std::uint64_t LatticeCodebook::size() const { return ipow(static_cast<std::uint64_t>(qam), T); }

std::vector<cd> LatticeCodebook::point(std::uint64_t index) const
{
    std::vector<cd> q(static_cast<std::size_t>(T));
    for (int t = 0; t < T; ++t) {
        q[static_cast<std::size_t>(t)] = constellation[index % static_cast<std::uint64_t>(qam)];
        index /= static_cast<std::uint64_t>(qam);
    }
    return q;
}

std::vector<cd> LatticeCodebook::encode(const std::vector<cd> &q) const
{
    std::vector<cd> c(static_cast<std::size_t>(T), 0.0);
    for (std::size_t t = 0; t < c.size(); ++t) {
        for (std::size_t k = 0; k < c.size(); ++k) c[t] += G[t][k] * q[k];
        c[t] *= theta;
    }
    return c;
}

std::vector<cd> LatticeCodebook::codeword(std::uint64_t index) const { return encode(point(index)); }

LatticeCodebook build_codebook(int T, double r, double P, double delta, int qam)
{
    if (T < 1 || T > 4) throw Error(ErrorCode::OutOfRange, "lattice dimension must be 1..4");
    if (!(r > 0 && r <= 1)) throw Error(ErrorCode::DomainError, "rate prelog r must lie in (0, 1]");
    if (!(P >= 1) || !std::isfinite(P)) throw Error(ErrorCode::DomainError, "P must be >= 1");
    if (!(delta > 0)) throw Error(ErrorCode::DomainError, "delta must be positive");
    if (qam == 0) {
        const double levels = std::round(r * std::log2(P) / 2); // log4 of P^r
        qam = static_cast<int>(std::lround(std::pow(4.0, std::max(1.0, std::min(levels, 15.0)))));
    }
    const int m = static_cast<int>(std::lround(std::sqrt(qam)));
    if (qam < 4 || m * m != qam || m % 2 != 0)
        throw Error(ErrorCode::DomainError, "QAM size must be an even square >= 4");
    if (std::pow(static_cast<double>(qam), T) > kCodewordBudget)
        throw Error(ErrorCode::BudgetExceeded, "codebook exceeds the enumeration budget of 1e6 codewords");

    LatticeCodebook cb;
    cb.T = T;
    cb.r = r;
    cb.P = P;
    cb.delta = delta;
    cb.theta = std::pow(P, (1 - r) / 2);
    cb.qam = qam;
    cb.G = lattice_generator(T);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) cb.constellation.emplace_back(2 * i - (m - 1), 2 * j - (m - 1));
    if (unitarity_error(cb) > 1e-12) throw Error(ErrorCode::ConstructionFailure, "generator is not unitary");
    return cb;
}

double unitarity_error(const LatticeCodebook &cb)
{
    double worst = 0;
    const auto T = static_cast<std::size_t>(cb.T);
    for (std::size_t a = 0; a < T; ++a)
        for (std::size_t b = 0; b < T; ++b) {
            cd s = 0;
            for (std::size_t t = 0; t < T; ++t) s += std::conj(cb.G[t][a]) * cb.G[t][b];
            worst = std::max(worst, std::abs(s - (a == b ? 1.0 : 0.0)));
        }
    return worst;
}

double mean_codeword_energy(const LatticeCodebook &cb)
{
    double s = 0;
    const std::uint64_t n = cb.size();
    for (std::uint64_t i = 0; i < n; ++i)
        for (const auto &x : cb.codeword(i)) s += std::norm(x);
    return s / static_cast<double>(n);
}

double min_product_distance(const LatticeCodebook &cb)
{
    double best = std::numeric_limits<double>::infinity();
    for_each_difference(cb, [&](const std::vector<cd> &dc) {
        require_nonvanishing(dc, cb.theta);
        double p = 1;
        for (const auto &x : dc) p *= std::norm(x);
        best = std::min(best, p);
    });
    return best;
}

namespace {

std::vector<double> whitening(const LatticeCodebook &cb, const std::vector<double> &alphas)
{
    if (alphas.size() != static_cast<std::size_t>(cb.T))
        throw Error(ErrorCode::MalformedInput, "need one exponent per lattice coordinate");
    std::vector<double> w;
    for (double a : alphas) {
        if (!(a >= 0 && a <= 1)) throw Error(ErrorCode::DomainError, "exponents must lie in [0, 1]");
        w.push_back(std::pow(cb.P, -a));
    }
    return w;
}

} // namespace

double whitened_min_distance(const LatticeCodebook &cb, const std::vector<double> &alphas)
{
    const auto w = whitening(cb, alphas);
    double best = std::numeric_limits<double>::infinity();
    for_each_difference(cb, [&](const std::vector<cd> &dc) {
        require_nonvanishing(dc, cb.theta);
        double s = 0;
        for (std::size_t t = 0; t < dc.size(); ++t) s += w[t] * std::norm(dc[t]);
        best = std::min(best, s);
    });
    return best;
}

double am_gm_slack(const LatticeCodebook &cb, const std::vector<double> &alphas)
{
    const auto w = whitening(cb, alphas);
    double worst = std::numeric_limits<double>::infinity();
    const double T = cb.T;
    for_each_difference(cb, [&](const std::vector<cd> &dc) {
        double sum = 0, logprod = 0;
        for (std::size_t t = 0; t < dc.size(); ++t) {
            const double x = w[t] * std::norm(dc[t]);
            sum += x;
            logprod += std::log(x);
        }
        const double rhs = T * std::exp(logprod / T);
        worst = std::min(worst, (sum - rhs) / sum);
    });
    return worst;
}

double decode_error_rate(const LatticeCodebook &cb, const std::vector<double> &alphas, int trials, std::uint64_t seed,
                         bool noiseless)
{
    if (trials < 1) throw Error(ErrorCode::OutOfRange, "trials must be positive");
    const auto w = whitening(cb, alphas);
    std::vector<double> gain;
    for (double x : w) gain.push_back(std::sqrt(x));
    const std::uint64_t n = cb.size();
    const auto T = static_cast<std::size_t>(cb.T);

    // Whitened codebook, computed once.
    std::vector<cd> book(n * T);
    for (std::uint64_t i = 0; i < n; ++i) {
        const auto c = cb.codeword(i);
        for (std::size_t t = 0; t < T; ++t) book[i * T + t] = gain[t] * c[t];
    }

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, n - 1);
    std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
    std::vector<cd> y(T);
    int errors = 0;
    for (int k = 0; k < trials; ++k) {
        const std::uint64_t sent = pick(rng);
        for (std::size_t t = 0; t < T; ++t) {
            const double re = nd(rng);
            const double im = nd(rng);
            y[t] = book[sent * T + t] + (noiseless ? cd(0, 0) : cd(re, im));
        }
        std::uint64_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::uint64_t i = 0; i < n; ++i) {
            double d = 0;
            for (std::size_t t = 0; t < T && d < best_d; ++t) d += std::norm(y[t] - book[i * T + t]);
            if (d < best_d) {
                best_d = d;
                best = i;
            }
        }
        errors += best != sent ? 1 : 0;
    }
    return static_cast<double>(errors) / trials;
}

} // namespace evocsit
