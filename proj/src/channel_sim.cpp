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

#include "evocsit/channel_sim.hpp"

#include <algorithm>
#include <array>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <thread>

#include "evocsit/error.hpp"

namespace evocsit {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

cdouble cn(std::mt19937_64 &rng)
{
    std::normal_distribution<double> n(0.0, std::sqrt(0.5));
    const double re = n(rng);
    const double im = n(rng);
    return {re, im};
}

CVec cn_vec(std::mt19937_64 &rng, int M)
{
    CVec v(static_cast<std::size_t>(M));
    for (auto &x : v) x = cn(rng);
    return v;
}

double norm2(const CVec &v)
{
    double s = 0;
    for (const auto &x : v) s += std::norm(x);
    return s;
}

CVec axpy(const CVec &x, double a, const CVec &y) // x + a*y
{
    CVec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + a * y[i];
    return r;
}

void check_grid(const std::vector<double> &grid)
{
    if (grid.size() < 2) throw Error(ErrorCode::InsufficientGrid, "SNR grid needs at least two points");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 1)) throw Error(ErrorCode::InsufficientGrid, "SNR grid points must exceed 1");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw Error(ErrorCode::InsufficientGrid, "SNR grid must be strictly increasing");
    }
    if (std::log10(grid.back() / grid.front()) < 3 - 1e-9)
        throw Error(ErrorCode::InsufficientGrid, "SNR grid must span at least three decades");
}

// Runs fn(trial) for every trial, possibly in parallel. fn writes only into
// storage owned by that trial, so the result does not depend on scheduling.
template <class Fn> void for_each_trial(int trials, unsigned threads, Fn &&fn)
{
    const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(trials)));
    if (n == 1) {
        for (int i = 0; i < trials; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < n; ++k)
        pool.emplace_back([&] {
            for (int i = next++; i < trials; i = next++) fn(i);
        });
    for (auto &t : pool) t.join();
}

enum class ProbeKind { Term, Iota, IotaCheck, IotaResidual, Noise, TxPower, CommonMI, MimoRate, QuantResidual, Overflow };

struct Probe {
    std::string label;
    ProbeKind kind;
    MeasureKind measure;
    double expected;
};

struct SlotProbes {
    int term[2][kNumClasses];
    int iota[2], check[2], resid[2], noise[2], common[2], mimo[2], qres[2], qover[2];
    int tx;
    SlotProbes()
    {
        for (auto &u : term)
            for (auto &x : u) x = -1;
        for (int i = 0; i < 2; ++i) iota[i] = check[i] = resid[i] = noise[i] = common[i] = mimo[i] = qres[i] = qover[i] = -1;
        tx = -1;
    }
};

// Everything a trial draws before P is known (common random numbers across the grid).
struct TrialDraws {
    CVec h, g, dh, dg;
    std::vector<CVec> eh, eg;
    std::vector<std::array<CVec, kNumClasses>> random_pre; // per slot, used for Random precoders
    std::vector<std::array<cdouble, kNumClasses>> sym;
    std::vector<std::array<cdouble, 2>> z, dither;
};

TrialDraws draw_trial(std::uint64_t seed, std::size_t T, int M)
{
    std::mt19937_64 rng(seed);
    TrialDraws d;
    d.h = cn_vec(rng, M);
    d.g = cn_vec(rng, M);
    d.dh = cn_vec(rng, M);
    d.dg = cn_vec(rng, M);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (std::size_t t = 0; t < T; ++t) {
        d.eh.push_back(cn_vec(rng, M));
        d.eg.push_back(cn_vec(rng, M));
        std::array<CVec, kNumClasses> pre;
        for (auto &v : pre) v = random_unit(rng, M);
        d.random_pre.push_back(pre);
        std::array<cdouble, kNumClasses> s;
        for (auto &x : s) x = cn(rng);
        d.sym.push_back(s);
        d.z.push_back({cn(rng), cn(rng)});
        const double d0 = u(rng), d1 = u(rng), d2 = u(rng), d3 = u(rng);
        d.dither.push_back({cdouble(d0, d1), cdouble(d2, d3)});
    }
    return d;
}

bool is_own(SymbolClass k, int user)
{
    return user == 0 ? (k == SymbolClass::A || k == SymbolClass::APrime) : (k == SymbolClass::B || k == SymbolClass::BPrime);
}

double log2det_rate(const std::vector<std::vector<cdouble>> &H, const std::vector<double> &noise,
                    const std::vector<double> &q)
{
    // A = I + Q^1/2 H^H K^-1 H Q^1/2, n <= 2 streams.
    const std::size_t n = q.size();
    cdouble A[2][2] = {{1, 0}, {0, 1}};
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            cdouble s = 0;
            for (std::size_t r = 0; r < H.size(); ++r) s += std::conj(H[r][a]) * H[r][b] / noise[r];
            A[a][b] += std::sqrt(q[a] * q[b]) * s;
        }
    const double det = n == 1 ? A[0][0].real() : (A[0][0] * A[1][1] - A[0][1] * A[1][0]).real();
    return std::log2(det);
}

} // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b)
{
    return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ (b * 0xd1b54a32d192ed03ULL));
}

unsigned default_thread_count()
{
    if (const char *env = std::getenv("EVOCSIT_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

cdouble dot_t(const CVec &a, const CVec &b)
{
    cdouble s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

CVec random_unit(std::mt19937_64 &rng, int M)
{
    CVec v = cn_vec(rng, M);
    const double n = std::sqrt(norm2(v));
    for (auto &x : v) x /= n;
    return v;
}

CVec orthogonal_precoder(const CVec &est)
{
    const std::size_t M = est.size();
    const double n = std::sqrt(norm2(est));
    if (M == 2) return {est[1] / n, -est[0] / n};
    // est^T x = 0  <=>  x is orthogonal to conj(est) in the Hermitian sense.
    CVec a(M);
    for (std::size_t i = 0; i < M; ++i) a[i] = std::conj(est[i]) / n;
    CVec best;
    double best_norm = -1;
    for (std::size_t m = 0; m < M; ++m) {
        CVec x(M, 0.0);
        x[m] = 1.0;
        const cdouble proj = std::conj(a[m]); // a^H e_m
        for (std::size_t i = 0; i < M; ++i) x[i] -= a[i] * proj;
        const double xn = norm2(x);
        if (xn > best_norm + 1e-12) {
            best_norm = xn;
            best = x;
        }
    }
    const double bn = std::sqrt(best_norm);
    for (auto &x : best) x /= bn;
    return best;
}

BlockRealization sample_block(double P, const QualityProfile &p, std::uint64_t seed, bool perfect_delayed, int M)
{
    std::mt19937_64 rng(mix_seed(seed, 0x5eed));
    BlockRealization b;
    b.M = M;
    b.P = P;
    b.h = cn_vec(rng, M);
    b.g = cn_vec(rng, M);
    for (std::size_t t = 0; t < p.slots(); ++t) {
        b.h_hat.push_back(axpy(b.h, -std::pow(P, -p.alpha(User::One, t) / 2), cn_vec(rng, M)));
        b.g_hat.push_back(axpy(b.g, -std::pow(P, -p.alpha(User::Two, t) / 2), cn_vec(rng, M)));
    }
    const CVec dh = cn_vec(rng, M), dg = cn_vec(rng, M);
    b.h_check = perfect_delayed ? b.h : axpy(b.h, -std::pow(P, -p.beta(User::One) / 2), dh);
    b.g_check = perfect_delayed ? b.g : axpy(b.g, -std::pow(P, -p.beta(User::Two) / 2), dg);
    return b;
}

double quantizer_noise_variance(double phi, double P, double source_exponent)
{
    if (phi <= 0) return std::numeric_limits<double>::infinity();
    const double R = 4 * std::pow(P, source_exponent / 2);
    const double step = 2 * R * std::pow(P, -phi / 2);
    return step * step / 6; // two real dimensions, step^2/12 each
}

QuantizerOutput quantize_interference(cdouble value, double phi, double P, double source_exponent, cdouble dither)
{
    if (phi < 0 || !std::isfinite(phi)) throw Error(ErrorCode::DomainError, "quantization prelog must be >= 0");
    QuantizerOutput out;
    if (phi == 0) {
        out.quantized = 0;
        out.residual = value;
        return out;
    }
    const double R = 4 * std::pow(P, source_exponent / 2);
    const double step = 2 * R * std::pow(P, -phi / 2);
    auto q1 = [&](double x, double d) {
        if (std::abs(x) > R) {
            out.overflow = true;
            x = std::clamp(x, -R, R);
        }
        return step * std::round(x / step + d) - step * d;
    };
    out.quantized = {q1(value.real(), dither.real()), q1(value.imag(), dither.imag())};
    out.residual = value - out.quantized;
    out.bits_per_dim = std::log2(2 * R / step + 2);
    return out;
}

std::vector<double> parse_grid(const std::string &spec)
{
    std::vector<double> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) {
        try {
            std::size_t used = 0;
            parts.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception &) {
            throw Error(ErrorCode::MalformedInput, "bad grid component '" + item + "'");
        }
    }
    if (parts.size() != 3 || parts[2] < 2 || parts[2] != std::floor(parts[2]) || !(parts[0] > 0) || !(parts[1] > parts[0]))
        throw Error(ErrorCode::MalformedInput, "grid must look like lo:hi:count with lo < hi and count >= 2");
    const int n = static_cast<int>(parts[2]);
    std::vector<double> grid;
    const double a = std::log10(parts[0]), b = std::log10(parts[1]);
    for (int i = 0; i < n; ++i) {
        const double e = a + (b - a) * i / (n - 1);
        const double r = std::round(e);
        grid.push_back(std::abs(e - r) < 1e-12 ? std::pow(10.0, r) : std::pow(10.0, e));
    }
    return grid;
}

SlopeFit fit_slope(const std::vector<double> &x, const std::vector<double> &y, const std::vector<double> &se)
{
    const std::size_t n = x.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    SlopeFit f;
    f.slope = sxy / sxx;
    double var = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = (x[i] - mx) / sxx;
        var += w * w * se[i] * se[i];
    }
    f.stderr_ = std::sqrt(var);
    return f;
}

bool PhaseReport::pass() const
{
    auto ok = [](const std::vector<ExponentMeasurement> &v) {
        return std::all_of(v.begin(), v.end(), [](const ExponentMeasurement &m) { return m.pass; });
    };
    return ok(terms) && ok(common) && ok(mimo) && ok(quantizer);
}

PhaseReport simulate_phase(const SchemeConfig &cfg, int phase, const SimOptions &opts)
{
    check_grid(opts.grid);
    if (opts.trials < 100) throw Error(ErrorCode::OutOfRange, "at least 100 trials per grid point are required");
    if (opts.M < 2) throw Error(ErrorCode::OutOfRange, "at least two transmit antennas are required");
    if (phase < 1 || phase > cfg.S) throw Error(ErrorCode::OutOfRange, "phase index out of range");

    const auto &prof = cfg.profile;
    const std::size_t T = prof.slots();
    const auto &row = cfg.table[static_cast<std::size_t>(phase - 1)];
    const bool perfect_delayed = cfg.kind != SchemeKind::X3;
    const double beta[2] = {prof.beta(User::One), prof.beta(User::Two)};
    const User users[2] = {User::One, User::Two};
    const std::string pre = "p" + std::to_string(phase);

    // Register probes.
    std::vector<Probe> probes;
    auto add = [&](std::string label, ProbeKind k, MeasureKind m, double e) {
        probes.push_back({std::move(label), k, m, e});
        return static_cast<int>(probes.size()) - 1;
    };
    std::vector<SlotProbes> sp(T);
    const bool vector_common = row[0].common_vector && row[0][SymbolClass::C].active;
    int vec_common[2] = {-1, -1};
    for (std::size_t t = 0; t < T; ++t) {
        const auto &a = row[t];
        const std::string st = pre + ".t" + std::to_string(t + 1);
        double pmax = -1;
        for (auto k : kAllClasses)
            if (a[k].active) pmax = std::max(pmax, a[k].power);
        for (int i = 0; i < 2; ++i) {
            const std::string su = st + ".u" + std::to_string(i + 1);
            const double alpha = prof.alpha(users[i], t);
            const Precoder nulls = i == 0 ? Precoder::OrthH : Precoder::OrthG;
            double other_pmax = -std::numeric_limits<double>::infinity();
            for (auto k : kAllClasses) {
                const auto &c = a[k];
                if (!c.active) continue;
                const double e = c.power - (c.precoder == nulls ? alpha : 0.0);
                sp[t].term[i][static_cast<std::size_t>(k)] =
                    add(su + ".term." + to_string(k), ProbeKind::Term, MeasureKind::Power, e);
                if (k != SymbolClass::C && !is_own(k, i)) other_pmax = std::max(other_pmax, c.power);
            }
            const double ie = interference_exponent(a, users[i], alpha);
            if (std::isfinite(ie)) {
                sp[t].iota[i] = add(su + ".iota", ProbeKind::Iota, MeasureKind::Power, ie);
                sp[t].check[i] = add(su + ".iota_check", ProbeKind::IotaCheck, MeasureKind::Power, ie);
                if (!perfect_delayed)
                    sp[t].resid[i] =
                        add(su + ".iota_residual", ProbeKind::IotaResidual, MeasureKind::Power, other_pmax - beta[i]);
            }
            sp[t].noise[i] = add(su + ".noise", ProbeKind::Noise, MeasureKind::Power, 0.0);
            if (a[SymbolClass::C].active)
                sp[t].common[i] = add(su + ".common_mi", ProbeKind::CommonMI, MeasureKind::Rate, a[SymbolClass::C].rate);
            if (a.private_rate(users[i]) > 0)
                sp[t].mimo[i] = add(su + ".mimo", ProbeKind::MimoRate, MeasureKind::Rate, a.private_rate(users[i]));
            const double phi = i == 0 ? a.phi1 : a.phi2;
            if (phi > 0) {
                sp[t].qres[i] = add(su + ".quant_residual", ProbeKind::QuantResidual, MeasureKind::Power, 0.0);
                sp[t].qover[i] = add(su + ".quant_overflow", ProbeKind::Overflow, MeasureKind::Power, 0.0);
            }
        }
        sp[t].tx = add(st + ".tx_power", ProbeKind::TxPower, MeasureKind::Power, pmax);
    }
    if (vector_common) {
        double total = 0;
        for (const auto &a : row) total += a[SymbolClass::C].rate;
        for (int i = 0; i < 2; ++i)
            vec_common[i] = add(pre + ".block.u" + std::to_string(i + 1) + ".common_mi", ProbeKind::CommonMI,
                                MeasureKind::Rate, total);
    }

    const std::size_t nP = opts.grid.size();
    const std::size_t nprobe = probes.size();
    const auto trials = static_cast<std::size_t>(opts.trials);
    std::vector<double> values(trials * nprobe * nP, 0.0);
    std::vector<std::size_t> redraws(trials, 0);

    auto run_trial = [&](int trial) {
        const auto tr = static_cast<std::size_t>(trial);
        for (std::size_t attempt = 0;; ++attempt) {
            const auto d = draw_trial(mix_seed(opts.seed, static_cast<std::uint64_t>(phase), tr * 64 + attempt), T, opts.M);
            double *out = &values[tr * nprobe * nP];
            bool singular = false;
            for (std::size_t ip = 0; ip < nP && !singular; ++ip) {
                const double P = opts.grid[ip];
                auto put = [&](int probe, double v) {
                    if (probe >= 0) out[static_cast<std::size_t>(probe) * nP + ip] = v;
                };
                const CVec hc = perfect_delayed ? d.h : axpy(d.h, -std::pow(P, -beta[0] / 2), d.dh);
                const CVec gc = perfect_delayed ? d.g : axpy(d.g, -std::pow(P, -beta[1] / 2), d.dg);
                const CVec *chan[2] = {&d.h, &d.g};
                const CVec *delayed[2] = {&hc, &gc};
                double vec_mi[2] = {0, 0};
                for (std::size_t t = 0; t < T && !singular; ++t) {
                    const auto &a = row[t];
                    const CVec hh = axpy(d.h, -std::pow(P, -prof.alpha(User::One, t) / 2), d.eh[t]);
                    const CVec gh = axpy(d.g, -std::pow(P, -prof.alpha(User::Two, t) / 2), d.eg[t]);
                    std::array<CVec, kNumClasses> x;
                    std::array<double, kNumClasses> var{};
                    int K = 0;
                    for (auto k : kAllClasses) K += a[k].active ? 1 : 0;
                    for (auto k : kAllClasses) {
                        const auto ki = static_cast<std::size_t>(k);
                        if (!a[k].active) continue;
                        switch (a[k].precoder) {
                        case Precoder::OrthG: x[ki] = orthogonal_precoder(gh); break;
                        case Precoder::OrthH: x[ki] = orthogonal_precoder(hh); break;
                        case Precoder::Random: x[ki] = d.random_pre[t][ki]; break;
                        }
                        // Splitting by K keeps E||x||^2 <= P exactly.
                        var[ki] = std::pow(P, a[k].power) / K;
                    }
                    // transmit power
                    CVec xs(static_cast<std::size_t>(opts.M), 0.0);
                    for (auto k : kAllClasses) {
                        const auto ki = static_cast<std::size_t>(k);
                        if (!a[k].active) continue;
                        const cdouble s = std::sqrt(var[ki]) * d.sym[t][ki];
                        for (std::size_t m = 0; m < xs.size(); ++m) xs[m] += x[ki][m] * s;
                    }
                    put(sp[t].tx, norm2(xs));

                    for (int i = 0; i < 2; ++i) {
                        const int j = 1 - i;
                        const CVec &c = *chan[i];
                        double pw[kNumClasses] = {};
                        double others = 0, iota = 0, check = 0, resid = 0;
                        for (auto k : kAllClasses) {
                            const auto ki = static_cast<std::size_t>(k);
                            if (!a[k].active) continue;
                            pw[ki] = std::norm(dot_t(c, x[ki])) * var[ki];
                            put(sp[t].term[i][ki], pw[ki]);
                            if (k != SymbolClass::C) others += pw[ki];
                            if (k != SymbolClass::C && !is_own(k, i)) {
                                iota += pw[ki];
                                check += std::norm(dot_t(*delayed[i], x[ki])) * var[ki];
                                CVec err = axpy(c, -1.0, *delayed[i]);
                                resid += std::norm(dot_t(err, x[ki])) * var[ki];
                            }
                        }
                        put(sp[t].iota[i], iota);
                        put(sp[t].check[i], check);
                        put(sp[t].resid[i], resid);
                        put(sp[t].noise[i], std::norm(d.z[t][static_cast<std::size_t>(i)]));
                        if (a[SymbolClass::C].active) {
                            const double mi = std::log2(1 + pw[0] / (others + 1));
                            put(sp[t].common[i], mi);
                            vec_mi[i] += mi;
                        }

                        const double alpha_j = prof.alpha(users[j], t);
                        const double phi_i = i == 0 ? a.phi1 : a.phi2;
                        const double phi_j = j == 0 ? a.phi1 : a.phi2;
                        const double e_i = interference_exponent(a, users[i], prof.alpha(users[i], t));
                        const double e_j = interference_exponent(a, users[j], alpha_j);

                        // Quantizer acting on the realized delayed reconstruction of i's interference.
                        if (phi_i > 0) {
                            cdouble value = 0;
                            for (auto k : kAllClasses) {
                                const auto ki = static_cast<std::size_t>(k);
                                if (!a[k].active || k == SymbolClass::C || is_own(k, i)) continue;
                                value += dot_t(*delayed[i], x[ki]) * std::sqrt(var[ki]) * d.sym[t][ki];
                            }
                            const auto q = quantize_interference(value, phi_i, P, e_i, d.dither[t][static_cast<std::size_t>(i)]);
                            put(sp[t].qres[i], std::norm(q.residual));
                            put(sp[t].qover[i], q.overflow ? 1.0 : 0.0);
                        }

                        // Effective MIMO channel for user i's private streams.
                        if (sp[t].mimo[i] >= 0) {
                            std::vector<std::size_t> streams;
                            for (auto k : kAllClasses)
                                if (a[k].active && is_own(k, i)) streams.push_back(static_cast<std::size_t>(k));
                            std::vector<std::vector<cdouble>> H;
                            std::vector<double> noise, q;
                            for (auto ki : streams) q.push_back(var[ki]);
                            std::vector<cdouble> r1;
                            for (auto ki : streams) r1.push_back(dot_t(c, x[ki]));
                            H.push_back(r1);
                            noise.push_back(1 + (phi_i > 0 ? resid + quantizer_noise_variance(phi_i, P, e_i) : iota));
                            if (phi_j > 0) {
                                std::vector<cdouble> r2;
                                for (auto ki : streams) r2.push_back(dot_t(*delayed[j], x[ki]));
                                H.push_back(r2);
                                noise.push_back(quantizer_noise_variance(phi_j, P, e_j));
                                if (streams.size() == 2) {
                                    const double det = std::norm(H[0][0] * H[1][1] - H[0][1] * H[1][0]);
                                    const double scale = norm2(H[0]) * norm2(H[1]);
                                    if (det < 1e-24 * scale) singular = true;
                                }
                            }
                            put(sp[t].mimo[i], log2det_rate(H, noise, q));
                        }
                    }
                }
                for (int i = 0; i < 2; ++i) put(vec_common[i], vec_mi[i]);
            }
            if (!singular) {
                redraws[tr] = attempt;
                return;
            }
        }
    };
    for_each_trial(opts.trials, opts.threads ? opts.threads : default_thread_count(), run_trial);

    // Fixed-order reduction: identical output for any thread count.
    std::vector<double> sum(nprobe * nP, 0.0), sumsq(nprobe * nP, 0.0);
    for (std::size_t tr = 0; tr < trials; ++tr)
        for (std::size_t k = 0; k < nprobe * nP; ++k) {
            const double v = values[tr * nprobe * nP + k];
            sum[k] += v;
            sumsq[k] += v * v;
        }

    auto measurement = [&](std::size_t pi) {
        ExponentMeasurement m;
        m.label = probes[pi].label;
        m.kind = probes[pi].measure;
        m.expected = probes[pi].expected;
        m.P = opts.grid;
        m.trials = opts.trials;
        const double n = static_cast<double>(trials);
        std::vector<double> x, y, se;
        for (std::size_t ip = 0; ip < nP; ++ip) {
            const double mean = sum[pi * nP + ip] / n;
            const double var = std::max(0.0, (sumsq[pi * nP + ip] / n - mean * mean) * n / (n - 1));
            const double sem = std::sqrt(var / n);
            m.mean.push_back(mean);
            m.sem.push_back(sem);
            if (m.kind == MeasureKind::Power) {
                x.push_back(std::log10(opts.grid[ip]));
                y.push_back(std::log10(mean));
                se.push_back(sem / (mean * std::log(10.0)));
            } else {
                x.push_back(std::log2(opts.grid[ip]));
                y.push_back(mean);
                se.push_back(sem);
            }
        }
        const auto f = fit_slope(x, y, se);
        m.slope = f.slope;
        m.stderr_ = f.stderr_;
        m.pass = std::abs(m.slope - m.expected) <= opts.tolerance;
        return m;
    };

    PhaseReport rep;
    rep.phase = phase;
    for (auto r : redraws) rep.resampled += r;
    double over = 0, over_n = 0;
    for (std::size_t pi = 0; pi < nprobe; ++pi) {
        switch (probes[pi].kind) {
        case ProbeKind::Term:
        case ProbeKind::Iota:
        case ProbeKind::IotaCheck:
        case ProbeKind::IotaResidual:
        case ProbeKind::Noise:
        case ProbeKind::TxPower: rep.terms.push_back(measurement(pi)); break;
        case ProbeKind::MimoRate: rep.mimo.push_back(measurement(pi)); break;
        case ProbeKind::QuantResidual: rep.quantizer.push_back(measurement(pi)); break;
        case ProbeKind::Overflow:
            over += sum[pi * nP + nP - 1];
            over_n += static_cast<double>(trials);
            break;
        case ProbeKind::CommonMI: break;
        }
    }
    rep.overflow_fraction = over_n > 0 ? over / over_n : 0.0;

    // Common rate: the weaker user's mean mutual information at each P.
    auto common_min = [&](int p1, int p2, const std::string &label) {
        auto m1 = measurement(static_cast<std::size_t>(p1));
        auto m2 = measurement(static_cast<std::size_t>(p2));
        ExponentMeasurement m = m1;
        m.label = label;
        std::vector<double> x, se;
        for (std::size_t ip = 0; ip < nP; ++ip) {
            if (m2.mean[ip] < m1.mean[ip]) {
                m.mean[ip] = m2.mean[ip];
                m.sem[ip] = m2.sem[ip];
            }
            x.push_back(std::log2(opts.grid[ip]));
        }
        const auto f = fit_slope(x, m.mean, m.sem);
        m.slope = f.slope;
        m.stderr_ = f.stderr_;
        m.pass = std::abs(m.slope - m.expected) <= opts.tolerance;
        return m;
    };
    if (vector_common) {
        rep.common.push_back(common_min(vec_common[0], vec_common[1], pre + ".block.common"));
    } else {
        for (std::size_t t = 0; t < T; ++t)
            if (sp[t].common[0] >= 0)
                rep.common.push_back(common_min(sp[t].common[0], sp[t].common[1], pre + ".t" + std::to_string(t + 1) + ".common"));
    }
    return rep;
}

std::vector<ExponentMeasurement> term_exponents(const SchemeConfig &cfg, int phase, const SimOptions &opts)
{
    return simulate_phase(cfg, phase, opts).terms;
}

std::vector<ExponentMeasurement> rate_prelog_common(const SchemeConfig &cfg, int phase, const SimOptions &opts)
{
    return simulate_phase(cfg, phase, opts).common;
}

std::vector<ExponentMeasurement> rate_prelog_mimo(const SchemeConfig &cfg, int phase, User user, const SimOptions &opts)
{
    auto all = simulate_phase(cfg, phase, opts).mimo;
    const std::string tag = user == User::One ? ".u1." : ".u2.";
    std::vector<ExponentMeasurement> out;
    for (auto &m : all)
        if (m.label.find(tag) != std::string::npos) out.push_back(std::move(m));
    return out;
}

namespace {

ErrorPowerSample error_power(double P, double exponent, int trials, std::uint64_t seed, int M)
{
    double s = 0, s2 = 0;
    for (int k = 0; k < trials; ++k) {
        std::mt19937_64 rng(mix_seed(seed, 0xe77, static_cast<std::uint64_t>(k)));
        const double v = norm2(cn_vec(rng, M)) * std::pow(P, -exponent) / M;
        s += v;
        s2 += v * v;
    }
    const double n = trials;
    const double mean = s / n;
    return {mean, std::sqrt(std::max(0.0, s2 / n - mean * mean) / (n - 1))};
}

} // namespace

ErrorPowerSample current_error_power(double P, double alpha, int trials, std::uint64_t seed, int M)
{
    return error_power(P, alpha, trials, seed, M);
}

ErrorPowerSample delayed_error_power(double P, double beta, int trials, std::uint64_t seed, int M)
{
    return error_power(P, beta, trials, seed ^ 0xde1a7ULL, M);
}

} // namespace evocsit
