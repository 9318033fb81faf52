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

#include "evocsit/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "evocsit/error.hpp"

namespace evocsit {

namespace {

constexpr double kLedgerTol = 1e-9;

ClassAllocation cls(double power, double rate, Precoder pre = Precoder::Random)
{
    return {true, power, rate, pre};
}

// Drops classes whose rate is zero so they never contribute power or streams.
void prune(SlotAllocation &s)
{
    for (auto &c : s.classes)
        if (c.active && c.rate <= 0.0 && c.power <= 0.0) c = {};
}

struct Averages {
    double a1, a2;
};

Averages averages(const QualityProfile &p)
{
    return {average_exponent(p, User::One), average_exponent(p, User::Two)};
}

bool case1(const Averages &av) { return 2 * av.a1 - av.a2 < 1 - kExponentTol; }

SlotAllocation x11_slot(int phase, int S, double a1, double a2, double delta)
{
    SlotAllocation s;
    if (phase == 1) {
        s[SymbolClass::A] = cls(1, 1, Precoder::OrthG);
        s[SymbolClass::APrime] = cls(1 - a2, 1 - a2);
        s[SymbolClass::B] = cls(1, 1, Precoder::OrthH);
        s[SymbolClass::BPrime] = cls(1 - a1, 1 - a1);
        s.phi1 = 1 - a1;
        s.phi2 = 1 - a2;
    } else if (phase < S) {
        s[SymbolClass::C] = cls(1, 1 - a1 - delta);
        s[SymbolClass::A] = cls(a1 + delta, a1 + delta, Precoder::OrthG);
        s[SymbolClass::APrime] = cls(a1 - a2 + delta, a1 - a2 + delta);
        s[SymbolClass::B] = cls(a1 + delta, a1 + delta, Precoder::OrthH);
        s[SymbolClass::BPrime] = cls(delta, delta);
        s.phi1 = delta;
        s.phi2 = a1 - a2 + delta;
    } else {
        s[SymbolClass::C] = cls(1, 1 - a2);
        s[SymbolClass::A] = cls(a2, a2, Precoder::OrthG);
        s[SymbolClass::B] = cls(a2, a2, Precoder::OrthH);
    }
    return s;
}

SlotAllocation x12_slot(int phase, int S, double a1, double a2)
{
    SlotAllocation s;
    if (phase == 1) {
        s[SymbolClass::A] = cls(1, 1, Precoder::OrthG);
        s[SymbolClass::APrime] = cls(1 - a2, 1 - a2);
        s[SymbolClass::B] = cls(a1, a1, Precoder::OrthH);
        s.phi2 = 1 - a2;
    } else if (phase < S) {
        s[SymbolClass::C] = cls(1, 1 - a1);
        s[SymbolClass::A] = cls(a1, a1, Precoder::OrthG);
        s[SymbolClass::APrime] = cls(a1 - a2, a1 - a2);
        s[SymbolClass::B] = cls(a1, a1, Precoder::OrthH);
        s.phi2 = a1 - a2;
    } else {
        s[SymbolClass::C] = cls(1, 1 - a2);
        s[SymbolClass::A] = cls(a2, a2, Precoder::OrthG);
        s[SymbolClass::B] = cls(a2, a2, Precoder::OrthH);
    }
    return s;
}

// Terminal block shared by X2 and X3: vector-coded common plus one private
// stream per user at the other user's exponent.
SlotAllocation vector_terminal_slot(double a1, double a2, double abar)
{
    SlotAllocation s;
    s[SymbolClass::C] = cls(1, 1 - abar);
    s[SymbolClass::A] = cls(a2, a2, Precoder::OrthG);
    s[SymbolClass::B] = cls(a1, a1, Precoder::OrthH);
    s.common_vector = true;
    return s;
}

SlotAllocation x2_slot(int phase, double a1, double a2, double abar)
{
    if (phase == 2) return vector_terminal_slot(a1, a2, abar);
    SlotAllocation s;
    s[SymbolClass::A] = cls(1, 1, Precoder::OrthG);
    s[SymbolClass::APrime] = cls(1 - a2, 1 - a2);
    s[SymbolClass::B] = cls(1, 1, Precoder::OrthH);
    s[SymbolClass::BPrime] = cls(1 - a1, 1 - a1);
    s.phi1 = 1 - a1;
    s.phi2 = 1 - a2;
    return s;
}

SlotAllocation x3_slot(int phase, int S, double a1, double a2, double abar, double beta)
{
    if (phase == S) return vector_terminal_slot(a1, a2, abar);
    SlotAllocation s;
    s[SymbolClass::C] = cls(1, 1 - beta);
    s[SymbolClass::A] = cls(beta, beta, Precoder::OrthG);
    s[SymbolClass::APrime] = cls(beta - a2, beta - a2);
    s[SymbolClass::B] = cls(beta, beta, Precoder::OrthH);
    s[SymbolClass::BPrime] = cls(beta - a1, beta - a1);
    s.phi1 = beta - a1;
    s.phi2 = beta - a2;
    s.common_fresh = phase == 1;
    return s;
}

// Per-block production (sum over slots of phi1+phi2) and per-block common load.
double block_produced(const std::vector<SlotAllocation> &phase)
{
    double sum = 0;
    for (const auto &s : phase) sum += s.phi1 + s.phi2;
    return sum;
}

double block_common(const std::vector<SlotAllocation> &phase)
{
    double sum = 0;
    for (const auto &s : phase) sum += s[SymbolClass::C].rate;
    return sum;
}

bool nearly_equal(double x, double y)
{
    return std::abs(x - y) <= kLedgerTol * std::max(1.0, std::max(std::abs(x), std::abs(y)));
}

void round_durations(SchemeConfig &cfg)
{
    auto &d = cfg.durations;
    d[0] = std::max(1.0, std::floor(d[0] + 1e-9));
    for (std::size_t s = 1; s < d.size(); ++s) {
        const double load = block_common(cfg.table[s]);
        const double need = d[s - 1] * block_produced(cfg.table[s - 1]);
        if (cfg.table[s][0].common_fresh || load <= 0) {
            d[s] = std::max(1.0, std::floor(d[s] + 1e-9));
            continue;
        }
        // Each later phase must carry all the bits of the previous one.
        d[s] = need <= kLedgerTol ? 0.0 : std::ceil(need / load - 1e-9);
    }
}

} // namespace

double SlotAllocation::private_rate(User user) const
{
    const auto &p = user == User::One ? (*this)[SymbolClass::A] : (*this)[SymbolClass::B];
    const auto &q = user == User::One ? (*this)[SymbolClass::APrime] : (*this)[SymbolClass::BPrime];
    return (p.active ? p.rate : 0.0) + (q.active ? q.rate : 0.0);
}

double interference_exponent(const SlotAllocation &slot, User victim, double alpha_victim)
{
    const bool one = victim == User::One;
    const SymbolClass main = one ? SymbolClass::B : SymbolClass::A;
    const SymbolClass extra = one ? SymbolClass::BPrime : SymbolClass::APrime;
    const Precoder nulls_victim = one ? Precoder::OrthH : Precoder::OrthG;
    double e = -std::numeric_limits<double>::infinity();
    for (SymbolClass k : {main, extra}) {
        const auto &c = slot[k];
        if (!c.active) continue;
        e = std::max(e, c.power - (c.precoder == nulls_victim ? alpha_victim : 0.0));
    }
    return e;
}

std::string to_string(SchemeKind kind)
{
    switch (kind) {
    case SchemeKind::X11: return "X11";
    case SchemeKind::X12: return "X12";
    case SchemeKind::X13: return "X13";
    case SchemeKind::X2: return "X2";
    case SchemeKind::X3: return "X3";
    }
    return "?";
}

SchemeKind scheme_kind_from_string(const std::string &name)
{
    std::string upper = name;
    if (!upper.empty() && upper[0] == 'x') upper[0] = 'X';
    for (auto k : {SchemeKind::X11, SchemeKind::X12, SchemeKind::X13, SchemeKind::X2, SchemeKind::X3})
        if (upper == to_string(k)) return k;
    throw Error(ErrorCode::MalformedInput, "unknown scheme kind '" + name + "'");
}

std::string to_string(CommonAssignment a)
{
    switch (a) {
    case CommonAssignment::Split: return "split";
    case CommonAssignment::User1: return "user1";
    case CommonAssignment::User2: return "user2";
    }
    return "?";
}

CommonAssignment common_assignment_from_string(const std::string &name)
{
    for (auto a : {CommonAssignment::Split, CommonAssignment::User1, CommonAssignment::User2})
        if (name == to_string(a)) return a;
    throw Error(ErrorCode::MalformedInput, "unknown common assignment '" + name + "'");
}

std::string to_string(SymbolClass k)
{
    switch (k) {
    case SymbolClass::C: return "c";
    case SymbolClass::A: return "a";
    case SymbolClass::APrime: return "a'";
    case SymbolClass::B: return "b";
    case SymbolClass::BPrime: return "b'";
    }
    return "?";
}

std::string to_string(Precoder p)
{
    switch (p) {
    case Precoder::Random: return "random";
    case Precoder::OrthG: return "orth-g";
    case Precoder::OrthH: return "orth-h";
    }
    return "?";
}

SchemeConfig build_scheme(SchemeKind kind, const QualityProfile &p, const SchemeOptions &opts)
{
    const bool asym = kind == SchemeKind::X11 || kind == SchemeKind::X12 || kind == SchemeKind::X13;
    require_valid(p, asym ? ProfileMode::Asymmetric : ProfileMode::PartiallySymmetric);
    if (!std::isfinite(opts.T1) || opts.T1 <= 0) throw Error(ErrorCode::DomainError, "T1 must be positive");

    SchemeConfig cfg;
    cfg.kind = kind;
    cfg.profile = p;
    cfg.T1 = opts.T1;
    cfg.rounded = opts.round;
    cfg.assignment = opts.assignment.value_or(kind == SchemeKind::X13 ? CommonAssignment::User2
                                                                       : CommonAssignment::Split);
    cfg.omega = opts.omega.value_or(0.5);
    if (!(cfg.omega >= 0 && cfg.omega <= 1)) throw Error(ErrorCode::DomainError, "omega must lie in [0,1]");

    const auto av = averages(p);
    const auto T = p.slots();
    const double beta = p.beta();
    const bool truncated = cfg.assignment != CommonAssignment::Split;

    auto check_S = [&](int fallback, int min_S) {
        cfg.S = opts.S == 0 ? fallback : opts.S;
        if (cfg.S < min_S)
            throw Error(ErrorCode::OutOfRange,
                        to_string(kind) + " needs at least " + std::to_string(min_S) + " phases");
    };

    switch (kind) {
    case SchemeKind::X11: {
        if (truncated) throw Error(ErrorCode::DomainError, "X11 has no common-information assignment");
        if (!case1(av))
            throw Error(ErrorCode::WrongCase, "X11 needs 2*abar1 - abar2 < 1");
        check_S(kDefaultPhases, 3);
        const double a1max = *std::max_element(p.alpha1().begin(), p.alpha1().end());
        // Upper limit keeps every middle-phase common rate 1 - alpha1_t - delta non-negative.
        const double hi = (1 - 2 * av.a1 + av.a2) / 3;
        const double cap = std::min(hi, 1 - a1max);
        if (cap <= 0) throw Error(ErrorCode::DegenerateParameters, "no admissible delta: some alpha1_t equals 1");
        cfg.delta = opts.delta.value_or(cap == hi ? hi / 2 : cap / 2);
        if (!(cfg.delta > 0 && cfg.delta < hi) || cfg.delta > cap + kExponentTol)
            throw Error(ErrorCode::InvalidDelta, "delta must lie in (0, (1 - 2*abar1 + abar2)/3) and not exceed 1 - max alpha1_t");
        const double den = 1 - av.a1 - cfg.delta;
        if (den <= 0 || 1 - av.a2 <= 0) throw Error(ErrorCode::DegenerateParameters, "X11 duration ratios undefined");
        cfg.mu = (av.a1 - av.a2 + 2 * cfg.delta) / den;
        cfg.eps1 = (2 - av.a1 - av.a2) / den;
        cfg.eps2 = (av.a1 - av.a2 + 2 * cfg.delta) / (1 - av.a2);
        cfg.durations.assign(static_cast<std::size_t>(cfg.S), 0.0);
        cfg.durations[0] = cfg.T1;
        for (int s = 2; s <= cfg.S - 1; ++s) cfg.durations[s - 1] = cfg.T1 * cfg.eps1 * std::pow(cfg.mu, s - 2);
        cfg.durations[cfg.S - 1] = cfg.durations[cfg.S - 2] * cfg.eps2;
        for (int s = 1; s <= cfg.S; ++s) {
            std::vector<SlotAllocation> row;
            for (std::size_t t = 0; t < T; ++t) row.push_back(x11_slot(s, cfg.S, p.alpha1()[t], p.alpha2()[t], cfg.delta));
            cfg.table.push_back(std::move(row));
        }
        break;
    }
    case SchemeKind::X12: {
        if (truncated) throw Error(ErrorCode::DomainError, "X12 has no common-information assignment");
        check_S(kDefaultPhases, 3);
        if (1 - av.a1 <= 0) throw Error(ErrorCode::DegenerateParameters, "X12 needs abar1 < 1");
        cfg.eta = (av.a1 - av.a2) / (1 - av.a1);
        cfg.varphi1 = (1 - av.a2) / (1 - av.a1);
        cfg.varphi2 = (av.a1 - av.a2) / (1 - av.a2);
        cfg.durations.assign(static_cast<std::size_t>(cfg.S), 0.0);
        cfg.durations[0] = cfg.T1;
        for (int s = 2; s <= cfg.S - 1; ++s) cfg.durations[s - 1] = cfg.T1 * cfg.varphi1 * std::pow(cfg.eta, s - 2);
        cfg.durations[cfg.S - 1] = cfg.durations[cfg.S - 2] * cfg.varphi2;
        for (int s = 1; s <= cfg.S; ++s) {
            std::vector<SlotAllocation> row;
            for (std::size_t t = 0; t < T; ++t) row.push_back(x12_slot(s, cfg.S, p.alpha1()[t], p.alpha2()[t]));
            cfg.table.push_back(std::move(row));
        }
        break;
    }
    case SchemeKind::X13: {
        if (!truncated) throw Error(ErrorCode::DomainError, "X13 assigns its common information to one user");
        check_S(1, 1);
        if (cfg.S != 1) throw Error(ErrorCode::OutOfRange, "X13 is a single terminal block");
        cfg.durations = {cfg.T1};
        std::vector<SlotAllocation> row;
        for (std::size_t t = 0; t < T; ++t) {
            auto s = x12_slot(3, 3, p.alpha1()[t], p.alpha2()[t]);
            s.common_fresh = true;
            row.push_back(s);
        }
        cfg.table.push_back(std::move(row));
        break;
    }
    case SchemeKind::X2:
    case SchemeKind::X3: {
        const double abar = 0.5 * (av.a1 + av.a2);
        if (truncated) {
            check_S(1, 1);
            if (cfg.S != 1) throw Error(ErrorCode::OutOfRange, "a user-assigned variant is a single terminal block");
            cfg.durations = {cfg.T1};
            std::vector<SlotAllocation> row;
            for (std::size_t t = 0; t < T; ++t) {
                auto s = vector_terminal_slot(p.alpha1()[t], p.alpha2()[t], abar);
                s.common_fresh = true;
                row.push_back(s);
            }
            cfg.table.push_back(std::move(row));
            break;
        }
        if (kind == SchemeKind::X2) {
            check_S(2, 2);
            if (cfg.S != 2) throw Error(ErrorCode::OutOfRange, "X2 has exactly two phases");
            cfg.durations = {cfg.T1, 2 * cfg.T1};
            for (int s = 1; s <= 2; ++s) {
                std::vector<SlotAllocation> row;
                for (std::size_t t = 0; t < T; ++t) row.push_back(x2_slot(s, p.alpha1()[t], p.alpha2()[t], abar));
                cfg.table.push_back(std::move(row));
            }
            break;
        }
        check_S(kDefaultPhases, 2);
        if (beta >= 1 || abar >= 1)
            throw Error(ErrorCode::DegenerateParameters, "X3 duration ratios need beta < 1 and abar < 1");
        cfg.xi = 2 * (beta - abar) / (1 - beta);
        cfg.zeta = 2 * (beta - abar) / (1 - abar);
        cfg.durations.assign(static_cast<std::size_t>(cfg.S), 0.0);
        for (int s = 1; s <= cfg.S - 1; ++s) cfg.durations[s - 1] = cfg.T1 * std::pow(cfg.xi, s - 1);
        cfg.durations[cfg.S - 1] = cfg.durations[cfg.S - 2] * cfg.zeta;
        for (int s = 1; s <= cfg.S; ++s) {
            std::vector<SlotAllocation> row;
            for (std::size_t t = 0; t < T; ++t)
                row.push_back(x3_slot(s, cfg.S, p.alpha1()[t], p.alpha2()[t], abar, beta));
            cfg.table.push_back(std::move(row));
        }
        break;
    }
    }

    for (auto &row : cfg.table)
        for (auto &s : row) prune(s);
    if (cfg.rounded) round_durations(cfg);
    return cfg;
}

const SlotAllocation &allocation(const SchemeConfig &cfg, int phase, int t)
{
    if (phase < 1 || phase > cfg.S) throw Error(ErrorCode::OutOfRange, "phase index out of range");
    if (t < 1 || t > static_cast<int>(cfg.profile.slots())) throw Error(ErrorCode::OutOfRange, "slot index out of range");
    return cfg.table[static_cast<std::size_t>(phase - 1)][static_cast<std::size_t>(t - 1)];
}

QuantizationLedger quantization_ledger(const SchemeConfig &cfg)
{
    QuantizationLedger L;
    for (int s = 1; s <= cfg.S; ++s) {
        const auto i = static_cast<std::size_t>(s - 1);
        LedgerEntry e;
        e.phase = s;
        e.produced = cfg.durations[i] * block_produced(cfg.table[i]);
        if (s < cfg.S) e.consumed = cfg.durations[i + 1] * block_common(cfg.table[i + 1]);
        e.balanced = nearly_equal(e.produced, e.consumed);
        e.feasible = e.consumed >= e.produced - kLedgerTol * std::max(1.0, e.produced);
        L.balanced = L.balanced && e.balanced;
        L.feasible = L.feasible && e.feasible;
        L.phases.push_back(e);
    }
    return L;
}

DofPoint dof_finite(const SchemeConfig &cfg)
{
    double d1 = 0, d2 = 0, total = 0;
    const auto T = static_cast<double>(cfg.profile.slots());
    for (int s = 1; s <= cfg.S; ++s) {
        const auto i = static_cast<std::size_t>(s - 1);
        double u1 = 0, u2 = 0;
        for (const auto &slot : cfg.table[i]) {
            u1 += slot.private_rate(User::One);
            u2 += slot.private_rate(User::Two);
            const auto &c = slot[SymbolClass::C];
            if (!slot.common_fresh || !c.active) continue;
            switch (cfg.assignment) {
            case CommonAssignment::Split:
                u1 += cfg.omega * c.rate;
                u2 += (1 - cfg.omega) * c.rate;
                break;
            case CommonAssignment::User1: u1 += c.rate; break;
            case CommonAssignment::User2: u2 += c.rate; break;
            }
        }
        d1 += cfg.durations[i] * u1;
        d2 += cfg.durations[i] * u2;
        total += cfg.durations[i] * T;
    }
    return {d1 / total, d2 / total};
}

DofPoint dof_limit(SchemeKind kind, const QualityProfile &p, double omega, std::optional<CommonAssignment> assignment)
{
    const auto av = averages(p);
    const auto who = assignment.value_or(kind == SchemeKind::X13 ? CommonAssignment::User2 : CommonAssignment::Split);
    const double abar = 0.5 * (av.a1 + av.a2);
    switch (kind) {
    case SchemeKind::X11:
        if (!case1(av)) throw Error(ErrorCode::WrongCase, "X11 needs 2*abar1 - abar2 < 1");
        return {(2 + 2 * av.a1 - av.a2) / 3, (2 + 2 * av.a2 - av.a1) / 3};
    case SchemeKind::X12:
        return case1(av) ? DofPoint{1, av.a1} : DofPoint{1, (1 + av.a2) / 2};
    case SchemeKind::X13:
        if (who == CommonAssignment::Split) throw Error(ErrorCode::DomainError, "X13 assigns its common information to one user");
        return who == CommonAssignment::User2 ? DofPoint{av.a2, 1} : DofPoint{1, av.a2};
    case SchemeKind::X2:
    case SchemeKind::X3:
        if (who == CommonAssignment::User2) return {abar, 1};
        if (who == CommonAssignment::User1) return {1, abar};
        if (kind == SchemeKind::X2) return {(2 + abar) / 3, (2 + abar) / 3};
        {
            const double b = std::min(p.beta(), delayed_threshold(abar));
            return {b * (2 - 3 * omega) + abar * (2 * omega - 1) + omega,
                    b * (3 * omega - 1) + abar * (1 - 2 * omega) + 1 - omega};
        }
    }
    return {};
}

DofPoint dof_limit(const SchemeConfig &cfg) { return dof_limit(cfg.kind, cfg.profile, cfg.omega, cfg.assignment); }

} // namespace evocsit
