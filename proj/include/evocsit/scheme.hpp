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

#ifndef EVOCSIT_SCHEME_HPP
#define EVOCSIT_SCHEME_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "evocsit/quality.hpp"
#include "evocsit/region.hpp"

namespace evocsit {

enum class SchemeKind { X11, X12, X13, X2, X3 };

std::string to_string(SchemeKind kind);
SchemeKind scheme_kind_from_string(const std::string &name);

// Who owns the fresh common information. Split divides it by omega (X3 phase 1);
// User1/User2 truncate X2, X3 and X13 to a single terminal block whose common
// symbols all serve that user.
enum class CommonAssignment { Split, User1, User2 };

std::string to_string(CommonAssignment a);
CommonAssignment common_assignment_from_string(const std::string &name);

enum class SymbolClass { C, A, APrime, B, BPrime };
inline constexpr std::size_t kNumClasses = 5;
inline constexpr std::array<SymbolClass, kNumClasses> kAllClasses = {
    SymbolClass::C, SymbolClass::A, SymbolClass::APrime, SymbolClass::B, SymbolClass::BPrime};

std::string to_string(SymbolClass k);

// OrthG: orthogonal to the current estimate of user 2's channel (the u precoder),
// OrthH: orthogonal to user 1's estimate (v). Everything else is random.
enum class Precoder { Random, OrthG, OrthH };

std::string to_string(Precoder p);

struct ClassAllocation {
    bool active = false;
    double power = 0.0; // P^(k) ~ P^power
    double rate = 0.0;  // prelog
    Precoder precoder = Precoder::Random;
};

struct SlotAllocation {
    std::array<ClassAllocation, kNumClasses> classes{};
    double phi1 = 0.0;          // quantization prelog of user 1's interference
    double phi2 = 0.0;          // ... and of user 2's
    bool common_fresh = false;  // c carries new data instead of quantized interference
    bool common_vector = false; // c is decoded jointly over the whole block

    const ClassAllocation &operator[](SymbolClass k) const { return classes[static_cast<std::size_t>(k)]; }
    ClassAllocation &operator[](SymbolClass k) { return classes[static_cast<std::size_t>(k)]; }
    double private_rate(User user) const;
};

// Power exponent of the interference a user sees from the other user's private
// classes, given that user's current quality exponent in the slot. Returns
// -infinity when the other user has no active private class.
double interference_exponent(const SlotAllocation &slot, User victim, double alpha_victim);

struct SchemeOptions {
    int S = 0; // 0 selects the kind's default phase count
    double T1 = 1.0;
    std::optional<double> delta;
    std::optional<double> omega;
    std::optional<CommonAssignment> assignment;
    bool round = false;
};

inline constexpr int kDefaultPhases = 10;

struct SchemeConfig {
    SchemeKind kind = SchemeKind::X2;
    QualityProfile profile = QualityProfile::symmetric({0.0}, 0.0);
    int S = 0;
    double T1 = 1.0;
    double delta = 0.0;
    double omega = 0.5;
    CommonAssignment assignment = CommonAssignment::Split;
    bool rounded = false;
    std::vector<double> durations;
    // X11
    double mu = 0.0, eps1 = 0.0, eps2 = 0.0;
    // X12
    double eta = 0.0, varphi1 = 0.0, varphi2 = 0.0;
    // X3
    double xi = 0.0, zeta = 0.0;
    // [phase][slot], both 0-based
    std::vector<std::vector<SlotAllocation>> table;
};

SchemeConfig build_scheme(SchemeKind kind, const QualityProfile &p, const SchemeOptions &opts = {});

// 1-based phase and slot indices.
const SlotAllocation &allocation(const SchemeConfig &cfg, int phase, int t);

struct LedgerEntry {
    int phase = 0;
    double produced = 0.0; // quantization prelog created in this phase
    double consumed = 0.0; // common prelog of the next phase that carries it
    bool balanced = true;  // equal to 1e-9 (relative to the larger side)
    bool feasible = true;  // consumed >= produced
};

struct QuantizationLedger {
    std::vector<LedgerEntry> phases;
    bool balanced = true;
    bool feasible = true;
};

QuantizationLedger quantization_ledger(const SchemeConfig &cfg);

// Exact duration-weighted DoF of the built (finite S) scheme.
DofPoint dof_finite(const SchemeConfig &cfg);

// Limit S -> infinity.
DofPoint dof_limit(SchemeKind kind, const QualityProfile &p, double omega = 0.5,
                   std::optional<CommonAssignment> assignment = std::nullopt);
DofPoint dof_limit(const SchemeConfig &cfg);

} // namespace evocsit

#endif
