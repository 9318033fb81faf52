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

#ifndef EVOCSIT_QUALITY_HPP
#define EVOCSIT_QUALITY_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace evocsit {

// Absolute tolerance for every comparison between quality exponents.
inline constexpr double kExponentTol = 1e-12;

enum class User { One = 1, Two = 2 };

// Which family of orderings a profile is checked against.
//   Symmetric           alpha1 == alpha2 slot by slot
//   PartiallySymmetric  equal averages, per-slot values may differ
//   Asymmetric          alpha2_t <= alpha1_t for every slot
enum class ProfileMode { Symmetric, PartiallySymmetric, Asymmetric };

std::string to_string(ProfileMode mode);
ProfileMode profile_mode_from_string(const std::string &name);

// Per-slot current-CSIT quality exponents of both users over one coherence
// block of T slots, plus the delayed-CSIT exponents. Immutable once built.
class QualityProfile {
  public:
    // Throws Error(MalformedInput) when T == 0 or a list length differs from T.
    QualityProfile(std::vector<double> alpha1, std::vector<double> alpha2, double beta1, double beta2);
    QualityProfile(std::vector<double> alpha1, std::vector<double> alpha2, double beta);

    // Both users share the same exponents.
    static QualityProfile symmetric(std::vector<double> alpha, double beta);

    std::size_t slots() const noexcept { return alpha1_.size(); }
    std::span<const double> alpha(User user) const noexcept;
    std::span<const double> alpha1() const noexcept { return alpha1_; }
    std::span<const double> alpha2() const noexcept { return alpha2_; }
    double alpha(User user, std::size_t t) const { return alpha(user)[t]; }
    double beta(User user) const noexcept { return user == User::One ? beta1_ : beta2_; }
    double beta() const noexcept { return beta1_; }

    bool operator==(const QualityProfile &) const = default;

  private:
    std::vector<double> alpha1_;
    std::vector<double> alpha2_;
    double beta1_;
    double beta2_;
};

struct Violation {
    std::string constraint; // short machine-readable tag, e.g. "non-monotone"
    int user = 0;           // 0 when the violation is not user specific
    int index = -1;         // 1-based slot index, -1 when not slot specific
    std::string message;
};

// Returns every violated range/ordering constraint; an empty list means ok.
std::vector<Violation> validate_profile(const QualityProfile &p, ProfileMode mode);

// Convenience wrapper: throws Error(DomainError) listing all violations.
void require_valid(const QualityProfile &p, ProfileMode mode);

double average_exponent(const QualityProfile &p, User user);

// Largest zero prefix of the user's exponents, as a fraction of T.
double fractional_delay(const QualityProfile &p, User user);

struct ProfileSummary {
    double abar1 = 0.0;
    double abar2 = 0.0;
    double gamma1 = 0.0;
    double gamma2 = 0.0;
};

ProfileSummary summarize(const QualityProfile &p);

} // namespace evocsit

#endif
