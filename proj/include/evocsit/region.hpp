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

#ifndef EVOCSIT_REGION_HPP
#define EVOCSIT_REGION_HPP

#include <optional>
#include <string>
#include <vector>

#include "evocsit/quality.hpp"

namespace evocsit {

// Tolerance for vertex identity, membership and set comparisons.
inline constexpr double kRegionTol = 1e-9;

struct DofPoint {
    double d1 = 0.0;
    double d2 = 0.0;
};

// a*d1 + b*d2 <= c
struct HalfPlane {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

enum class RegionStatus { Optimal, InnerBound };

std::string to_string(RegionStatus status);

// Convex DoF polygon. The half-planes are authoritative; the vertex list is
// derived from them (non-negativity of both DoF is implicit), deduplicated
// and ordered counterclockwise starting at the origin.
class DofRegion {
  public:
    DofRegion(std::vector<HalfPlane> halfplanes, RegionStatus status);

    const std::vector<HalfPlane> &halfplanes() const noexcept { return halfplanes_; }
    const std::vector<DofPoint> &vertices() const noexcept { return vertices_; }
    RegionStatus status() const noexcept { return status_; }

  private:
    std::vector<HalfPlane> halfplanes_;
    std::vector<DofPoint> vertices_;
    RegionStatus status_;
};

// Pairwise intersection of all constraint lines (plus both axes), filtered
// for feasibility. Result is deduplicated and sorted counterclockwise from (0,0).
std::vector<DofPoint> enumerate_vertices(const std::vector<HalfPlane> &halfplanes);

// Sorts a point set counterclockwise around its centroid, starting at the point
// nearest the origin, after merging points closer than kRegionTol.
std::vector<DofPoint> canonical_polygon(std::vector<DofPoint> points);

bool contains(const DofRegion &r, DofPoint p, double tol = kRegionTol);
bool same_point_set(const std::vector<DofPoint> &a, const std::vector<DofPoint> &b, double tol = kRegionTol);
bool same_region(const DofRegion &a, const DofRegion &b, double tol = kRegionTol);
// Every vertex of `inner` lies in `outer`.
bool is_subset(const DofRegion &inner, const DofRegion &outer, double tol = kRegionTol);

// Symmetric evolving current CSIT, perfect delayed CSIT.
DofRegion region_theorem1(double abar);
// Symmetric evolving current CSIT, delayed CSIT of quality beta.
DofRegion region_theorem2(double abar, double beta);
// Asymmetric evolving current CSIT (abar2 <= abar1), perfect delayed CSIT.
DofRegion region_theorem4(double abar1, double abar2);
// Outer bound for arbitrary average exponents of the two users.
DofRegion outer_bound_lemma1(double abar1, double abar2);

// Closed-form corner lists of the three region results (merged, canonical order).
std::vector<DofPoint> theorem1_corners(double abar);
std::vector<DofPoint> theorem2_corners(double abar, double beta);
std::vector<DofPoint> theorem4_corners(double abar1, double abar2);

// Threshold above which imperfect delayed CSIT is as good as perfect.
double delayed_threshold(double abar);

struct MinQuality {
    double abar_min = 0.0;
    double beta_min = 0.0;
    bool requires_perfect_current = false; // d' = 1 forces abar = 1
    std::string note;
};

MinQuality solve_min_quality(double dprime);

enum class DelayConstraintKind { None, AlphaMax, BetaMax };

struct DelayConstraint {
    DelayConstraintKind kind = DelayConstraintKind::None;
    double value = 1.0;
};

struct MaxDelay {
    double gamma_max = 0.0;
    QualityProfile witness;
};

MaxDelay solve_max_delay(double dprime, DelayConstraint constraint = {});

struct AsymmetryPenalty {
    DofPoint pair;
    double shortfall = 0.0;
};

// User 1 keeps the symmetric DoF of average quality abar while user 2's
// average drops to abar_prime; returns the resulting optimal pair.
AsymmetryPenalty asymmetry_penalty(double abar, double abar_prime);

} // namespace evocsit

#endif
