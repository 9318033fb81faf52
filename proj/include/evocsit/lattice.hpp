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

#ifndef EVOCSIT_LATTICE_HPP
#define EVOCSIT_LATTICE_HPP

#include <complex>
#include <cstdint>
#include <vector>

namespace evocsit {

inline constexpr double kCodewordBudget = 1e6;
inline constexpr double kDefaultLatticeDelta = 0.1;

// Codewords c = theta * G * q with q drawn from the T-fold product of a square
// QAM on the odd-integer grid and G a unitary rotation with non-vanishing
// product distance over Z[i].
struct LatticeCodebook {
    int T = 1;
    double r = 1.0;
    double P = 1.0;
    double delta = kDefaultLatticeDelta;
    double theta = 1.0;
    int qam = 4;                                       // constellation size per coordinate
    std::vector<std::vector<std::complex<double>>> G;  // T x T, row-major
    std::vector<std::complex<double>> constellation;   // qam points

    std::uint64_t size() const;                        // qam^T
    std::vector<std::complex<double>> point(std::uint64_t index) const; // q
    std::vector<std::complex<double>> codeword(std::uint64_t index) const;
    std::vector<std::complex<double>> encode(const std::vector<std::complex<double>> &q) const;
};

// Rotation used for dimension T (1..4).
std::vector<std::vector<std::complex<double>>> lattice_generator(int T);

// qam = 0 picks 4^round(log4 P^r), at least 4. Refuses codebooks larger than
// the enumeration budget.
LatticeCodebook build_codebook(int T, double r, double P, double delta = kDefaultLatticeDelta, int qam = 0);

// Largest deviation of G^H G from the identity.
double unitarity_error(const LatticeCodebook &cb);

// Mean of ||c||^2 over the whole alphabet.
double mean_codeword_energy(const LatticeCodebook &cb);

// Both minima run over every difference of two distinct alphabet points,
// which is the same set as the differences of distinct codeword pairs.
// A zero coordinate in any difference throws ConstructionFailure.
double min_product_distance(const LatticeCodebook &cb);
double whitened_min_distance(const LatticeCodebook &cb, const std::vector<double> &alphas);

// Worst slack of sum_t x_t >= T (prod_t x_t)^(1/T) over all differences with
// x_t = |P^(-alpha_t/2) dc_t|^2. Non-negative means the inequality held.
double am_gm_slack(const LatticeCodebook &cb, const std::vector<double> &alphas);

// Word-error rate of exhaustive nearest-codeword decoding of
// y_t = P^(-alpha_t/2) c_t + z_t with z ~ CN(0, 1), or z = 0 when noiseless.
double decode_error_rate(const LatticeCodebook &cb, const std::vector<double> &alphas, int trials,
                         std::uint64_t seed, bool noiseless = false);

} // namespace evocsit

#endif
