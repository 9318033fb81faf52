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

#ifndef EVOCSIT_CHANNEL_SIM_HPP
#define EVOCSIT_CHANNEL_SIM_HPP

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "evocsit/quality.hpp"
#include "evocsit/scheme.hpp"

namespace evocsit {

using cdouble = std::complex<double>;
using CVec = std::vector<cdouble>;

// Deterministic 64-bit stream for (seed, a, b) built from splitmix64.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

struct BlockRealization {
    int M = 2;
    double P = 1.0;
    CVec h, g;                // true channels
    std::vector<CVec> h_hat;  // current estimates, one per slot
    std::vector<CVec> g_hat;
    CVec h_check, g_check;    // delayed estimates
};

// Current error of slot t has per-entry variance P^-alpha_t; the delayed error
// has P^-beta, or is zero when perfect_delayed is set.
BlockRealization sample_block(double P, const QualityProfile &p, std::uint64_t seed, bool perfect_delayed = false,
                              int M = 2);

// Unit vector u with est^T u = 0 (plain transpose, no conjugate).
CVec orthogonal_precoder(const CVec &est);
CVec random_unit(std::mt19937_64 &rng, int M);
cdouble dot_t(const CVec &a, const CVec &b); // a^T b

struct QuantizerOutput {
    cdouble quantized;
    cdouble residual;
    bool overflow = false;
    double bits_per_dim = 0.0;
};

// Subtractively dithered uniform scalar quantizer, one per real dimension.
// Range is +-4 P^(e/2) for declared source exponent e; the step is chosen so
// that about (phi/2) log2 P bits per dimension are spent. `dither` holds the
// shared dither of each dimension in units of the step, inside [-1/2, 1/2).
// phi <= 0 sends nothing: quantized = 0, residual = value.
QuantizerOutput quantize_interference(cdouble value, double phi, double P, double source_exponent,
                                      cdouble dither = {0.0, 0.0});

// Quantization noise variance of the complex quantizer above.
double quantizer_noise_variance(double phi, double P, double source_exponent);

struct SimOptions {
    std::vector<double> grid{1e2, 1e3, 1e4, 1e5, 1e6};
    int trials = 2000;
    std::uint64_t seed = 1;
    int M = 2;
    unsigned threads = 0; // 0 = EVOCSIT_THREADS or hardware concurrency
    double tolerance = 0.05;
};

// "1e2:1e6:5" -> five log-spaced points.
std::vector<double> parse_grid(const std::string &spec);

enum class MeasureKind { Power, Rate };

struct ExponentMeasurement {
    std::string label;
    MeasureKind kind = MeasureKind::Power;
    double expected = 0.0;
    std::vector<double> P;
    std::vector<double> mean;
    std::vector<double> sem;
    double slope = 0.0;
    double stderr_ = 0.0;
    int trials = 0;
    bool pass = false;
};

struct PhaseReport {
    int phase = 0;
    std::vector<ExponentMeasurement> terms;     // received summands, interference, noise, transmit power
    std::vector<ExponentMeasurement> common;    // one per slot, or one per block for vector commons
    std::vector<ExponentMeasurement> mimo;      // effective MIMO rates per user and slot
    std::vector<ExponentMeasurement> quantizer; // residual power of each quantized interference
    double overflow_fraction = 0.0;             // at the largest P
    std::size_t resampled = 0;                  // trials redrawn for a singular effective channel

    bool pass() const;
};

// Runs every measurement of one phase in a single Monte Carlo pass.
PhaseReport simulate_phase(const SchemeConfig &cfg, int phase, const SimOptions &opts);

std::vector<ExponentMeasurement> term_exponents(const SchemeConfig &cfg, int phase, const SimOptions &opts);
std::vector<ExponentMeasurement> rate_prelog_common(const SchemeConfig &cfg, int phase, const SimOptions &opts);
std::vector<ExponentMeasurement> rate_prelog_mimo(const SchemeConfig &cfg, int phase, User user,
                                                  const SimOptions &opts);

// OLS slope of y against x with standard error propagated from per-point errors.
struct SlopeFit {
    double slope = 0.0;
    double stderr_ = 0.0;
};
SlopeFit fit_slope(const std::vector<double> &x, const std::vector<double> &y, const std::vector<double> &se);

// Empirical (1/M) E||h - h_hat_t||^2 etc. for checking the estimate model.
struct ErrorPowerSample {
    double mean = 0.0;
    double sem = 0.0;
};
ErrorPowerSample current_error_power(double P, double alpha, int trials, std::uint64_t seed, int M = 2);
ErrorPowerSample delayed_error_power(double P, double beta, int trials, std::uint64_t seed, int M = 2);

unsigned default_thread_count();

} // namespace evocsit

#endif
