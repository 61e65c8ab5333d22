// Copyright (c) 2026 The pgnoise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pgnoise/noise_model.hpp"

#include <cmath>
#include <limits>

namespace pgnoise {
namespace {

// log(Gamma(x)) via the Stirling series for x >= 7 and upward recursion below.
// Used instead of std::lgamma, which writes the global signgam.
double log_gamma(double x) {
    static constexpr double kCoeffs[] = {
        8.333333333333333e-02,  -2.777777777777778e-03, 7.936507936507937e-04,
        -5.952380952380952e-04, 8.417508417508418e-04,  -1.917526917526918e-03,
        6.410256410256410e-03,  -2.955065359477124e-02, 1.796443723688307e-01,
        -1.39243221690590e+00};
    if (x == 1.0 || x == 2.0) return 0.0;
    int shift = 0;
    double x0 = x;
    if (x <= 7.0) {
        shift = static_cast<int>(7.0 - x);
        x0 = x + shift;
    }
    const double x2 = 1.0 / (x0 * x0);
    double gl0 = kCoeffs[9];
    for (int k = 8; k >= 0; --k) gl0 = gl0 * x2 + kCoeffs[k];
    constexpr double kHalfLog2Pi = 0.9189385332046727;
    double gl = gl0 / x0 + kHalfLog2Pi + (x0 - 0.5) * std::log(x0) - x0;
    for (int k = 1; k <= shift; ++k) {
        x0 -= 1.0;
        gl -= std::log(x0);
    }
    return gl;
}

std::int64_t poisson_multiplication(double mean, Rng& rng) {
    const double limit = std::exp(-mean);
    std::int64_t k = 0;
    double prod = rng.uniform();
    while (prod > limit) {
        ++k;
        prod *= rng.uniform();
    }
    return k;
}

// Hormann's PTRS; valid for mean >= 10.
std::int64_t poisson_ptrs(double mean, Rng& rng) {
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        const double u = rng.uniform() - 0.5;
        const double v = rng.uniform_open();
        const double us = 0.5 - std::fabs(u);
        const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= vr) return static_cast<std::int64_t>(kf);
        if (kf < 0.0 || (us < 0.013 && v > us)) continue;
        if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
            -mean + kf * loglam - log_gamma(kf + 1.0))
            return static_cast<std::int64_t>(kf);
    }
}

}  // namespace

void validate(const ChannelParams& params) {
    if (!std::isfinite(params.a) || params.a < 0.0)
        fail(ErrorCode::InvalidInput, "Poissonian gain a must be finite and >= 0, got " +
                                          std::to_string(params.a));
    if (!std::isfinite(params.b) || params.b < 0.0)
        fail(ErrorCode::InvalidInput, "Gaussian variance b must be finite and >= 0, got " +
                                          std::to_string(params.b));
}

void validate(const NoiseParams& params) {
    for (Channel ch : kChannels) {
        try {
            validate(params[ch]);
        } catch (const Error& e) {
            fail(e.code(), std::string(channel_name(ch)) + ": " + e.what());
        }
    }
}

std::int64_t sample_poisson(double mean, Rng& rng) {
    if (!std::isfinite(mean) || mean < 0.0)
        fail(ErrorCode::InvalidInput, "Poisson mean must be finite and >= 0");
    if (mean == 0.0) return 0;
    if (mean < kPoissonInversionLimit) return poisson_multiplication(mean, rng);
    if (mean < kPoissonNormalThreshold) return poisson_ptrs(mean, rng);
    const double k = std::round(mean + std::sqrt(mean) * rng.normal());
    if (k >= static_cast<double>(std::numeric_limits<std::int64_t>::max()))
        fail(ErrorCode::InvalidInput, "Poisson mean too large");
    return k < 0.0 ? 0 : static_cast<std::int64_t>(k);
}

double sample_poisson_component(double y, double a, Rng& rng) {
    if (!std::isfinite(y) || !std::isfinite(a))
        fail(ErrorCode::InvalidInput, "non-finite input to the Poisson component");
    if (y < 0.0) fail(ErrorCode::InvalidInput, "negative clean intensity");
    if (a < 0.0) fail(ErrorCode::InvalidInput, "negative Poissonian gain");
    if (a == 0.0) return y;
    return a * static_cast<double>(sample_poisson(y / a, rng));
}

double sample_gaussian_component(double b, Rng& rng) {
    if (!std::isfinite(b) || b < 0.0)
        fail(ErrorCode::InvalidInput, "Gaussian variance must be finite and >= 0");
    if (b == 0.0) return 0.0;
    return std::sqrt(b) * rng.normal();
}

double predicted_variance(double y, const ChannelParams& params) {
    validate(params);
    if (!std::isfinite(y) || y < 0.0 || y > 1.0)
        fail(ErrorCode::InvalidInput, "intensity outside [0, 1]");
    return params.a * y + params.b;
}

}  // namespace pgnoise
