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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "pgnoise/errors.hpp"
#include "pgnoise/image.hpp"
#include "pgnoise/rng.hpp"

namespace pgnoise {

/// Poissonian gain `a` and Gaussian variance `b` of one color channel, in
/// normalized [0,1] intensity units. The noisy value at clean intensity y has
/// variance a*y + b.
struct ChannelParams {
    double a = 0.0;
    double b = 0.0;

    friend bool operator==(const ChannelParams&, const ChannelParams&) = default;
};

struct NoiseParams {
    ChannelParams red;
    ChannelParams green;
    ChannelParams blue;

    ChannelParams& operator[](Channel c) noexcept {
        return c == Channel::Red ? red : (c == Channel::Green ? green : blue);
    }
    const ChannelParams& operator[](Channel c) const noexcept {
        return c == Channel::Red ? red : (c == Channel::Green ? green : blue);
    }

    friend bool operator==(const NoiseParams&, const NoiseParams&) = default;
};

/// Throws InvalidInput unless a and b are finite and non-negative.
void validate(const ChannelParams& params);
void validate(const NoiseParams& params);

/// Below this mean the Poisson sampler uses sequential multiplication.
inline constexpr double kPoissonInversionLimit = 10.0;
/// At and above this mean the Poisson sampler switches from exact
/// transformed rejection (PTRS) to the rounded normal approximation N(mean, mean).
inline constexpr double kPoissonNormalThreshold = 1.0e3;

/// Poisson variate with the given mean.
///   mean < 10          multiplication of uniforms (exact)
///   10 <= mean < 1e3   PTRS transformed rejection with squeeze (exact)
///   mean >= 1e3        max(0, round(mean + sqrt(mean) * z)), z standard normal
std::int64_t sample_poisson(double mean, Rng& rng);

/// Signal-dependent component: returns a*k with k ~ Poisson(y/a), or y when a == 0.
double sample_poisson_component(double y, double a, Rng& rng);

/// Signal-independent component: N(0, b); exactly 0 when b == 0.
double sample_gaussian_component(double b, Rng& rng);

/// Analytic variance of the noisy observation at clean intensity y.
double predicted_variance(double y, const ChannelParams& params);

namespace detail {

inline void check_clean_sample(double y) {
    if (!std::isfinite(y) || y < 0.0 || y > 1.0)
        fail(ErrorCode::InvalidInput,
             "clean intensity " + std::to_string(y) + " outside [0, 1]");
}

}  // namespace detail

/// Adds Poissonian-Gaussian noise to every pixel of `clean`, visiting pixels in
/// row-major order. With `clip` the result is clamped to [0, 1].
template <typename Derived>
Plane<typename Derived::Scalar> add_noise_plane(const Eigen::ArrayBase<Derived>& clean,
                                                const ChannelParams& params, Rng& rng,
                                                bool clip = true) {
    using Scalar = typename Derived::Scalar;
    validate(params);
    const double sigma = std::sqrt(params.b);
    Plane<Scalar> noisy(clean.rows(), clean.cols());
    for (Eigen::Index r = 0; r < clean.rows(); ++r) {
        for (Eigen::Index c = 0; c < clean.cols(); ++c) {
            const double y = static_cast<double>(clean(r, c));
            detail::check_clean_sample(y);
            double z = sample_poisson_component(y, params.a, rng);
            if (sigma > 0.0) z += sigma * rng.normal();
            if (clip) z = std::clamp(z, 0.0, 1.0);
            noisy(r, c) = static_cast<Scalar>(z);
        }
    }
    return noisy;
}

/// Per-channel noise. Channel c draws from substream {base, c} where `base`
/// is one 64-bit draw from `rng`, so a channel's output does not depend on
/// the order channels are processed in.
template <typename Scalar>
BasicRgbImage<Scalar> add_noise_rgb(const BasicRgbImage<Scalar>& clean, const NoiseParams& params,
                                    Rng& rng, bool clip = true) {
    if (!clean.consistent())
        fail(ErrorCode::InvalidInput, "RGB planes differ in size");
    validate(params);
    const std::uint64_t base = rng.bits();
    BasicRgbImage<Scalar> noisy;
    for (Channel ch : kChannels) {
        Rng stream = Rng::substream(base, {static_cast<std::uint64_t>(channel_index(ch))});
        noisy[ch] = add_noise_plane(clean[ch], params[ch], stream, clip);
    }
    return noisy;
}

}  // namespace pgnoise
