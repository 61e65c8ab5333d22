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

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pgnoise/histogram.hpp"
#include "pgnoise/image.hpp"
#include "pgnoise/noise_model.hpp"
#include "pgnoise/rng.hpp"

namespace pgnoise {

/// The three sampling sources of one channel: line slopes, line intercepts
/// (noise variances) and positive Poissonian gains.
struct ChannelHistograms {
    Histogram slope;
    Histogram intercept;
    Histogram a;

    friend bool operator==(const ChannelHistograms&, const ChannelHistograms&) = default;
};

/// Nine histograms that fully define a calibrated noise generator.
class ParamBundle {
public:
    using Metadata = std::map<std::string, std::string>;

    /// Throws Validation when an a histogram has support below zero.
    ParamBundle(ChannelHistograms red, ChannelHistograms green, ChannelHistograms blue,
                Metadata metadata = {});

    const ChannelHistograms& operator[](Channel c) const noexcept {
        return channels_[static_cast<std::size_t>(channel_index(c))];
    }
    const Metadata& metadata() const noexcept { return metadata_; }
    Metadata& metadata() noexcept { return metadata_; }

    friend bool operator==(const ParamBundle&, const ParamBundle&) = default;

private:
    std::array<ChannelHistograms, 3> channels_;
    Metadata metadata_;
};

/// Bundle whose nine histograms are point masses at the given parameters
/// (slope 0, intercept b, gain a).
ParamBundle point_mass_bundle(const NoiseParams& params);

inline constexpr int kDefaultMaxAttempts = 1000;

/// Record of the draws behind one accepted ChannelParams.
struct SampleTrace {
    int attempts = 0;
    double slope = 0.0;
    double intercept = 0.0;
    double a = 0.0;
};

/// Draws slope m, intercept c and gain a independently from the channel's
/// histograms and forms b = m*a + c. Triples with b < 0 (or a <= 0) are
/// rejected and all three values redrawn. Throws SamplingExhausted after
/// `max_attempts` rejections.
ChannelParams sample_channel_params(const ParamBundle& bundle, Channel channel, Rng& rng,
                                    int max_attempts = kDefaultMaxAttempts,
                                    SampleTrace* trace = nullptr);

/// Channel c samples from substream {base, c}, base being one draw from `rng`.
NoiseParams sample_noise_params(const ParamBundle& bundle, Rng& rng,
                                int max_attempts = kDefaultMaxAttempts);

struct GenerateOptions {
    int count = 1;
    std::uint64_t seed = 0;
    bool clip = true;
    /// Sample one NoiseParams per seed and reuse it for every realization.
    bool fixed_params = false;
    /// Distinguishes inputs sharing a seed (the CLI passes a hash of the file stem).
    std::uint64_t stream_key = 0;
    int max_attempts = kDefaultMaxAttempts;
};

struct Realization {
    RgbImage image;
    NoiseParams params;
    int index = 0;
};

/// Parameters of realization `index`. Drawn from substream
/// {seed, stream_key, index, 0}, or {seed, fixed} when fixed_params is set.
NoiseParams realization_params(const ParamBundle& bundle, const GenerateOptions& options,
                               int index);

/// One realization; noise is drawn from substream {seed, stream_key, index, 1}.
Realization generate_realization(const RgbImage& clean, const ParamBundle& bundle,
                                 const GenerateOptions& options, int index);

std::vector<Realization> generate_noisy_images(const RgbImage& clean, const ParamBundle& bundle,
                                               const GenerateOptions& options);

std::vector<Realization> generate_noisy_images(const RgbImage& clean, const ParamBundle& bundle,
                                               int n, std::uint64_t seed, bool clip = true);

}  // namespace pgnoise
