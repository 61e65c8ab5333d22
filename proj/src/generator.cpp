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

#include "pgnoise/generator.hpp"

#include <string>

#include "pgnoise/errors.hpp"

namespace pgnoise {
namespace {

constexpr std::uint64_t kFixedParamsKey = 0x66697865642d7061ULL;

void check_gain_support(const Histogram& a, Channel c) {
    if (a.lower() < 0.0)
        fail(ErrorCode::Validation, "channels." + std::string(channel_name(c)) +
                                        ".a_hist: support must be non-negative, first edge is " +
                                        std::to_string(a.lower()));
}

}  // namespace

ParamBundle::ParamBundle(ChannelHistograms red, ChannelHistograms green, ChannelHistograms blue,
                         Metadata metadata)
    : channels_{std::move(red), std::move(green), std::move(blue)},
      metadata_(std::move(metadata)) {
    for (Channel c : kChannels) check_gain_support((*this)[c].a, c);
}

ParamBundle point_mass_bundle(const NoiseParams& params) {
    validate(params);
    auto channel = [](const ChannelParams& p) {
        if (!(p.a > 0.0)) fail(ErrorCode::InvalidInput, "point-mass gain must be positive");
        return ChannelHistograms{Histogram::point_mass(0.0), Histogram::point_mass(p.b),
                                 Histogram::point_mass(p.a)};
    };
    return ParamBundle(channel(params.red), channel(params.green), channel(params.blue),
                       {{"source", "point mass"}});
}

ChannelParams sample_channel_params(const ParamBundle& bundle, Channel channel, Rng& rng,
                                    int max_attempts, SampleTrace* trace) {
    if (max_attempts < 1) fail(ErrorCode::InvalidInput, "max_attempts must be >= 1");
    const ChannelHistograms& h = bundle[channel];
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        const double m = sample_histogram(h.slope, rng);
        const double c = sample_histogram(h.intercept, rng);
        const double a = sample_histogram(h.a, rng);
        const double b = m * a + c;
        if (a > 0.0 && b >= 0.0) {
            if (trace) *trace = {attempt, m, c, a};
            return {a, b};
        }
    }
    fail(ErrorCode::SamplingExhausted,
         std::string(channel_name(channel)) + ": no admissible (a, b) after " +
             std::to_string(max_attempts) + " attempts");
}

NoiseParams sample_noise_params(const ParamBundle& bundle, Rng& rng, int max_attempts) {
    const std::uint64_t base = rng.bits();
    NoiseParams params;
    for (Channel c : kChannels) {
        Rng stream = Rng::substream(base, {static_cast<std::uint64_t>(channel_index(c))});
        params[c] = sample_channel_params(bundle, c, stream, max_attempts);
    }
    return params;
}

NoiseParams realization_params(const ParamBundle& bundle, const GenerateOptions& options,
                               int index) {
    Rng rng = options.fixed_params
                  ? Rng::substream(options.seed, {kFixedParamsKey})
                  : Rng::substream(options.seed, {options.stream_key,
                                                  static_cast<std::uint64_t>(index), 0});
    return sample_noise_params(bundle, rng, options.max_attempts);
}

Realization generate_realization(const RgbImage& clean, const ParamBundle& bundle,
                                 const GenerateOptions& options, int index) {
    try {
        const NoiseParams params = realization_params(bundle, options, index);
        Rng noise = Rng::substream(options.seed,
                                   {options.stream_key, static_cast<std::uint64_t>(index), 1});
        return {add_noise_rgb(clean, params, noise, options.clip), params, index};
    } catch (const Error& e) {
        fail(e.code(), "realization " + std::to_string(index) + ": " + e.what());
    }
}

std::vector<Realization> generate_noisy_images(const RgbImage& clean, const ParamBundle& bundle,
                                               const GenerateOptions& options) {
    if (options.count < 1) fail(ErrorCode::InvalidInput, "realization count must be >= 1");
    std::vector<Realization> out;
    out.reserve(static_cast<std::size_t>(options.count));
    for (int i = 0; i < options.count; ++i)
        out.push_back(generate_realization(clean, bundle, options, i));
    return out;
}

std::vector<Realization> generate_noisy_images(const RgbImage& clean, const ParamBundle& bundle,
                                               int n, std::uint64_t seed, bool clip) {
    GenerateOptions options;
    options.count = n;
    options.seed = seed;
    options.clip = clip;
    return generate_noisy_images(clean, bundle, options);
}

}  // namespace pgnoise
