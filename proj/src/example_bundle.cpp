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

#include "pgnoise/example_bundle.hpp"

#include <cmath>

#include "pgnoise/bundle_io.hpp"

namespace pgnoise {
namespace {

struct ChannelShape {
    double slope_mean;
    double slope_sd;
    double intercept_median;
    double a_median;
};

// Log-normal spread of intercepts and gains. Wider spreads put too much mass
// into the first few equal-width bins for 64 bins to resolve.
constexpr double kLogSpread = 0.35;

constexpr std::array<ChannelShape, 3> kShapes{{
    {-1.0, 1.5, 1.5e-3, 2.0e-4},
    {-0.5, 1.0, 4.0e-4, 1.0e-4},
    {-0.8, 1.2, 9.0e-4, 1.0e-4},
}};

#include "pgnoise_builtin_bundle.inc"

}  // namespace

std::array<ExampleChannelSources, 3> example_bundle_sources(std::uint64_t seed, int count) {
    std::array<ExampleChannelSources, 3> out;
    for (Channel ch : kChannels) {
        const auto i = static_cast<std::size_t>(channel_index(ch));
        const ChannelShape& shape = kShapes[i];
        Rng rng = Rng::substream(seed, {i});
        ExampleChannelSources& s = out[i];
        for (int k = 0; k < count; ++k) {
            s.slope.push_back(shape.slope_mean + shape.slope_sd * rng.normal());
            s.intercept.push_back(shape.intercept_median * std::exp(kLogSpread * rng.normal()));
            s.a.push_back(shape.a_median * std::exp(kLogSpread * rng.normal()));
        }
    }
    return out;
}

ParamBundle make_example_bundle(std::uint64_t seed) {
    const auto sources = example_bundle_sources(seed);
    auto channel = [](const ExampleChannelSources& s) {
        return ChannelHistograms{build_histogram(s.slope), build_histogram(s.intercept),
                                 build_histogram(s.a)};
    };
    return ParamBundle(channel(sources[0]), channel(sources[1]), channel(sources[2]),
                       {{"source", "synthetic example (not measured data)"},
                        {"seed", std::to_string(seed)},
                        {"samples_per_histogram", std::to_string(kExampleSourceCount)},
                        {"bin_count", std::to_string(kDefaultBinCount)}});
}

const std::string& builtin_bundle_text() {
    static const std::string text(kBuiltinBundle);
    return text;
}

}  // namespace pgnoise
