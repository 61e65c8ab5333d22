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
#include <string>
#include <vector>

#include "pgnoise/generator.hpp"

namespace pgnoise {

/// Raw values behind one channel of the synthetic example bundle.
struct ExampleChannelSources {
    std::vector<double> slope;
    std::vector<double> intercept;
    std::vector<double> a;
};

inline constexpr std::uint64_t kExampleBundleSeed = 1;
inline constexpr int kExampleSourceCount = 100000;

/// Synthetic parameter populations for R, G, B: normally distributed slopes
/// and log-normally distributed noise variances and gains. They are shaped
/// for plausible sRGB magnitudes only; they are not measured data.
std::array<ExampleChannelSources, 3> example_bundle_sources(
    std::uint64_t seed = kExampleBundleSeed, int count = kExampleSourceCount);

/// 64-bin histograms of example_bundle_sources().
ParamBundle make_example_bundle(std::uint64_t seed = kExampleBundleSeed);

/// The example bundle as shipped in data/example_bundle.json, compiled in.
const std::string& builtin_bundle_text();

}  // namespace pgnoise
