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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pgnoise/generator.hpp"
#include "pgnoise/image.hpp"

namespace pgnoise {

/// One (a, b) estimate for a channel of an image pair. Either value may be
/// negative; consumers decide what to do with that.
struct AbEstimate {
    double a = 0.0;
    double b = 0.0;
    Channel channel = Channel::Red;
    std::string scene_id;
    std::string pair_id;
};

/// b = m * a + c fitted over the estimates of one scene.
struct LineFit {
    double m = 0.0;
    double c = 0.0;
    double residual_rms = 0.0;
};

struct ScenePair {
    RgbImage clean;
    RgbImage noisy;
    std::string scene_id;
    std::string pair_id;
};

inline constexpr int kDefaultEstimationBins = 32;
inline constexpr long kMinBinPopulation = 100;

/// Paired estimator. Pixels are binned by clean intensity into `bin_count`
/// equal bins over [0,1]; bins holding fewer than 100 pixels are dropped. The
/// variance of (noisy - clean) in each bin is regressed on the bin's mean
/// intensity, weighted by population. Throws InsufficientDynamicRange when
/// fewer than two bins survive.
AbEstimate estimate_ab_paired(const ScenePair& pair, Channel channel,
                              int bin_count = kDefaultEstimationBins);

/// Sample variance of (noisy - clean) over the whole channel.
double estimate_noise_variance(const ScenePair& pair, Channel channel);

/// Ordinary least squares of b on a. Throws DegenerateFit with fewer than two
/// distinct a values.
LineFit fit_line(std::span<const AbEstimate> estimates);

struct ChannelCalibration {
    std::vector<AbEstimate> estimates;
    std::vector<double> noise_variances;
    std::optional<LineFit> line;
};

struct SceneCalibration {
    std::string scene_id;
    std::array<ChannelCalibration, 3> channels;
    /// Non-fatal problems (skipped pairs, missing line fit).
    std::vector<std::string> warnings;

    ChannelCalibration& operator[](Channel c) noexcept {
        return channels[static_cast<std::size_t>(channel_index(c))];
    }
    const ChannelCalibration& operator[](Channel c) const noexcept {
        return channels[static_cast<std::size_t>(channel_index(c))];
    }
};

/// Estimates every pair of one scene, records the per-pair noise variances
/// and fits one line per channel. Pairs whose estimation fails are skipped
/// with a warning; a channel whose line cannot be fitted keeps `line` empty.
SceneCalibration calibrate_scene(const std::string& scene_id, std::span<const ScenePair> pairs,
                                 int bin_count = kDefaultEstimationBins);

/// Per channel: slope histogram from the scene line fits, intercept histogram
/// from the per-pair noise variances, gain histogram from the positive a
/// estimates. Throws CalibrationFailure naming the channel when a channel has
/// no line fit or no positive a estimate.
ParamBundle build_param_bundle(std::span<const SceneCalibration> scenes,
                               int bin_count = kDefaultBinCount);

}  // namespace pgnoise
