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

#include "pgnoise/calibration.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "pgnoise/errors.hpp"

namespace pgnoise {
namespace {

const ImagePlane& checked_plane(const RgbImage& image, Channel channel, const char* role) {
    if (!image.consistent())
        fail(ErrorCode::InvalidInput, std::string(role) + " image planes differ in size");
    return image[channel];
}

void check_pair(const ScenePair& pair) {
    if (pair.clean.rows() != pair.noisy.rows() || pair.clean.cols() != pair.noisy.cols())
        fail(ErrorCode::InvalidInput, "scene " + pair.scene_id + ": clean and noisy sizes differ");
    if (pair.clean.rows() * pair.clean.cols() == 0)
        fail(ErrorCode::EmptyData, "scene " + pair.scene_id + ": empty image");
}

}  // namespace

AbEstimate estimate_ab_paired(const ScenePair& pair, Channel channel, int bin_count) {
    check_pair(pair);
    if (bin_count < 2) fail(ErrorCode::InvalidInput, "bin_count must be >= 2");
    const ImagePlane& clean = checked_plane(pair.clean, channel, "clean");
    const ImagePlane& noisy = checked_plane(pair.noisy, channel, "noisy");

    const auto k = static_cast<std::size_t>(bin_count);
    Eigen::ArrayXd count = Eigen::ArrayXd::Zero(bin_count);
    Eigen::ArrayXd sum_y = Eigen::ArrayXd::Zero(bin_count);
    Eigen::ArrayXd sum_d = Eigen::ArrayXd::Zero(bin_count);
    Eigen::ArrayXd sum_dd = Eigen::ArrayXd::Zero(bin_count);
    for (Eigen::Index i = 0; i < clean.size(); ++i) {
        const double y = clean.data()[i];
        if (!std::isfinite(y) || y < 0.0 || y > 1.0)
            fail(ErrorCode::InvalidInput, "clean intensity outside [0, 1]");
        const double d = noisy.data()[i] - y;
        const auto bin = static_cast<Eigen::Index>(
            std::min(static_cast<std::size_t>(y * static_cast<double>(k)), k - 1));
        count[bin] += 1.0;
        sum_y[bin] += y;
        sum_d[bin] += d;
        sum_dd[bin] += d * d;
    }

    std::vector<Eigen::Index> kept;
    for (Eigen::Index b = 0; b < bin_count; ++b)
        if (count[b] >= static_cast<double>(kMinBinPopulation)) kept.push_back(b);
    if (kept.size() < 2)
        fail(ErrorCode::InsufficientDynamicRange,
             "scene " + pair.scene_id + " " + std::string(channel_name(channel)) +
                 ": fewer than 2 intensity bins hold >= " + std::to_string(kMinBinPopulation) +
                 " pixels");

    const auto n = static_cast<Eigen::Index>(kept.size());
    Eigen::MatrixXd design(n, 2);
    Eigen::VectorXd target(n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const Eigen::Index b = kept[static_cast<std::size_t>(r)];
        const double mean_d = sum_d[b] / count[b];
        const double variance = (sum_dd[b] - count[b] * mean_d * mean_d) / (count[b] - 1.0);
        const double w = std::sqrt(count[b]);
        design(r, 0) = w * sum_y[b] / count[b];
        design(r, 1) = w;
        target[r] = w * variance;
    }
    const Eigen::Vector2d ab = design.colPivHouseholderQr().solve(target);
    return {ab[0], ab[1], channel, pair.scene_id, pair.pair_id};
}

double estimate_noise_variance(const ScenePair& pair, Channel channel) {
    check_pair(pair);
    const ImagePlane& clean = checked_plane(pair.clean, channel, "clean");
    const ImagePlane& noisy = checked_plane(pair.noisy, channel, "noisy");
    const Eigen::ArrayXd d = (noisy - clean).reshaped<Eigen::RowMajor>();
    if (d.size() < 2) fail(ErrorCode::EmptyData, "need at least two pixels for a variance");
    return (d - d.mean()).square().sum() / static_cast<double>(d.size() - 1);
}

LineFit fit_line(std::span<const AbEstimate> estimates) {
    if (estimates.size() < 2)
        fail(ErrorCode::DegenerateFit, "line fit needs at least two estimates");
    const auto n = static_cast<Eigen::Index>(estimates.size());
    Eigen::ArrayXd a(n), b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const AbEstimate& e = estimates[static_cast<std::size_t>(i)];
        if (!std::isfinite(e.a) || !std::isfinite(e.b))
            fail(ErrorCode::InvalidInput, "line fit input is not finite");
        a[i] = e.a;
        b[i] = e.b;
    }
    if ((a == a[0]).all())
        fail(ErrorCode::DegenerateFit, "all a values identical; slope undefined");
    const Eigen::ArrayXd da = a - a.mean();
    const Eigen::ArrayXd db = b - b.mean();
    const double m = (da * db).sum() / da.square().sum();
    const double c = b.mean() - m * a.mean();
    const double rms = std::sqrt((b - m * a - c).square().mean());
    return {m, c, rms};
}

SceneCalibration calibrate_scene(const std::string& scene_id, std::span<const ScenePair> pairs,
                                 int bin_count) {
    SceneCalibration scene;
    scene.scene_id = scene_id;
    for (Channel ch : kChannels) {
        ChannelCalibration& out = scene[ch];
        for (const ScenePair& pair : pairs) {
            try {
                AbEstimate e = estimate_ab_paired(pair, ch, bin_count);
                e.scene_id = scene_id;
                out.estimates.push_back(e);
                out.noise_variances.push_back(estimate_noise_variance(pair, ch));
            } catch (const Error& e) {
                scene.warnings.push_back(std::string(channel_name(ch)) + ": " + e.what());
            }
        }
        try {
            out.line = fit_line(out.estimates);
        } catch (const Error& e) {
            scene.warnings.push_back(std::string(channel_name(ch)) + ": no line fit (" +
                                     e.what() + ")");
        }
    }
    return scene;
}

ParamBundle build_param_bundle(std::span<const SceneCalibration> scenes, int bin_count) {
    if (scenes.empty()) fail(ErrorCode::CalibrationFailure, "no calibrated scenes");
    std::vector<ChannelHistograms> channels;
    for (Channel ch : kChannels) {
        const std::string name(channel_name(ch));
        std::vector<double> slopes, intercepts, gains;
        std::string scene_ids;
        for (const SceneCalibration& scene : scenes) {
            const ChannelCalibration& cal = scene[ch];
            if (cal.line) slopes.push_back(cal.line->m);
            intercepts.insert(intercepts.end(), cal.noise_variances.begin(),
                              cal.noise_variances.end());
            for (const AbEstimate& e : cal.estimates)
                if (e.a > 0.0 && std::isfinite(e.a)) gains.push_back(e.a);
            scene_ids += (scene_ids.empty() ? "" : ", ") + scene.scene_id;
        }
        if (slopes.empty())
            fail(ErrorCode::CalibrationFailure,
                 name + ": no scene produced a line fit (scenes: " + scene_ids + ")");
        if (gains.empty())
            fail(ErrorCode::CalibrationFailure,
                 name + ": no positive a estimates (scenes: " + scene_ids + ")");
        channels.push_back({build_histogram(slopes, bin_count),
                            build_histogram(intercepts, bin_count),
                            build_histogram(gains, bin_count)});
    }
    return ParamBundle(std::move(channels[0]), std::move(channels[1]), std::move(channels[2]),
                       {{"source", "calibration"},
                        {"scenes", std::to_string(scenes.size())},
                        {"bin_count", std::to_string(bin_count)}});
}

}  // namespace pgnoise
