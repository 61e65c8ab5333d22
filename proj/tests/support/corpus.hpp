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

// Synthetic calibration corpora: known per-pair (a, b) on ramp images.
#pragma once

#include <string>
#include <vector>

#include "pgnoise/calibration.hpp"
#include "pgnoise/noise_model.hpp"
#include "support/oracles.hpp"

namespace pgnoise::testing {

struct SyntheticPair {
    ScenePair pair;
    NoiseParams truth;
};

/// Clean image: the same horizontal ramp [lo, hi] on every channel.
inline RgbImage ramp_image(Eigen::Index side, double lo, double hi) {
    const auto p = ramp(side, side, lo, hi);
    return RgbImage(p, p, p);
}

inline SyntheticPair synthesize_pair(const RgbImage& clean, const NoiseParams& truth, Rng& rng,
                                     std::string scene, std::string id) {
    RgbImage noisy = add_noise_rgb(clean, truth, rng, false);
    return {ScenePair{clean, std::move(noisy), std::move(scene), std::move(id)}, truth};
}

/// Per scene: one line (m, c) per channel drawn from the bundle's slope and
/// intercept histograms; per pair: a from the gain histogram and b = m*a + c,
/// redrawing a (and eventually the line) until b >= 0.
struct SceneTruth {
    std::string scene_id;
    std::vector<SyntheticPair> pairs;
};

inline std::vector<SceneTruth> synthesize_corpus(const ParamBundle& source, int scenes,
                                                 int pairs_per_scene, Eigen::Index side,
                                                 std::uint64_t seed, double lo = 0.0,
                                                 double hi = 1.0) {
    const RgbImage clean = ramp_image(side, lo, hi);
    Rng rng(seed);
    std::vector<SceneTruth> corpus;
    for (int s = 0; s < scenes; ++s) {
        SceneTruth scene{"scene" + std::to_string(s), {}};
        std::array<double, 3> m{}, c{};
        std::vector<NoiseParams> truths(static_cast<std::size_t>(pairs_per_scene));
        for (Channel ch : kChannels) {
            const auto i = static_cast<std::size_t>(channel_index(ch));
            for (;;) {
                m[i] = sample_histogram(source[ch].slope, rng);
                c[i] = sample_histogram(source[ch].intercept, rng);
                bool ok = true;
                for (auto& t : truths) {
                    int tries = 0;
                    do {
                        t[ch].a = sample_histogram(source[ch].a, rng);
                        t[ch].b = m[i] * t[ch].a + c[i];
                    } while ((t[ch].b < 0.0 || t[ch].a <= 0.0) && ++tries < 100);
                    ok = ok && tries < 100;
                }
                if (ok) break;
            }
        }
        for (int p = 0; p < pairs_per_scene; ++p)
            scene.pairs.push_back(synthesize_pair(clean, truths[static_cast<std::size_t>(p)], rng,
                                                  scene.scene_id, "p" + std::to_string(p)));
        corpus.push_back(std::move(scene));
    }
    return corpus;
}

}  // namespace pgnoise::testing
