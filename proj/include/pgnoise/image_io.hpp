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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "pgnoise/image.hpp"
#include "pgnoise/noise_model.hpp"

namespace pgnoise {

/// A decoded image. Values are code / (2^bit_depth - 1); no gamma
/// linearization is applied, the pipeline works on sRGB code values.
struct ImageRecord {
    RgbImage pixels;
    std::string source_path;
    int bit_depth = 8;
    std::vector<std::string> warnings;
};

/// Reads an 8- or 16-bit PNG. Palette and low-bit-depth gray are expanded,
/// alpha is dropped and gray replicated to RGB, each with a warning.
ImageRecord load_image(const std::filesystem::path& path);

/// Writes an RGB PNG, code = round(v * (2^bit_depth - 1)) with ties away
/// from zero. Values outside [0,1] raise Contract; clip before saving.
void save_image(const RgbImage& image, const std::filesystem::path& path, int bit_depth = 8);

std::uint16_t quantize(double v, int bit_depth);
double dequantize(std::uint16_t code, int bit_depth);

/// Provenance of one generated image.
struct SidecarRecord {
    NoiseParams params;
    std::uint64_t seed = 0;
    int realization_index = 0;
    std::string bundle;
    std::string source;

    friend bool operator==(const SidecarRecord&, const SidecarRecord&) = default;
};

void write_sidecar(const SidecarRecord& record, const std::filesystem::path& path);

inline void write_sidecar(const NoiseParams& params, std::uint64_t seed, int realization_index,
                          const std::filesystem::path& path, std::string bundle = {}) {
    write_sidecar(SidecarRecord{params, seed, realization_index, std::move(bundle), {}}, path);
}

SidecarRecord read_sidecar(const std::filesystem::path& path);

}  // namespace pgnoise
