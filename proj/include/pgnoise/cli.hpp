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
#include <iosfwd>
#include <string>

#include "pgnoise/generator.hpp"

namespace pgnoise::cli {

/// Process exit statuses of the pgnoise tool.
enum ExitStatus : int {
    kOk = 0,
    kPartialFailure = 1,      // some inputs failed, the rest were processed
    kInputError = 2,          // bad flags, unreadable inputs, malformed bundle
    kCalibrationFailure = 3,
    kValidationFailure = 4,   // variance check outside tolerance
};

/// Environment variable naming the default bundle file.
inline constexpr const char* kBundleEnvVar = "PGNOISE_BUNDLE";

struct CliConfig {
    std::filesystem::path img_dir;
    std::filesystem::path out_dir;
    /// Empty: $PGNOISE_BUNDLE, else the built-in example bundle.
    std::filesystem::path bundle;
    int n_obs = 1;
    std::uint64_t seed = 0;
    bool clip = true;
    bool fixed_params = false;
    int jobs = 1;
    /// Output bit depth for generate; 0 keeps each input's depth.
    int bit_depth = 0;
    /// Histogram bins of a calibrated bundle.
    int bin_count = kDefaultBinCount;
    /// Intensity bins of the paired (a, b) estimator.
    int estimation_bins = 32;
    /// validate: number of sampled parameter sets and plane side length.
    int samples = 3;
    int plane_size = 1024;
    double tolerance = 0.02;
};

/// Loads config.bundle, $PGNOISE_BUNDLE or the built-in bundle, in that order.
ParamBundle resolve_bundle(const CliConfig& config);

/// Writes <stem>_noisy_<i>.png and <stem>_noisy_<i>.json for every PNG in
/// img_dir and every i < n_obs.
int cmd_generate(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Reads img_dir/<scene>/<id>_clean.png + <id>_noisy.png pairs and writes
/// out_dir/bundle.json and out_dir/estimates.csv.
int cmd_calibrate(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Compares empirical and predicted variance on constant planes and writes
/// the CSV report to out_dir/validation.csv (or `out` when out_dir is empty).
int cmd_validate(const CliConfig& config, std::ostream& out, std::ostream& err);

}  // namespace pgnoise::cli
