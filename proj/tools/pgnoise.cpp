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

#include <iostream>

#include "CLI11.hpp"
#include "pgnoise/cli.hpp"

int main(int argc, char** argv) {
    using namespace pgnoise::cli;
    CLI::App app{"Poissonian-Gaussian sRGB noise generator"};
    app.require_subcommand(1);

    CliConfig config;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--bundle", config.bundle,
                        "Parameter bundle (default: $PGNOISE_BUNDLE, else the built-in example)");
        cmd->add_option("--seed", config.seed, "Root random seed");
        cmd->add_option("--jobs", config.jobs, "Worker threads")->check(CLI::PositiveNumber);
    };

    CLI::App* generate = app.add_subcommand("generate", "Write N noisy realizations per image");
    generate->add_option("--img_dir", config.img_dir, "Directory of clean PNG images")->required();
    generate->add_option("--out_dir", config.out_dir, "Output directory")->required();
    generate->add_option("--n_obs", config.n_obs, "Realizations per image")->check(CLI::PositiveNumber);
    generate->add_flag("--no-clip{false}", config.clip, "Do not clamp output to [0,1]");
    generate->add_flag("--fixed-params", config.fixed_params,
                       "Sample noise parameters once and reuse them for every output");
    generate->add_option("--bit-depth", config.bit_depth, "Output bit depth (8 or 16; default: input)");
    add_common(generate);

    CLI::App* calibrate = app.add_subcommand("calibrate", "Build a bundle from clean/noisy pairs");
    calibrate->add_option("--img_dir", config.img_dir, "Root with one subdirectory per scene")->required();
    calibrate->add_option("--out_dir", config.out_dir, "Output directory")->required();
    calibrate->add_option("--bins", config.bin_count, "Histogram bins per parameter");
    calibrate->add_option("--estimation-bins", config.estimation_bins,
                          "Intensity bins of the paired estimator");
    calibrate->add_option("--jobs", config.jobs, "Worker threads")->check(CLI::PositiveNumber);

    CLI::App* validate = app.add_subcommand("validate", "Check the variance law against a bundle");
    validate->add_option("--out_dir", config.out_dir, "Write validation.csv here instead of stdout");
    validate->add_option("--samples", config.samples, "Parameter sets to draw");
    validate->add_option("--plane-size", config.plane_size, "Side of each constant test plane");
    validate->add_option("--tolerance", config.tolerance, "Relative tolerance");
    add_common(validate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // --help and --version exit 0; every usage error maps to the input-error status.
        return app.exit(e) == 0 ? kOk : kInputError;
    }

    if (generate->parsed()) return cmd_generate(config, std::cout, std::cerr);
    if (calibrate->parsed()) return cmd_calibrate(config, std::cout, std::cerr);
    return cmd_validate(config, std::cout, std::cerr);
}
