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

#include "pgnoise/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <vector>

#include "pgnoise/bundle_io.hpp"
#include "pgnoise/calibration.hpp"
#include "pgnoise/example_bundle.hpp"
#include "pgnoise/image_io.hpp"

namespace pgnoise::cli {
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kValidateKey = 0x76616c6964617465ULL;

std::string number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string short_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

bool has_png_extension(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    return ext == ".png";
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

/// Runs task(i) for i in [0, count) on up to `jobs` threads. Exceptions stay
/// inside the task; callers record failures themselves.
template <typename Task>
void parallel_for(std::size_t count, int jobs, Task&& task) {
    const auto workers = static_cast<std::size_t>(std::max(1, jobs));
    if (workers == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < std::min(workers, count); ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) task(i);
        });
    }
}

bool check_common(const CliConfig& config, std::ostream& err) {
    if (config.jobs < 1) {
        err << "error: --jobs must be >= 1\n";
        return false;
    }
    return true;
}

bool require_dir(const fs::path& dir, const char* flag, std::ostream& err) {
    std::error_code ec;
    if (dir.empty() || !fs::is_directory(dir, ec)) {
        err << "error: " << flag << " '" << dir.string() << "' is not a directory\n";
        return false;
    }
    return true;
}

bool make_out_dir(const fs::path& dir, std::ostream& err) {
    if (dir.empty()) {
        err << "error: --out_dir is required\n";
        return false;
    }
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        err << "error: cannot create '" << dir.string() << "': " << ec.message() << "\n";
        return false;
    }
    return true;
}

struct PairFiles {
    std::string id;
    fs::path clean;
    fs::path noisy;
};

std::vector<PairFiles> find_pairs(const fs::path& scene_dir) {
    std::vector<PairFiles> pairs;
    for (const auto& entry : fs::directory_iterator(scene_dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string name = entry.path().filename().string();
        if (!ends_with(name, "_clean.png")) continue;
        const std::string id = name.substr(0, name.size() - std::string("_clean.png").size());
        const fs::path noisy = scene_dir / (id + "_noisy.png");
        if (fs::is_regular_file(noisy)) pairs.push_back({id, entry.path(), noisy});
    }
    std::sort(pairs.begin(), pairs.end(),
              [](const PairFiles& x, const PairFiles& y) { return x.id < y.id; });
    return pairs;
}

void print_histogram_summary(std::ostream& out, const char* label, const Histogram& h) {
    out << "  " << label << ": count=" << h.total_mass() << " mean=" << short_number(h.mean())
        << " min=" << short_number(h.lower()) << " max=" << short_number(h.upper()) << "\n";
}

}  // namespace

ParamBundle resolve_bundle(const CliConfig& config) {
    if (!config.bundle.empty()) return load_bundle(config.bundle.string());
    if (const char* env = std::getenv(kBundleEnvVar); env && *env) return load_bundle(env);
    return parse_bundle(builtin_bundle_text());
}

int cmd_generate(const CliConfig& config, std::ostream& out, std::ostream& err) {
    if (!check_common(config, err)) return kInputError;
    if (config.n_obs < 1) {
        err << "error: --n_obs must be >= 1\n";
        return kInputError;
    }
    if (config.bit_depth != 0 && config.bit_depth != 8 && config.bit_depth != 16) {
        err << "error: --bit-depth must be 8 or 16\n";
        return kInputError;
    }
    if (!require_dir(config.img_dir, "--img_dir", err)) return kInputError;

    std::optional<ParamBundle> bundle;
    try {
        bundle.emplace(resolve_bundle(config));
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    const std::string identity = bundle_identity(*bundle);

    std::vector<fs::path> inputs;
    for (const auto& entry : fs::directory_iterator(config.img_dir))
        if (entry.is_regular_file() && has_png_extension(entry.path())) inputs.push_back(entry.path());
    std::sort(inputs.begin(), inputs.end());
    if (inputs.empty()) {
        err << "error: no input images in '" << config.img_dir.string() << "'\n";
        return kInputError;
    }
    if (!make_out_dir(config.out_dir, err)) return kInputError;

    std::vector<std::optional<ImageRecord>> records(inputs.size());
    std::vector<std::string> failures(inputs.size());
    std::mutex failure_lock;
    auto record_failure = [&](std::size_t image, const std::string& message) {
        std::lock_guard lock(failure_lock);
        if (failures[image].empty()) failures[image] = message;
    };

    parallel_for(inputs.size(), config.jobs, [&](std::size_t i) {
        try {
            records[i].emplace(load_image(inputs[i]));
        } catch (const Error& e) {
            record_failure(i, e.what());
        }
    });
    for (const auto& record : records)
        if (record)
            for (const auto& w : record->warnings) err << "warning: " << w << "\n";

    const auto n = static_cast<std::size_t>(config.n_obs);
    parallel_for(inputs.size() * n, config.jobs, [&](std::size_t task) {
        const std::size_t image = task / n;
        const int index = static_cast<int>(task % n);
        if (!records[image]) return;
        const ImageRecord& record = *records[image];
        const std::string stem = inputs[image].stem().string();
        try {
            GenerateOptions options;
            options.count = config.n_obs;
            options.seed = config.seed;
            options.clip = config.clip;
            options.fixed_params = config.fixed_params;
            options.stream_key = hash_name(stem);
            const Realization r = generate_realization(record.pixels, *bundle, options, index);
            const std::string base = stem + "_noisy_" + std::to_string(index);
            save_image(r.image, config.out_dir / (base + ".png"),
                       config.bit_depth == 0 ? record.bit_depth : config.bit_depth);
            write_sidecar(SidecarRecord{r.params, config.seed, index, identity,
                                        inputs[image].filename().string()},
                          config.out_dir / (base + ".json"));
        } catch (const Error& e) {
            record_failure(image, "realization " + std::to_string(index) + ": " + e.what());
        }
    });

    std::size_t failed = 0;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        const std::string name = inputs[i].filename().string();
        if (failures[i].empty()) {
            out << name << ": wrote " << config.n_obs << " noisy image(s)\n";
        } else {
            ++failed;
            out << name << ": FAILED\n";
            err << "error: " << name << ": " << failures[i] << "\n";
        }
    }
    if (failed > 0) {
        err << failed << " of " << inputs.size() << " image(s) failed\n";
        return kPartialFailure;
    }
    return kOk;
}

int cmd_calibrate(const CliConfig& config, std::ostream& out, std::ostream& err) {
    if (!check_common(config, err)) return kInputError;
    if (config.bin_count < 1 || config.estimation_bins < 2) {
        err << "error: --bins must be >= 1 and --estimation-bins >= 2\n";
        return kInputError;
    }
    if (!require_dir(config.img_dir, "--img_dir", err)) return kInputError;

    std::vector<fs::path> scene_dirs;
    for (const auto& entry : fs::directory_iterator(config.img_dir))
        if (entry.is_directory()) scene_dirs.push_back(entry.path());
    std::sort(scene_dirs.begin(), scene_dirs.end());

    std::vector<std::optional<SceneCalibration>> results(scene_dirs.size());
    std::vector<std::vector<std::string>> messages(scene_dirs.size());
    parallel_for(scene_dirs.size(), config.jobs, [&](std::size_t i) {
        const std::string scene_id = scene_dirs[i].filename().string();
        std::vector<ScenePair> pairs;
        for (const PairFiles& files : find_pairs(scene_dirs[i])) {
            try {
                ScenePair pair{load_image(files.clean).pixels, load_image(files.noisy).pixels,
                               scene_id, files.id};
                pairs.push_back(std::move(pair));
            } catch (const Error& e) {
                messages[i].push_back("scene " + scene_id + ": pair " + files.id + " skipped: " +
                                      e.what());
            }
        }
        if (pairs.empty()) {
            messages[i].push_back("scene " + scene_id + ": no valid clean/noisy pairs, skipped");
            return;
        }
        SceneCalibration cal = calibrate_scene(scene_id, pairs, config.estimation_bins);
        for (const auto& w : cal.warnings) messages[i].push_back("scene " + scene_id + ": " + w);
        results[i].emplace(std::move(cal));
    });

    std::vector<SceneCalibration> scenes;
    for (std::size_t i = 0; i < scene_dirs.size(); ++i) {
        for (const auto& m : messages[i]) err << "warning: " << m << "\n";
        if (results[i]) scenes.push_back(std::move(*results[i]));
    }
    if (scenes.empty()) {
        err << "error: no valid clean/noisy pairs under '" << config.img_dir.string() << "'\n";
        return kInputError;
    }
    if (scenes.size() == 1)
        err << "warning: only one scene; every slope histogram holds a single sample\n";

    std::optional<ParamBundle> bundle;
    try {
        bundle.emplace(build_param_bundle(scenes, config.bin_count));
    } catch (const Error& e) {
        err << "error: calibration failed: " << e.what() << "\n";
        return kCalibrationFailure;
    }
    if (!make_out_dir(config.out_dir, err)) return kInputError;

    try {
        save_bundle(*bundle, (config.out_dir / "bundle.json").string());
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    std::ofstream csv(config.out_dir / "estimates.csv", std::ios::binary);
    csv << "scene,pair,channel,a,b,noise_var\n";
    for (const SceneCalibration& scene : scenes) {
        for (Channel ch : kChannels) {
            const ChannelCalibration& cal = scene[ch];
            for (std::size_t k = 0; k < cal.estimates.size(); ++k) {
                const AbEstimate& e = cal.estimates[k];
                csv << scene.scene_id << "," << e.pair_id << "," << channel_name(ch) << ","
                    << number(e.a) << "," << number(e.b) << "," << number(cal.noise_variances[k])
                    << "\n";
            }
        }
    }
    if (!csv) {
        err << "error: cannot write estimates.csv\n";
        return kInputError;
    }

    out << "calibrated " << scenes.size() << " scene(s) -> "
        << (config.out_dir / "bundle.json").string() << "\n";
    for (Channel ch : kChannels) {
        out << channel_name(ch) << ":\n";
        print_histogram_summary(out, "slope    ", (*bundle)[ch].slope);
        print_histogram_summary(out, "intercept", (*bundle)[ch].intercept);
        print_histogram_summary(out, "a        ", (*bundle)[ch].a);
    }
    return kOk;
}

int cmd_validate(const CliConfig& config, std::ostream& out, std::ostream& err) {
    if (!check_common(config, err)) return kInputError;
    if (config.samples < 1 || config.plane_size < 2 || !(config.tolerance > 0.0)) {
        err << "error: --samples >= 1, --plane-size >= 2 and --tolerance > 0 required\n";
        return kInputError;
    }
    std::optional<ParamBundle> bundle;
    std::vector<NoiseParams> params;
    try {
        bundle.emplace(resolve_bundle(config));
        for (int k = 0; k < config.samples; ++k) {
            Rng rng = Rng::substream(config.seed, {kValidateKey, static_cast<std::uint64_t>(k)});
            params.push_back(sample_noise_params(*bundle, rng));
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }

    constexpr int kGridSize = 9;  // y = 0.1, 0.2, ..., 0.9
    struct Row {
        Channel channel;
        double y, a, b, predicted, empirical, rel_err;
        bool pass;
    };
    const std::size_t count = params.size() * 3 * kGridSize;
    std::vector<Row> rows(count);
    parallel_for(count, config.jobs, [&](std::size_t task) {
        const std::size_t k = task / (3 * kGridSize);
        const auto ch = kChannels[(task / kGridSize) % 3];
        const int yi = static_cast<int>(task % kGridSize);
        const double y = 0.1 * (yi + 1);
        const ChannelParams& p = params[k][ch];
        Rng rng = Rng::substream(config.seed, {kValidateKey, k, static_cast<std::uint64_t>(channel_index(ch)),
                                               static_cast<std::uint64_t>(yi), 1});
        const ImagePlane noisy =
            add_noise_plane(ImagePlane::Constant(config.plane_size, config.plane_size, y), p, rng,
                            false);
        const Eigen::ArrayXXd d = noisy - y;
        const double empirical = (d - d.mean()).square().sum() / static_cast<double>(d.size() - 1);
        const double predicted = predicted_variance(y, p);
        const double diff = std::fabs(empirical - predicted);
        const double rel = predicted > 0.0 ? diff / predicted : (diff == 0.0 ? 0.0 : INFINITY);
        const bool pass = rel <= config.tolerance || (predicted < 1e-5 && diff <= 1e-7);
        rows[task] = {ch, y, p.a, p.b, predicted, empirical, rel, pass};
    });

    std::ostringstream csv;
    csv << "channel,y,a,b,predicted_var,empirical_var,rel_err\n";
    std::size_t failed = 0;
    for (const Row& r : rows) {
        csv << channel_name(r.channel) << "," << number(r.y) << "," << number(r.a) << ","
            << number(r.b) << "," << number(r.predicted) << "," << number(r.empirical) << ","
            << number(r.rel_err) << "\n";
        failed += r.pass ? 0 : 1;
    }
    if (config.out_dir.empty()) {
        out << csv.str();
    } else {
        if (!make_out_dir(config.out_dir, err)) return kInputError;
        std::ofstream file(config.out_dir / "validation.csv", std::ios::binary);
        file << csv.str();
        if (!file) {
            err << "error: cannot write validation.csv\n";
            return kInputError;
        }
    }
    (config.out_dir.empty() ? err : out)
        << "validate: " << rows.size() << " checks, " << failed << " outside tolerance\n";
    return failed == 0 ? kOk : kValidationFailure;
}

}  // namespace pgnoise::cli
