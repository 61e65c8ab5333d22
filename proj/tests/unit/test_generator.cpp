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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "pgnoise/example_bundle.hpp"
#include "pgnoise/generator.hpp"
#include "support/oracles.hpp"

using namespace pgnoise;
using pgnoise::testing::moments;

namespace {

const NoiseParams kReference{{0.0002, 0.0030}, {0.0001, 0.0004}, {0.0001, 0.0009}};

ParamBundle same_channels(const ChannelHistograms& h) { return ParamBundle(h, h, h); }

}  // namespace

TEST_CASE("ParamBundle rejects gain histograms reaching below zero") {
    const Histogram ok({0.0, 1e-4}, {1.0});
    const Histogram bad({-1e-4, 0.0, 1e-4}, {0.0, 1.0});
    CHECK_NOTHROW(same_channels({ok, ok, ok}));
    try {
        ParamBundle(ChannelHistograms{ok, ok, ok}, ChannelHistograms{ok, ok, bad},
                    ChannelHistograms{ok, ok, ok});
        FAIL("expected a validation error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Validation);
        CHECK(std::string(e.what()).find("green") != std::string::npos);
        CHECK(std::string(e.what()).find("a_hist") != std::string::npos);
    }
}

TEST_CASE("constant line: b is the intercept") {
    const auto bundle = same_channels({Histogram::point_mass(0.0), Histogram::point_mass(0.0030),
                                       Histogram({1e-4, 3e-4}, {1.0})});
    Rng rng(1);
    for (int i = 0; i < 1000; ++i) {
        const ChannelParams p = sample_channel_params(bundle, Channel::Red, rng);
        CHECK(p.b == doctest::Approx(0.0030).epsilon(1e-6));
        CHECK(p.a >= 1e-4);
        CHECK(p.a < 3e-4);
    }
}

TEST_CASE("a guaranteed-negative line exhausts the attempts") {
    const auto bundle = same_channels({Histogram::point_mass(-1.0), Histogram::point_mass(0.0),
                                       Histogram::point_mass(0.0002)});
    Rng rng(1);
    try {
        sample_channel_params(bundle, Channel::Blue, rng, 50);
        FAIL("expected sampling-exhausted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SamplingExhausted);
        CHECK(std::string(e.what()).find("blue") != std::string::npos);
    }
    CHECK_THROWS_AS(sample_noise_params(bundle, rng), Error);
    CHECK_THROWS_AS(sample_channel_params(bundle, Channel::Red, rng, 0), Error);
}

TEST_CASE("rejection rate matches the closed form") {
    // P(accept) = P(c > 0.0002) with c ~ U[-0.0001, 0.0003] = 1/4.
    const auto bundle = same_channels({Histogram::point_mass(-1.0), Histogram({-0.0001, 0.0003}, {1.0}),
                                       Histogram::point_mass(0.0002)});
    Rng rng(7);
    const int calls = 100'000;
    long attempts = 0;
    for (int i = 0; i < calls; ++i) {
        SampleTrace trace;
        const ChannelParams p = sample_channel_params(bundle, Channel::Red, rng, kDefaultMaxAttempts, &trace);
        attempts += trace.attempts;
        CHECK(p.b == trace.slope * trace.a + trace.intercept);
        CHECK(p.a == trace.a);
    }
    CHECK(static_cast<double>(attempts) / calls == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("point-mass bundle reproduces the reference parameters") {
    const ParamBundle bundle = point_mass_bundle(kReference);
    Rng rng(3);
    const NoiseParams p = sample_noise_params(bundle, rng);
    for (Channel ch : kChannels) {
        CAPTURE(channel_name(ch));
        CHECK(p[ch].a == doctest::Approx(kReference[ch].a).epsilon(1e-6));
        CHECK(p[ch].b == doctest::Approx(kReference[ch].b).epsilon(1e-6));
    }
    Rng again(3);
    CHECK(sample_noise_params(bundle, again) == p);
}

TEST_CASE("two-bin slope histogram is sampled evenly") {
    const auto bundle = same_channels({Histogram({-1.0, 0.0, 1.0}, {1.0, 1.0}),
                                       Histogram::point_mass(1.0), Histogram::point_mass(1e-4)});
    Rng rng(9);
    const int n = 10'000;
    std::array<int, 3> negative{};
    for (int i = 0; i < n; ++i) {
        const NoiseParams p = sample_noise_params(bundle, rng);
        // b < intercept exactly when the slope came from the lower bin.
        for (Channel ch : kChannels) negative[static_cast<std::size_t>(channel_index(ch))] += p[ch].b < 1.0;
    }
    for (int count : negative) CHECK(std::fabs(count / double(n) - 0.5) <= 0.02);
}

TEST_CASE("emitted parameters respect a > 0 and b >= 0") {
    const ParamBundle bundle = make_example_bundle();
    Rng rng(21);
    for (int i = 0; i < 20'000; ++i) {
        const NoiseParams p = sample_noise_params(bundle, rng);
        for (Channel ch : kChannels) {
            CHECK(p[ch].a > 0.0);
            CHECK(p[ch].b >= 0.0);
            CHECK(p[ch].a >= bundle[ch].a.lower());
            CHECK(p[ch].a <= bundle[ch].a.upper());
        }
    }
}

TEST_CASE("generate_noisy_images") {
    SUBCASE("near-zero noise leaves the image unchanged") {
        const ParamBundle bundle = point_mass_bundle({{1e-12, 0.0}, {1e-12, 0.0}, {1e-12, 0.0}});
        RgbImage clean(16, 16);
        Rng fill(1);
        for (Channel ch : kChannels)
            for (Eigen::Index i = 0; i < clean[ch].size(); ++i) clean[ch].data()[i] = fill.uniform();
        const auto out = generate_noisy_images(clean, bundle, 1, 42);
        REQUIRE(out.size() == 1);
        for (Channel ch : kChannels) CHECK((out[0].image[ch] - clean[ch]).abs().maxCoeff() < 1e-5);
    }

    SUBCASE("deterministic for a fixed seed") {
        const ParamBundle bundle = make_example_bundle();
        const RgbImage clean = RgbImage::constant(32, 48, 0.4);
        const auto a = generate_noisy_images(clean, bundle, 3, 99);
        const auto b = generate_noisy_images(clean, bundle, 3, 99);
        REQUIRE(a.size() == 3);
        for (int i = 0; i < 3; ++i) {
            CHECK(a[i].index == i);
            CHECK(a[i].image == b[i].image);
            CHECK(a[i].params == b[i].params);
        }
        CHECK(!(a[0].params == a[1].params));
        const auto other = generate_noisy_images(clean, bundle, 1, 100);
        CHECK(!(other[0].image == a[0].image));
    }

    SUBCASE("fixed parameters are shared by every realization") {
        GenerateOptions options;
        options.count = 4;
        options.seed = 5;
        options.fixed_params = true;
        const ParamBundle bundle = make_example_bundle();
        const auto out = generate_noisy_images(RgbImage::constant(8, 8, 0.5), bundle, options);
        for (const auto& r : out) CHECK(r.params == out[0].params);
        CHECK(!(out[0].image == out[1].image));
        options.stream_key = 77;
        CHECK(generate_noisy_images(RgbImage::constant(8, 8, 0.5), bundle, options)[0].params ==
              out[0].params);
    }

    SUBCASE("pooled variance over 100 realizations follows the variance law") {
        const ParamBundle bundle = point_mass_bundle(kReference);
        const RgbImage gray = RgbImage::constant(100, 100, 0.5);
        const auto out = generate_noisy_images(gray, bundle, 100, 2024, false);
        for (Channel ch : kChannels) {
            std::vector<double> pooled;
            for (const auto& r : out)
                pooled.insert(pooled.end(), r.image[ch].data(), r.image[ch].data() + r.image[ch].size());
            CAPTURE(channel_name(ch));
            CHECK(moments(pooled).variance ==
                  doctest::Approx(predicted_variance(0.5, kReference[ch])).epsilon(0.02));
        }
    }

    SUBCASE("invalid count") {
        CHECK_THROWS_AS(generate_noisy_images(RgbImage::constant(2, 2, 0.5), make_example_bundle(), 0, 1),
                        Error);
    }

    SUBCASE("errors carry the realization index") {
        const auto bundle = same_channels({Histogram::point_mass(-1.0), Histogram::point_mass(0.0),
                                           Histogram::point_mass(0.0002)});
        try {
            generate_noisy_images(RgbImage::constant(2, 2, 0.5), bundle, 2, 1);
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::SamplingExhausted);
            CHECK(std::string(e.what()).find("realization 0") != std::string::npos);
        }
    }
}
