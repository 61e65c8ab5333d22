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
#include <limits>
#include <vector>

#include "doctest.h"
#include "pgnoise/noise_model.hpp"
#include "support/oracles.hpp"

using namespace pgnoise;
using pgnoise::testing::moments;

namespace {

std::vector<double> poisson_component_draws(double y, double a, int n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (double& x : xs) x = sample_poisson_component(y, a, rng);
    return xs;
}

double poisson_pmf(double mean, int k) {
    return std::exp(-mean + k * std::log(mean) - std::lgamma(k + 1.0));
}

}  // namespace

TEST_CASE("poisson component degenerate cases") {
    Rng rng(1);
    CHECK(sample_poisson_component(0.5, 0.0, rng) == 0.5);
    for (int i = 0; i < 100; ++i) CHECK(sample_poisson_component(0.0, 0.0002, rng) == 0.0);
}

TEST_CASE("poisson component rejects non-finite and negative input") {
    Rng rng(1);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(sample_poisson_component(nan, 0.1, rng), Error);
    CHECK_THROWS_AS(sample_poisson_component(0.5, INFINITY, rng), Error);
    CHECK_THROWS_AS(sample_poisson_component(-0.1, 0.1, rng), Error);
    try {
        sample_poisson_component(0.5, nan, rng);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidInput);
    }
}

TEST_CASE("poisson component moments at y=0.5, a=0.0002") {
    const double y = 0.5, a = 0.0002;
    const int n = 1'000'000;
    const auto m = moments(poisson_component_draws(y, a, n, 11));
    CHECK(std::fabs(m.mean - y) <= 3.0 * std::sqrt(a * y / n));
    CHECK(m.variance == doctest::Approx(a * y).epsilon(0.02));
}

TEST_CASE("poisson sampler matches the exact pmf on both exact branches") {
    // mean 3 uses multiplication, mean 30 uses PTRS.
    for (double mean : {3.0, 30.0}) {
        CAPTURE(mean);
        Rng rng(5);
        const int n = 400'000;
        std::vector<int> counts(200, 0);
        for (int i = 0; i < n; ++i) {
            const auto k = sample_poisson(mean, rng);
            REQUIRE(k >= 0);
            if (k < 200) ++counts[static_cast<std::size_t>(k)];
        }
        for (int k = 0; k < 200; ++k) {
            const double p = poisson_pmf(mean, k);
            if (p * n < 50) continue;
            const double se = std::sqrt(n * p * (1 - p));
            CAPTURE(k);
            CHECK(std::fabs(counts[static_cast<std::size_t>(k)] - n * p) <= 4.5 * se);
        }
    }
}

TEST_CASE("poisson sampler mean and variance across the branch thresholds") {
    for (double mean : {0.5, 9.99, 10.0, 500.0, 999.0, 1000.0, 5000.0, 1e6}) {
        CAPTURE(mean);
        Rng rng(17);
        const int n = 200'000;
        std::vector<double> xs(n);
        for (double& x : xs) x = static_cast<double>(sample_poisson(mean, rng));
        const auto m = moments(xs);
        CHECK(std::fabs(m.mean - mean) <= 4.0 * std::sqrt(mean / n));
        // Var of the sample variance of a Poisson: mean^2 * 2/(n-1) + mean/n.
        const double se = std::sqrt(2.0 * mean * mean / (n - 1) + mean / n);
        CHECK(std::fabs(m.variance - mean) <= 4.0 * se);
    }
}

TEST_CASE("gaussian component") {
    Rng rng(3);
    CHECK(sample_gaussian_component(0.0, rng) == 0.0);
    CHECK_THROWS_AS(sample_gaussian_component(-1e-9, rng), Error);
    CHECK_THROWS_AS(sample_gaussian_component(NAN, rng), Error);

    const int n = 1'000'000;
    std::vector<double> xs(n);
    for (double& x : xs) x = sample_gaussian_component(0.0030, rng);
    CHECK(moments(xs).variance == doctest::Approx(0.0030).epsilon(0.02));

    for (double& x : xs) x = sample_gaussian_component(1.0, rng);
    CHECK(std::fabs(moments(xs).mean) <= 3.0 / 1000.0);
}

TEST_CASE("predicted variance") {
    CHECK(predicted_variance(0.0, {0.0002, 0.0030}) == 0.0030);
    CHECK(predicted_variance(0.0, {0.7, 0.25}) == 0.25);
    CHECK(predicted_variance(0.5, {0.0002, 0.0030}) == doctest::Approx(0.0031).epsilon(1e-12));
    CHECK(predicted_variance(1.0, {0.0001, 0.0004}) == doctest::Approx(0.0005).epsilon(1e-12));
    CHECK_THROWS_AS(predicted_variance(1.5, {0.1, 0.1}), Error);
    CHECK_THROWS_AS(predicted_variance(0.5, {-0.1, 0.1}), Error);
}

TEST_CASE("predicted variance is monotone in y, a and b") {
    Rng rng(23);
    for (int i = 0; i < 1000; ++i) {
        const double y0 = rng.uniform(), y1 = rng.uniform();
        const ChannelParams p{1e-3 * rng.uniform_open(), 1e-2 * rng.uniform()};
        const ChannelParams q{p.a + 1e-4 * rng.uniform(), p.b + 1e-3 * rng.uniform()};
        if (y0 <= y1) CHECK(predicted_variance(y0, p) <= predicted_variance(y1, p));
        CHECK(predicted_variance(y0, p) <= predicted_variance(y0, q));
    }
}

TEST_CASE("add_noise_plane with zero parameters is the identity") {
    Rng source(29);
    ImagePlane clean(37, 53);
    for (Eigen::Index i = 0; i < clean.size(); ++i) clean.data()[i] = source.uniform();
    clean(0, 0) = 0.0;
    clean(1, 1) = 1.0;
    Rng rng(1);
    for (bool clip : {true, false}) {
        const ImagePlane out = add_noise_plane(clean, {0.0, 0.0}, rng, clip);
        CHECK((out == clean).all());
    }
}

TEST_CASE("add_noise_plane follows the variance law on a constant plane") {
    const ChannelParams params{0.0002, 0.0030};
    Rng rng(31);
    const ImagePlane out = add_noise_plane(ImagePlane::Constant(1000, 1000, 0.5), params, rng, false);
    CHECK(out.rows() == 1000);
    CHECK(out.cols() == 1000);
    const auto m = moments(out);
    CHECK(m.variance == doctest::Approx(params.a * 0.5 + params.b).epsilon(0.02));
    CHECK(std::fabs(m.mean - 0.5) <= 3.0 * std::sqrt((params.a * 0.5 + params.b) / 1e6));
}

TEST_CASE("add_noise_plane clamps when clipping") {
    Rng rng(37);
    const ImagePlane high = add_noise_plane(ImagePlane::Constant(200, 200, 1.0), {0.0002, 0.003}, rng);
    CHECK(high.maxCoeff() <= 1.0);
    const ImagePlane low = add_noise_plane(ImagePlane::Constant(200, 200, 0.0), {0.0002, 0.003}, rng);
    CHECK(low.minCoeff() >= 0.0);
    const ImagePlane raw =
        add_noise_plane(ImagePlane::Constant(200, 200, 1.0), {0.0002, 0.003}, rng, false);
    CHECK(raw.maxCoeff() > 1.0);
}

TEST_CASE("add_noise_plane rejects out-of-range clean samples and bad params") {
    Rng rng(1);
    ImagePlane clean = ImagePlane::Constant(4, 4, 0.5);
    clean(2, 3) = -0.01;
    CHECK_THROWS_AS(add_noise_plane(clean, {0.001, 0.001}, rng), Error);
    clean(2, 3) = 1.01;
    CHECK_THROWS_AS(add_noise_plane(clean, {0.001, 0.001}, rng), Error);
    clean(2, 3) = 0.5;
    CHECK_THROWS_AS(add_noise_plane(clean, {-0.001, 0.001}, rng), Error);
    CHECK_THROWS_AS(add_noise_plane(clean, {0.001, NAN}, rng), Error);
}

TEST_CASE("add_noise_plane works on float planes and block expressions") {
    Rng rng(41);
    Plane<float> clean = Plane<float>::Constant(300, 400, 0.25f);
    const Plane<float> out = add_noise_plane(clean.block(0, 0, 300, 300), {0.0005, 0.001}, rng, false);
    CHECK(out.rows() == 300);
    CHECK(out.cols() == 300);
    CHECK(moments(out).variance == doctest::Approx(0.0005 * 0.25 + 0.001).epsilon(0.03));
}

// 3 standard errors per check, Bonferroni-adjusted for the 16 checks below
// (family-wise alpha 0.0027 -> 4.0 standard errors per check).
TEST_CASE("variance law holds on a random parameter grid") {
    constexpr double kBound = 4.0;
    Rng pick(43);
    for (int trial = 0; trial < 8; ++trial) {
        const double y = 0.05 + 0.9 * pick.uniform();
        const ChannelParams p{trial % 4 == 0 ? 0.0 : 1e-3 * pick.uniform_open(), 5e-3 * pick.uniform()};
        CAPTURE(y);
        CAPTURE(p.a);
        CAPTURE(p.b);
        Rng rng(100 + trial);
        const ImagePlane out = add_noise_plane(ImagePlane::Constant(1000, 1000, y), p, rng, false);
        const auto m = moments(out);
        const double v = predicted_variance(y, p);
        const double se_var = v * std::sqrt(2.0 / (1e6 - 1)) + 1e-15;
        CHECK(std::fabs(m.variance - v) <= kBound * se_var);
        CHECK(std::fabs(m.mean - y) <= kBound * std::sqrt(v / 1e6) + 1e-15);
    }
}

TEST_CASE("variance z-scores are standard normal across seeds") {
    // z = (sample variance - a*y - b) / SE over 200 independent seeds; a
    // calibrated sampler gives mean(z) ~ 0 and sd(z) ~ 1.
    const double y = 0.6, v = predicted_variance(y, {8e-5, 4e-3});
    const int seeds = 200, n = 100'000;
    std::vector<double> zs;
    for (int s = 0; s < seeds; ++s) {
        Rng rng(9000 + s);
        const ImagePlane out = add_noise_plane(ImagePlane::Constant(1, n, y), {8e-5, 4e-3}, rng, false);
        zs.push_back((moments(out).variance - v) / (v * std::sqrt(2.0 / (n - 1))));
    }
    const auto z = moments(zs);
    CHECK(std::fabs(z.mean) <= 4.0 / std::sqrt(seeds));
    CHECK(std::sqrt(z.variance) == doctest::Approx(1.0).epsilon(0.2));
}

TEST_CASE("add_noise_rgb") {
    const RgbImage gray = RgbImage::constant(512, 512, 0.5);

    SUBCASE("zero parameters are the identity") {
        Rng rng(1);
        CHECK(add_noise_rgb(gray, NoiseParams{}, rng) == gray);
    }

    SUBCASE("per-channel variance with the reference parameters") {
        const NoiseParams params{{0.0002, 0.0030}, {0.0001, 0.0004}, {0.0001, 0.0009}};
        Rng rng(47);
        const RgbImage big = RgbImage::constant(1000, 1000, 0.5);
        const RgbImage out = add_noise_rgb(big, params, rng, false);
        for (Channel ch : kChannels) {
            CAPTURE(channel_name(ch));
            CHECK(moments(out[ch]).variance ==
                  doctest::Approx(predicted_variance(0.5, params[ch])).epsilon(0.02));
        }
    }

    SUBCASE("same seed, same output; channels follow the documented substreams") {
        const NoiseParams params{{0.0002, 0.0030}, {0.0001, 0.0004}, {0.0001, 0.0009}};
        Rng r1(53), r2(53);
        const RgbImage x = add_noise_rgb(gray, params, r1);
        CHECK(x == add_noise_rgb(gray, params, r2));

        const std::uint64_t base = Rng(53).bits();
        Rng green = Rng::substream(base, {1});
        CHECK((add_noise_plane(gray.green, params.green, green) == x.green).all());
    }

    SUBCASE("mismatched planes") {
        RgbImage bad = gray;
        bad.blue = ImagePlane::Constant(3, 3, 0.5);
        Rng rng(1);
        CHECK_THROWS_AS(add_noise_rgb(bad, NoiseParams{}, rng), Error);
    }
}
