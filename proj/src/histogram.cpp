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

#include "pgnoise/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pgnoise/errors.hpp"

namespace pgnoise {

Histogram::Histogram(std::vector<double> edges, std::vector<double> mass)
    : edges_(std::move(edges)), mass_(std::move(mass)) {
    if (mass_.empty()) fail(ErrorCode::InvalidInput, "histogram needs at least one bin");
    if (edges_.size() != mass_.size() + 1)
        fail(ErrorCode::InvalidInput, "histogram needs bin_count + 1 edges, got " +
                                          std::to_string(edges_.size()) + " edges for " +
                                          std::to_string(mass_.size()) + " bins");
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (!std::isfinite(edges_[i]))
            fail(ErrorCode::InvalidInput, "edge " + std::to_string(i) + " is not finite");
        if (i > 0 && !(edges_[i] > edges_[i - 1]))
            fail(ErrorCode::InvalidInput,
                 "edges not strictly increasing at index " + std::to_string(i));
    }
    for (std::size_t i = 0; i < mass_.size(); ++i) {
        if (!std::isfinite(mass_[i]) || mass_[i] < 0.0)
            fail(ErrorCode::InvalidInput,
                 "mass " + std::to_string(i) + " must be finite and >= 0");
        total_ += mass_[i];
    }
    if (!(total_ > 0.0) || !std::isfinite(total_))
        fail(ErrorCode::InvalidInput, "histogram total mass must be positive and finite");

    cumulative_.resize(mass_.size());
    double running = 0.0;
    for (std::size_t i = 0; i < mass_.size(); ++i) {
        running += mass_[i];
        cumulative_[i] = running / total_;
    }
    // The last non-empty bin must be selectable for every u < 1.
    for (std::size_t i = mass_.size(); i-- > 0;) {
        cumulative_[i] = 1.0;
        if (mass_[i] > 0.0) break;
    }
}

Histogram Histogram::point_mass(double value) {
    if (!std::isfinite(value)) fail(ErrorCode::InvalidInput, "point mass must be finite");
    const double half = 0.5 * std::max(std::fabs(value) * 1e-6, 1e-12);
    return Histogram({value - half, value + half}, {1.0});
}

double Histogram::mean() const noexcept {
    double acc = 0.0;
    for (std::size_t i = 0; i < mass_.size(); ++i)
        acc += mass_[i] * 0.5 * (edges_[i] + edges_[i + 1]);
    return acc / total_;
}

double Histogram::variance() const noexcept {
    const double mu = mean();
    double acc = 0.0;
    for (std::size_t i = 0; i < mass_.size(); ++i) {
        const double center = 0.5 * (edges_[i] + edges_[i + 1]);
        const double width = edges_[i + 1] - edges_[i];
        acc += mass_[i] * ((center - mu) * (center - mu) + width * width / 12.0);
    }
    return acc / total_;
}

Histogram build_histogram(std::span<const double> values, int bin_count) {
    if (values.empty()) fail(ErrorCode::EmptyData, "cannot build a histogram from no values");
    if (bin_count < 1) fail(ErrorCode::InvalidInput, "bin_count must be >= 1");
    for (double v : values)
        if (!std::isfinite(v)) fail(ErrorCode::InvalidInput, "histogram input is not finite");

    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (lo == hi) {
        Histogram single = Histogram::point_mass(lo);
        return Histogram(single.edges(), {static_cast<double>(values.size())});
    }

    const auto k = static_cast<std::size_t>(bin_count);
    const double width = (hi - lo) / static_cast<double>(k);
    std::vector<double> edges(k + 1);
    for (std::size_t i = 0; i <= k; ++i) edges[i] = lo + width * static_cast<double>(i);
    edges[k] = hi;
    // Tiny ranges can collapse neighbouring edges in floating point.
    for (std::size_t i = 1; i <= k; ++i)
        if (!(edges[i] > edges[i - 1]))
            fail(ErrorCode::InvalidInput, "value range too narrow for the requested bin_count");

    std::vector<double> mass(k, 0.0);
    for (double v : values) {
        auto bin = static_cast<std::size_t>((v - lo) / width);
        bin = std::min(bin, k - 1);
        // Floating-point division can land one bin off near an edge.
        while (bin > 0 && v < edges[bin]) --bin;
        while (bin + 1 < k && v >= edges[bin + 1]) ++bin;
        mass[bin] += 1.0;
    }
    return Histogram(std::move(edges), std::move(mass));
}

double sample_histogram(const Histogram& h, Rng& rng) {
    const double u = rng.uniform();
    const auto cum = h.cumulative();
    const auto bin = static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), u) - cum.begin());
    const std::size_t i = std::min(bin, h.bin_count() - 1);
    const double lo = h.edges()[i];
    const double hi = h.edges()[i + 1];
    const double x = lo + (hi - lo) * rng.uniform();
    return x < hi ? x : lo;
}

double cdf(const Histogram& h, double x) noexcept {
    const auto& edges = h.edges();
    if (!(x > edges.front())) return 0.0;
    if (x >= edges.back()) return 1.0;
    const auto i = static_cast<std::size_t>(
        std::upper_bound(edges.begin(), edges.end(), x) - edges.begin() - 1);
    const double below = i == 0 ? 0.0 : h.cumulative()[i - 1];
    const double frac = (x - edges[i]) / (edges[i + 1] - edges[i]);
    // cumulative() is forced to 1 after the last occupied bin; use raw mass here.
    return std::min(1.0, below + frac * h.mass()[i] / h.total_mass());
}

}  // namespace pgnoise
