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

#include <cstddef>
#include <span>
#include <vector>

#include "pgnoise/rng.hpp"

namespace pgnoise {

inline constexpr int kDefaultBinCount = 64;

/// Binned empirical distribution with a piecewise-constant density: K bins
/// delimited by K+1 strictly increasing edges, each carrying a non-negative
/// weight. Immutable once constructed.
class Histogram {
public:
    /// Validates and takes ownership. Throws InvalidInput when edges are not
    /// strictly increasing and finite, sizes disagree, a mass is negative or
    /// non-finite, or the total mass is zero.
    Histogram(std::vector<double> edges, std::vector<double> mass);

    /// One bin of nominal width around `value` (see build_histogram).
    static Histogram point_mass(double value);

    std::size_t bin_count() const noexcept { return mass_.size(); }
    const std::vector<double>& edges() const noexcept { return edges_; }
    const std::vector<double>& mass() const noexcept { return mass_; }
    double total_mass() const noexcept { return total_; }
    double lower() const noexcept { return edges_.front(); }
    double upper() const noexcept { return edges_.back(); }

    /// Normalized cumulative mass at the upper edge of each bin; the last
    /// occupied bin and everything after it read exactly 1.
    std::span<const double> cumulative() const noexcept { return cumulative_; }

    /// Moments of the piecewise-constant density.
    double mean() const noexcept;
    double variance() const noexcept;

    friend bool operator==(const Histogram& x, const Histogram& y) {
        return x.edges_ == y.edges_ && x.mass_ == y.mass_;
    }

private:
    std::vector<double> edges_;
    std::vector<double> mass_;
    std::vector<double> cumulative_;
    double total_ = 0.0;
};

/// Equal-width histogram spanning [min, max] of `values`; each value is
/// counted once (unit mass). All-equal input yields a single bin of width
/// max(|v| * 1e-6, 1e-12) centered at the value.
Histogram build_histogram(std::span<const double> values, int bin_count = kDefaultBinCount);

/// Inverse transform sampling: u ~ U[0,1) selects the first bin whose
/// cumulative normalized mass exceeds u, then a uniform position inside it.
double sample_histogram(const Histogram& h, Rng& rng);

/// Piecewise-linear CDF of the histogram density.
double cdf(const Histogram& h, double x) noexcept;

}  // namespace pgnoise
