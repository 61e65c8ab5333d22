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

#include <array>
#include <string_view>

#include <Eigen/Core>

namespace pgnoise {

/// Row-major single-channel image in the normalized intensity domain.
template <typename Scalar>
using Plane = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using ImagePlane = Plane<double>;

enum class Channel { Red = 0, Green = 1, Blue = 2 };

inline constexpr std::array<Channel, 3> kChannels{Channel::Red, Channel::Green, Channel::Blue};

constexpr std::string_view channel_name(Channel c) noexcept {
    switch (c) {
        case Channel::Red: return "red";
        case Channel::Green: return "green";
        case Channel::Blue: return "blue";
    }
    return "?";
}

constexpr int channel_index(Channel c) noexcept { return static_cast<int>(c); }

template <typename Scalar>
struct BasicRgbImage {
    Plane<Scalar> red;
    Plane<Scalar> green;
    Plane<Scalar> blue;

    BasicRgbImage() = default;
    BasicRgbImage(Eigen::Index rows, Eigen::Index cols)
        : red(rows, cols), green(rows, cols), blue(rows, cols) {}
    BasicRgbImage(Plane<Scalar> r, Plane<Scalar> g, Plane<Scalar> b)
        : red(std::move(r)), green(std::move(g)), blue(std::move(b)) {}

    /// Same value on every channel.
    static BasicRgbImage constant(Eigen::Index rows, Eigen::Index cols, Scalar value) {
        return BasicRgbImage(Plane<Scalar>::Constant(rows, cols, value),
                             Plane<Scalar>::Constant(rows, cols, value),
                             Plane<Scalar>::Constant(rows, cols, value));
    }

    Eigen::Index rows() const noexcept { return red.rows(); }
    Eigen::Index cols() const noexcept { return red.cols(); }

    bool consistent() const noexcept {
        return green.rows() == red.rows() && blue.rows() == red.rows() &&
               green.cols() == red.cols() && blue.cols() == red.cols();
    }

    Plane<Scalar>& operator[](Channel c) noexcept {
        return c == Channel::Red ? red : (c == Channel::Green ? green : blue);
    }
    const Plane<Scalar>& operator[](Channel c) const noexcept {
        return c == Channel::Red ? red : (c == Channel::Green ? green : blue);
    }

    friend bool operator==(const BasicRgbImage& x, const BasicRgbImage& y) {
        auto same = [](const Plane<Scalar>& p, const Plane<Scalar>& q) {
            return p.rows() == q.rows() && p.cols() == q.cols() && (p == q).all();
        };
        return same(x.red, y.red) && same(x.green, y.green) && same(x.blue, y.blue);
    }
};

using RgbImage = BasicRgbImage<double>;

}  // namespace pgnoise
