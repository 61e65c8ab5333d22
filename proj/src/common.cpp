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

#include "pgnoise/errors.hpp"
#include "pgnoise/rng.hpp"

#include <cmath>

namespace pgnoise {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidInput: return "invalid-input";
        case ErrorCode::EmptyData: return "empty-data";
        case ErrorCode::InsufficientDynamicRange: return "insufficient-dynamic-range";
        case ErrorCode::DegenerateFit: return "degenerate-fit";
        case ErrorCode::CalibrationFailure: return "calibration-failure";
        case ErrorCode::SamplingExhausted: return "sampling-exhausted";
        case ErrorCode::Parse: return "parse";
        case ErrorCode::Validation: return "validation";
        case ErrorCode::Version: return "version";
        case ErrorCode::Io: return "io";
        case ErrorCode::Contract: return "contract";
    }
    return "unknown";
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * factor;
    has_spare_ = true;
    return u * factor;
}

}  // namespace pgnoise
