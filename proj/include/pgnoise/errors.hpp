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

#include <stdexcept>
#include <string>

namespace pgnoise {

enum class ErrorCode {
    InvalidInput,
    EmptyData,
    InsufficientDynamicRange,
    DegenerateFit,
    CalibrationFailure,
    SamplingExhausted,
    Parse,
    Validation,
    Version,
    Io,
    Contract,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. `code()` identifies the category,
/// `what()` carries a human readable message including any field path.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace pgnoise
