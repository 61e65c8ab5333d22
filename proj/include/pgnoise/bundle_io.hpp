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

#include <string>
#include <string_view>

#include "pgnoise/generator.hpp"

namespace pgnoise {

inline constexpr int kBundleFormatVersion = 1;

/// Canonical JSON text: sorted keys, two-space indentation, shortest
/// round-trip decimal numbers, trailing newline. Equal bundles give equal bytes.
std::string serialize_bundle(const ParamBundle& bundle);

/// Throws Parse for malformed JSON, Version for an unknown format_version and
/// Validation (message starts with the field path) for schema or histogram
/// violations. Never returns a partially constructed bundle.
ParamBundle parse_bundle(std::string_view text);

ParamBundle load_bundle(const std::string& path);
void save_bundle(const ParamBundle& bundle, const std::string& path);

/// 16 hex digits of FNV-1a over the canonical serialization.
std::string bundle_identity(const ParamBundle& bundle);

}  // namespace pgnoise
