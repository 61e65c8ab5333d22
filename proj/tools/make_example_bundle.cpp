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

// Regenerates data/example_bundle.json.
#include <iostream>

#include "pgnoise/bundle_io.hpp"
#include "pgnoise/example_bundle.hpp"

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: make_example_bundle <output.json>\n";
        return 2;
    }
    try {
        pgnoise::save_bundle(pgnoise::make_example_bundle(), argv[1]);
    } catch (const pgnoise::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
