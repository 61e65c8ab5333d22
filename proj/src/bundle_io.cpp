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

#include "pgnoise/bundle_io.hpp"

#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include "json.hpp"

#include "pgnoise/errors.hpp"

namespace pgnoise {
namespace {

using nlohmann::json;

constexpr const char* kHistogramKeys[] = {"slope_hist", "intercept_hist", "a_hist"};

json histogram_to_json(const Histogram& h) {
    return json{{"edges", h.edges()}, {"mass", h.mass()}};
}

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
    fail(ErrorCode::Validation, path + ": " + what);
}

const json& require(const json& object, const char* key, const std::string& path) {
    const auto it = object.find(key);
    if (it == object.end()) invalid(path + "." + key, "missing");
    return *it;
}

void reject_unknown_keys(const json& object, std::initializer_list<const char*> allowed,
                         const std::string& path) {
    for (const auto& item : object.items()) {
        bool known = false;
        for (const char* key : allowed) known = known || item.key() == key;
        if (!known) invalid(path + "." + item.key(), "unknown field");
    }
}

std::vector<double> number_array(const json& value, const std::string& path) {
    if (!value.is_array()) invalid(path, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(value.size());
    for (std::size_t i = 0; i < value.size(); ++i) {
        if (!value[i].is_number())
            invalid(path + "[" + std::to_string(i) + "]", "expected a number");
        out.push_back(value[i].get<double>());
    }
    return out;
}

Histogram histogram_from_json(const json& value, const std::string& path) {
    if (!value.is_object()) invalid(path, "expected an object");
    reject_unknown_keys(value, {"edges", "mass"}, path);
    auto edges = number_array(require(value, "edges", path), path + ".edges");
    auto mass = number_array(require(value, "mass", path), path + ".mass");
    try {
        return Histogram(std::move(edges), std::move(mass));
    } catch (const Error& e) {
        invalid(path, e.what());
    }
}

ChannelHistograms channel_from_json(const json& value, const std::string& path) {
    if (!value.is_object()) invalid(path, "expected an object");
    reject_unknown_keys(value, {"slope_hist", "intercept_hist", "a_hist"}, path);
    Histogram slope = histogram_from_json(require(value, "slope_hist", path), path + ".slope_hist");
    Histogram intercept =
        histogram_from_json(require(value, "intercept_hist", path), path + ".intercept_hist");
    Histogram a = histogram_from_json(require(value, "a_hist", path), path + ".a_hist");
    if (a.lower() < 0.0) invalid(path + ".a_hist", "support must be non-negative");
    return {std::move(slope), std::move(intercept), std::move(a)};
}

}  // namespace

std::string serialize_bundle(const ParamBundle& bundle) {
    json channels = json::object();
    for (Channel ch : kChannels) {
        const ChannelHistograms& h = bundle[ch];
        channels[std::string(channel_name(ch))] = json{{kHistogramKeys[0], histogram_to_json(h.slope)},
                                                       {kHistogramKeys[1], histogram_to_json(h.intercept)},
                                                       {kHistogramKeys[2], histogram_to_json(h.a)}};
    }
    json doc{{"format_version", kBundleFormatVersion},
             {"metadata", bundle.metadata()},
             {"channels", std::move(channels)}};
    return doc.dump(2) + "\n";
}

ParamBundle parse_bundle(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::exception& e) {
        fail(ErrorCode::Parse, std::string("bundle is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) invalid("$", "expected an object");

    const json& version = require(doc, "format_version", "$");
    if (!version.is_number_integer()) invalid("$.format_version", "expected an integer");
    if (version.get<long long>() != kBundleFormatVersion)
        fail(ErrorCode::Version, "unsupported bundle format_version " + version.dump() +
                                     " (expected " + std::to_string(kBundleFormatVersion) + ")");
    reject_unknown_keys(doc, {"format_version", "metadata", "channels"}, "$");

    ParamBundle::Metadata metadata;
    if (const auto it = doc.find("metadata"); it != doc.end()) {
        if (!it->is_object()) invalid("$.metadata", "expected an object of strings");
        for (const auto& item : it->items()) {
            if (!item.value().is_string())
                invalid("$.metadata." + item.key(), "expected a string");
            metadata.emplace(item.key(), item.value().get<std::string>());
        }
    }

    const json& channels = require(doc, "channels", "$");
    if (!channels.is_object()) invalid("$.channels", "expected an object");
    reject_unknown_keys(channels, {"red", "green", "blue"}, "$.channels");
    auto channel = [&](Channel ch) {
        const std::string name(channel_name(ch));
        return channel_from_json(require(channels, name.c_str(), "$.channels"),
                                 "$.channels." + name);
    };
    ChannelHistograms red = channel(Channel::Red);
    ChannelHistograms green = channel(Channel::Green);
    ChannelHistograms blue = channel(Channel::Blue);
    return ParamBundle(std::move(red), std::move(green), std::move(blue), std::move(metadata));
}

ParamBundle load_bundle(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::Io, "cannot open bundle " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
        return parse_bundle(text);
    } catch (const Error& e) {
        fail(e.code(), path + ": " + e.what());
    }
}

void save_bundle(const ParamBundle& bundle, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::Io, "cannot write bundle " + path);
    out << serialize_bundle(bundle);
    if (!out) fail(ErrorCode::Io, "write failed for " + path);
}

std::string bundle_identity(const ParamBundle& bundle) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(hash_name(serialize_bundle(bundle))));
    return buf;
}

}  // namespace pgnoise
