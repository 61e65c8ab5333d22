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

#include "pgnoise/image_io.hpp"

#include <png.h>

#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iterator>
#include <memory>

#include "json.hpp"
#include "pgnoise/errors.hpp"

namespace pgnoise {
namespace {

// libpng reports failures through longjmp, so the decode and encode steps
// below hold only trivially destructible state between setjmp and return.

struct PngMessage {
    char text[256];
};

void png_error_handler(png_structp png, png_const_charp message) {
    auto* out = static_cast<PngMessage*>(png_get_error_ptr(png));
    if (out) std::snprintf(out->text, sizeof out->text, "%s", message);
    png_longjmp(png, 1);
}

void png_warning_handler(png_structp, png_const_charp) {}

struct RawImage {
    png_uint_32 width = 0;
    png_uint_32 height = 0;
    int bit_depth = 0;
    int color_type = 0;
    unsigned char* data = nullptr;  // malloc'd, RGB interleaved, big-endian samples
};

bool decode_png(std::FILE* fp, RawImage* out, PngMessage* message) {
    png_structp png =
        png_create_read_struct(PNG_LIBPNG_VER_STRING, message, png_error_handler, png_warning_handler);
    if (!png) return false;
    png_infop info = png_create_info_struct(png);
    png_bytep* volatile rows = nullptr;
    if (!info || setjmp(png_jmpbuf(png))) {
        std::free(rows);
        std::free(out->data);
        out->data = nullptr;
        png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
        return false;
    }
    png_init_io(png, fp);
    png_read_info(png, info);
    out->width = png_get_image_width(png, info);
    out->height = png_get_image_height(png, info);
    out->color_type = png_get_color_type(png, info);
    const int depth = png_get_bit_depth(png, info);

    if (out->color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (out->color_type == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    png_set_strip_alpha(png);
    if (out->color_type == PNG_COLOR_TYPE_GRAY || out->color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
        png_set_gray_to_rgb(png);
    png_read_update_info(png, info);
    out->bit_depth = png_get_bit_depth(png, info);

    const png_size_t row_bytes = png_get_rowbytes(png, info);
    out->data = static_cast<unsigned char*>(std::malloc(row_bytes * out->height));
    rows = static_cast<png_bytep*>(std::malloc(sizeof(png_bytep) * out->height));
    if (!out->data || !rows) png_error(png, "out of memory");
    for (png_uint_32 r = 0; r < out->height; ++r) rows[r] = out->data + r * row_bytes;
    png_read_image(png, rows);
    png_read_end(png, nullptr);
    std::free(rows);
    png_destroy_read_struct(&png, &info, nullptr);
    return true;
}

bool encode_png(std::FILE* fp, png_uint_32 width, png_uint_32 height, int bit_depth,
                unsigned char* data, PngMessage* message) {
    png_structp png =
        png_create_write_struct(PNG_LIBPNG_VER_STRING, message, png_error_handler, png_warning_handler);
    if (!png) return false;
    png_infop info = png_create_info_struct(png);
    png_bytep* volatile rows = nullptr;
    if (!info || setjmp(png_jmpbuf(png))) {
        std::free(rows);
        png_destroy_write_struct(&png, info ? &info : nullptr);
        return false;
    }
    png_init_io(png, fp);
    png_set_IHDR(png, info, width, height, bit_depth, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_set_compression_level(png, 3);
    png_write_info(png, info);
    const png_size_t row_bytes = static_cast<png_size_t>(width) * 3 * (bit_depth / 8);
    rows = static_cast<png_bytep*>(std::malloc(sizeof(png_bytep) * height));
    if (!rows) png_error(png, "out of memory");
    for (png_uint_32 r = 0; r < height; ++r) rows[r] = data + r * row_bytes;
    png_write_image(png, rows);
    png_write_end(png, nullptr);
    std::free(rows);
    png_destroy_write_struct(&png, &info);
    return true;
}

struct FileCloser {
    void operator()(std::FILE* f) const { std::fclose(f); }
};
struct FreeDeleter {
    void operator()(unsigned char* p) const { std::free(p); }
};

void check_bit_depth(int bit_depth) {
    if (bit_depth != 8 && bit_depth != 16)
        fail(ErrorCode::InvalidInput, "bit depth must be 8 or 16, got " + std::to_string(bit_depth));
}

}  // namespace

std::uint16_t quantize(double v, int bit_depth) {
    check_bit_depth(bit_depth);
    if (!std::isfinite(v) || v < 0.0 || v > 1.0)
        fail(ErrorCode::Contract, "pixel value " + std::to_string(v) + " outside [0, 1]");
    const double max_code = std::ldexp(1.0, bit_depth) - 1.0;
    return static_cast<std::uint16_t>(std::round(v * max_code));
}

double dequantize(std::uint16_t code, int bit_depth) {
    check_bit_depth(bit_depth);
    return static_cast<double>(code) / (std::ldexp(1.0, bit_depth) - 1.0);
}

ImageRecord load_image(const std::filesystem::path& path) {
    const std::string name = path.string();
    std::unique_ptr<std::FILE, FileCloser> fp(std::fopen(name.c_str(), "rb"));
    if (!fp) fail(ErrorCode::Io, name + ": cannot open");
    unsigned char signature[8] = {};
    if (std::fread(signature, 1, 8, fp.get()) != 8 || png_sig_cmp(signature, 0, 8) != 0)
        fail(ErrorCode::Io, name + ": not a PNG file (only PNG is supported)");
    std::rewind(fp.get());

    RawImage raw;
    PngMessage message{};
    if (!decode_png(fp.get(), &raw, &message))
        fail(ErrorCode::Io, name + ": corrupt PNG (" + std::string(message.text) + ")");
    std::unique_ptr<unsigned char, FreeDeleter> data(raw.data);

    ImageRecord record;
    record.source_path = name;
    record.bit_depth = raw.bit_depth;
    if (raw.color_type & PNG_COLOR_MASK_ALPHA)
        record.warnings.push_back(name + ": alpha channel discarded");
    if (!(raw.color_type & PNG_COLOR_MASK_COLOR))
        record.warnings.push_back(name + ": grayscale replicated to RGB");

    const auto rows = static_cast<Eigen::Index>(raw.height);
    const auto cols = static_cast<Eigen::Index>(raw.width);
    record.pixels = RgbImage(rows, cols);
    const unsigned char* p = data.get();
    const std::size_t bytes = raw.bit_depth == 16 ? 2 : 1;
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            for (Channel ch : kChannels) {
                const std::uint16_t code =
                    bytes == 2 ? static_cast<std::uint16_t>((p[0] << 8) | p[1]) : p[0];
                record.pixels[ch](r, c) = dequantize(code, raw.bit_depth);
                p += bytes;
            }
        }
    }
    return record;
}

void save_image(const RgbImage& image, const std::filesystem::path& path, int bit_depth) {
    check_bit_depth(bit_depth);
    if (!image.consistent()) fail(ErrorCode::InvalidInput, "RGB planes differ in size");
    if (image.rows() == 0 || image.cols() == 0)
        fail(ErrorCode::InvalidInput, "cannot save an empty image");
    const std::size_t bytes = bit_depth == 16 ? 2 : 1;
    std::vector<unsigned char> buffer(static_cast<std::size_t>(image.rows() * image.cols()) * 3 *
                                      bytes);
    unsigned char* p = buffer.data();
    for (Eigen::Index r = 0; r < image.rows(); ++r) {
        for (Eigen::Index c = 0; c < image.cols(); ++c) {
            for (Channel ch : kChannels) {
                const std::uint16_t code = quantize(image[ch](r, c), bit_depth);
                if (bytes == 2) *p++ = static_cast<unsigned char>(code >> 8);
                *p++ = static_cast<unsigned char>(code & 0xff);
            }
        }
    }

    const std::string name = path.string();
    std::unique_ptr<std::FILE, FileCloser> fp(std::fopen(name.c_str(), "wb"));
    if (!fp) fail(ErrorCode::Io, name + ": cannot open for writing");
    PngMessage message{};
    if (!encode_png(fp.get(), static_cast<png_uint_32>(image.cols()),
                    static_cast<png_uint_32>(image.rows()), bit_depth, buffer.data(), &message))
        fail(ErrorCode::Io, name + ": PNG encoding failed (" + std::string(message.text) + ")");
    if (std::fflush(fp.get()) != 0) fail(ErrorCode::Io, name + ": write failed");
}

void write_sidecar(const SidecarRecord& record, const std::filesystem::path& path) {
    using nlohmann::json;
    json a = json::object();
    json b = json::object();
    for (Channel ch : kChannels) {
        a[std::string(channel_name(ch))] = record.params[ch].a;
        b[std::string(channel_name(ch))] = record.params[ch].b;
    }
    const json doc{{"a", a},
                   {"b", b},
                   {"seed", record.seed},
                   {"realization_index", record.realization_index},
                   {"bundle", record.bundle},
                   {"source", record.source}};
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::Io, path.string() + ": cannot open for writing");
    out << doc.dump(2) << "\n";
    if (!out) fail(ErrorCode::Io, path.string() + ": write failed");
}

SidecarRecord read_sidecar(const std::filesystem::path& path) {
    using nlohmann::json;
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::Io, path.string() + ": cannot open");
    try {
        const json doc = json::parse(in);
        SidecarRecord record;
        for (Channel ch : kChannels) {
            const std::string name(channel_name(ch));
            record.params[ch] = {doc.at("a").at(name).get<double>(),
                                 doc.at("b").at(name).get<double>()};
        }
        record.seed = doc.at("seed").get<std::uint64_t>();
        record.realization_index = doc.at("realization_index").get<int>();
        record.bundle = doc.at("bundle").get<std::string>();
        record.source = doc.at("source").get<std::string>();
        return record;
    } catch (const json::exception& e) {
        fail(ErrorCode::Parse, path.string() + ": malformed sidecar (" + e.what() + ")");
    }
}

}  // namespace pgnoise
