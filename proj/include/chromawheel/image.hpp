// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The chromawheel authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "chromawheel/colorspace.hpp"

namespace cw {

/// Raised when an image file cannot be read or written.
class ImageIoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Row-major 8-bit RGB image. Any alpha channel is dropped on load.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<Rgb8> pixels;

    Image() = default;
    Image(int w, int h, Rgb8 fill = {}) : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {}

    bool empty() const { return pixels.empty(); }
    std::size_t size() const { return pixels.size(); }
    Rgb8& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
    const Rgb8& at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
};

/// Single-channel 8-bit image, used for binary masks.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;
};

/// Loads an image file in any format decode_image accepts.
Image load_image(const std::filesystem::path& path);

/// Decodes an in-memory PNG or JPEG file. BMP is accepted as well.
Image decode_image(const std::vector<std::uint8_t>& bytes);

/// Writes a lossless PNG.
void save_png(const std::filesystem::path& path, const Image& img);
void save_png(const std::filesystem::path& path, const GrayImage& img);

/// Encodes a lossless PNG in memory.
std::vector<std::uint8_t> encode_png(const Image& img);
std::vector<std::uint8_t> encode_png(const GrayImage& img);

}  // namespace cw
