// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The chromawheel authors

#include "chromawheel/image.hpp"

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

namespace cw {
namespace {

Image from_mat(const cv::Mat& m) {
    if (m.empty()) throw ImageIoError("image could not be decoded");
    Image img(m.cols, m.rows);
    const int step = m.channels();
    for (int y = 0; y < m.rows; ++y) {
        const auto* row = m.ptr<std::uint8_t>(y);
        if (step <= 2) {
            // Gray, optionally with alpha.
            for (int x = 0; x < m.cols; ++x) {
                const std::uint8_t v = row[static_cast<std::ptrdiff_t>(x) * step];
                img.at(x, y) = Rgb8{v, v, v};
            }
        } else {
            // OpenCV stores colour channels as BGR(A).
            for (int x = 0; x < m.cols; ++x) {
                const auto* px = row + static_cast<std::ptrdiff_t>(x) * step;
                img.at(x, y) = Rgb8{px[2], px[1], px[0]};
            }
        }
    }
    return img;
}

cv::Mat to_mat(const Image& img) {
    cv::Mat m(img.height, img.width, CV_8UC3);
    for (int y = 0; y < img.height; ++y) {
        auto* row = m.ptr<std::uint8_t>(y);
        for (int x = 0; x < img.width; ++x) {
            const Rgb8 p = img.at(x, y);
            row[3 * x] = p.b;
            row[3 * x + 1] = p.g;
            row[3 * x + 2] = p.r;
        }
    }
    return m;
}

cv::Mat to_mat(const GrayImage& img) {
    cv::Mat m(img.height, img.width, CV_8UC1);
    std::copy(img.pixels.begin(), img.pixels.end(), m.ptr<std::uint8_t>(0));
    return m;
}

// Force 8-bit depth so 16-bit PNGs are scaled rather than rejected.
cv::Mat to_8bit(cv::Mat m) {
    if (!m.empty() && m.depth() != CV_8U) {
        cv::Mat out;
        m.convertTo(out, CV_8U, m.depth() == CV_16U ? 1.0 / 257.0 : 1.0);
        return out;
    }
    return m;
}

std::vector<std::uint8_t> encode(const cv::Mat& m) {
    std::vector<std::uint8_t> buf;
    if (!cv::imencode(".png", m, buf)) throw ImageIoError("PNG encoding failed");
    return buf;
}

void write(const std::filesystem::path& path, const cv::Mat& m) {
    if (!cv::imwrite(path.string(), m)) throw ImageIoError("cannot write image: " + path.string());
}

}  // namespace

Image load_image(const std::filesystem::path& path) {
    if (!std::filesystem::is_regular_file(path)) {
        throw ImageIoError("cannot read image: " + path.string() + ": no such file");
    }
    cv::Mat m = cv::imread(path.string(), cv::IMREAD_UNCHANGED | cv::IMREAD_ANYDEPTH);
    if (m.empty()) throw ImageIoError("cannot read image: " + path.string() + ": unsupported or corrupt");
    return from_mat(to_8bit(m));
}

Image decode_image(const std::vector<std::uint8_t>& bytes) {
    if (bytes.empty()) throw ImageIoError("empty image payload");
    cv::Mat m = cv::imdecode(bytes, cv::IMREAD_UNCHANGED | cv::IMREAD_ANYDEPTH);
    if (m.empty()) throw ImageIoError("image payload is not a supported PNG, JPEG or BMP file");
    return from_mat(to_8bit(m));
}

void save_png(const std::filesystem::path& path, const Image& img) { write(path, to_mat(img)); }

void save_png(const std::filesystem::path& path, const GrayImage& img) { write(path, to_mat(img)); }

std::vector<std::uint8_t> encode_png(const Image& img) { return encode(to_mat(img)); }

std::vector<std::uint8_t> encode_png(const GrayImage& img) { return encode(to_mat(img)); }

}  // namespace cw
