// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The chromawheel authors
//
// Renders the reference colour wheel used to build the default model.
//
// The wheel is drawn unrolled so that every hue gets the same pixel budget:
//   * one column block per hue, sweeping HSV saturation up to the fully
//     saturated hue (a tint ramp), so each hue becomes a ray in the AB
//     plane whose tip is the pure hue. Ramps advance a fixed AB distance
//     per row and blocks are as wide as their ray is long;
//   * two calibration bands in which the hue varies continuously at fixed
//     CIELAB chroma, so each band becomes a circle in the AB plane that
//     crosses every ray. The crossings are the branch points from which the
//     critical radii are read.
// Every channel is dithered with a seeded generator before quantisation so
// that neighbouring 8-bit codes fill the AB plane without gaps.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <numbers>
#include <random>
#include <vector>

#include "chromawheel/colorspace.hpp"
#include "chromawheel/image.hpp"

namespace {

struct WheelLayout {
    int hues = 36;
    int width = 1080;
    int ramp_rows = 360;
    std::vector<double> ring_chroma = {10.0, 26.0};
    double ring_lightness = 75.0;
    // Calibration bands get this multiple of the per-bin pixel budget of
    // the hue ramps, so they survive the occupancy threshold comfortably.
    double ring_weight = 1.5;
    // Hue ramps start this far inside the innermost band.
    double ramp_inset = 2.0;
    // Seed verified to give gap-free rays under the default occupancy threshold.
    std::uint32_t seed = 3;
};

class Ditherer {
public:
    explicit Ditherer(std::uint32_t seed) : rng_(seed) {}

    // Adds one uniform offset in [0, 1) to all three channels before
    // flooring. The expected code equals the exact value, and sharing the
    // offset keeps the rounded colours close to the line of the ramp rather
    // than scattering them across it. Raw engine output keeps the sequence
    // identical on every platform.
    cw::Rgb8 quantise(const std::array<double, 3>& c) {
        const double u = static_cast<double>(rng_() >> 8) / 16777216.0;
        auto q = [u](double unit) {
            return static_cast<std::uint8_t>(std::clamp(std::floor(unit * 255.0 + u), 0.0, 255.0));
        };
        return {q(c[0]), q(c[1]), q(c[2])};
    }

private:
    std::mt19937 rng_;
};

// Tint ramp of one hue, resampled so that consecutive rows advance by the
// same distance in the AB plane.
struct Ramp {
    std::vector<double> saturation;  // one entry per row
    double length = 0.0;             // AB arc length covered
};

Ramp make_ramp(double hue, double start_chroma, int rows) {
    constexpr int kSamples = 8192;
    std::vector<double> s(kSamples + 1);
    std::vector<double> arc(kSamples + 1, 0.0);
    double prev_a = 0.0;
    double prev_b = 0.0;
    std::size_t first = 0;
    bool started = false;
    for (int i = 0; i <= kSamples; ++i) {
        s[i] = static_cast<double>(i) / kSamples;
        const auto lab = cw::srgb_unit_to_lab(cw::hsv_to_srgb_unit(hue, s[i], 1.0));
        if (!started && std::hypot(lab.A, lab.B) >= start_chroma) {
            started = true;
            first = static_cast<std::size_t>(i);
        } else if (started) {
            arc[i] = arc[i - 1] + std::hypot(lab.A - prev_a, lab.B - prev_b);
        }
        prev_a = lab.A;
        prev_b = lab.B;
    }
    if (!started) throw std::runtime_error("hue ramp never reaches the start chroma");

    Ramp ramp;
    ramp.length = arc[kSamples];
    std::size_t j = first;
    for (int r = 0; r < rows; ++r) {
        const double target = ramp.length * r / (rows - 1);
        while (j < static_cast<std::size_t>(kSamples) && arc[j + 1] < target) ++j;
        const double span = arc[j + 1] - arc[j];
        const double f = span > 0.0 ? std::clamp((target - arc[j]) / span, 0.0, 1.0) : 0.0;
        ramp.saturation.push_back(j >= static_cast<std::size_t>(kSamples) ? 1.0 : s[j] + f * (s[j + 1] - s[j]));
    }
    return ramp;
}

cw::Image render(const WheelLayout& s) {
    if (s.ring_chroma.empty()) throw std::runtime_error("at least one calibration band is required");
    const double start_chroma = std::max(0.5, *std::min_element(s.ring_chroma.begin(), s.ring_chroma.end()) - s.ramp_inset);

    std::vector<Ramp> ramps;
    double total_length = 0.0;
    for (int k = 0; k < s.hues; ++k) {
        ramps.push_back(make_ramp(static_cast<double>(k) / s.hues, start_chroma, s.ramp_rows));
        total_length += ramps.back().length;
    }

    // Column widths proportional to ramp length give every unit of every
    // ramp the same number of pixels.
    std::vector<int> column_end;
    double cumulative = 0.0;
    for (const auto& r : ramps) {
        cumulative += r.length;
        column_end.push_back(static_cast<int>(std::lround(s.width * cumulative / total_length)));
    }

    // A band of chroma C is a circle of length 2*pi*C; matching the ramp
    // density needs 2*pi*C*rows/total_length rows of full width.
    std::vector<int> band_rows;
    int ring_rows = 0;
    for (double c : s.ring_chroma) {
        const double rows = s.ring_weight * 2.0 * std::numbers::pi * c * s.ramp_rows / total_length;
        band_rows.push_back(std::max(1, static_cast<int>(std::ceil(rows))));
        ring_rows += band_rows.back();
    }

    cw::Image img(s.width, ring_rows + s.ramp_rows);
    Ditherer dither(s.seed);

    int y = 0;
    for (std::size_t band = 0; band < s.ring_chroma.size(); ++band) {
        for (int r = 0; r < band_rows[band]; ++r, ++y) {
            for (int x = 0; x < s.width; ++x) {
                const double angle = 360.0 * (x + 0.5) / s.width;
                const auto lab = cw::polar_to_lab({s.ring_chroma[band], angle, s.ring_lightness});
                const auto unit = cw::lab_to_srgb_unit(lab);
                for (double v : unit) {
                    if (v < 0.0 || v > 1.0) {
                        throw std::runtime_error("calibration band leaves the sRGB gamut; lower the chroma");
                    }
                }
                img.at(x, y) = dither.quantise(unit);
            }
        }
    }

    for (int r = 0; r < s.ramp_rows; ++r, ++y) {
        int k = 0;
        for (int x = 0; x < s.width; ++x) {
            while (x >= column_end[k]) ++k;
            const double hue = static_cast<double>(k) / s.hues;
            img.at(x, y) = dither.quantise(cw::hsv_to_srgb_unit(hue, ramps[k].saturation[r], 1.0));
        }
    }
    return img;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Render the reference colour wheel fixture"};
    WheelLayout layout;
    std::string out;
    app.add_option("-o,--output", out, "Output PNG path")->required();
    app.add_option("--hues", layout.hues, "Number of hue ramps")->check(CLI::PositiveNumber);
    app.add_option("--width", layout.width, "Image width in pixels")->check(CLI::PositiveNumber);
    app.add_option("--ramp-rows", layout.ramp_rows, "Rows of the tint ramps")->check(CLI::Range(2, 100000));
    app.add_option("--ring-chroma", layout.ring_chroma, "CIELAB chroma of each calibration band");
    app.add_option("--ring-lightness", layout.ring_lightness, "CIELAB lightness of the calibration bands");
    app.add_option("--ring-weight", layout.ring_weight, "Pixel budget of the bands relative to the ramps");
    app.add_option("--ramp-inset", layout.ramp_inset, "Chroma below the innermost band where ramps start");
    app.add_option("--seed", layout.seed, "Dither seed");
    CLI11_PARSE(app, argc, argv);

    try {
        const cw::Image img = render(layout);
        cw::save_png(out, img);
        std::cout << "wrote " << out << " (" << img.width << "x" << img.height << ")\n";
    } catch (const std::exception& e) {
        std::cerr << "make-wheel: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
