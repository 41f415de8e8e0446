// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The chromawheel authors

#include "chromawheel/colorspace.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace cw {
namespace {

// D65 reference white, 2 degree observer, normalised to Y = 1.
constexpr double kXn = 0.95047;
constexpr double kYn = 1.0;
constexpr double kZn = 1.08883;

// CIE constants in their exact rational form.
constexpr double kEpsilon = 216.0 / 24389.0;
constexpr double kKappa = 24389.0 / 27.0;

double srgb_decode(double c) {
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double srgb_encode(double c) {
    return c <= 0.0031308 ? 12.92 * c : 1.055 * std::pow(c, 1.0 / 2.4) - 0.055;
}

// Gamma expansion is the only transcendental step per channel, so it is
// tabulated once for all 256 code values.
const std::array<double, 256>& decode_table() {
    static const std::array<double, 256> table = [] {
        std::array<double, 256> t{};
        for (int i = 0; i < 256; ++i) t[i] = srgb_decode(i / 255.0);
        return t;
    }();
    return table;
}

double lab_f(double t) {
    return t > kEpsilon ? std::cbrt(t) : (kKappa * t + 16.0) / 116.0;
}

double lab_f_inv(double f) {
    const double f3 = f * f * f;
    return f3 > kEpsilon ? f3 : (116.0 * f - 16.0) / kKappa;
}

using Matrix3 = std::array<std::array<double, 3>, 3>;

// Linear sRGB to XYZ (IEC 61966-2-1 matrix).
constexpr Matrix3 kRgbToXyz = {{
    {0.4124564, 0.3575761, 0.1804375},
    {0.2126729, 0.7151522, 0.0721750},
    {0.0193339, 0.1191920, 0.9503041},
}};

// The inverse is derived rather than copied from a rounded published table,
// so that a round trip through Lab lands on the gamut surface exactly.
const Matrix3& xyz_to_rgb() {
    static const Matrix3 inv = [] {
        const Matrix3& m = kRgbToXyz;
        Matrix3 adj{};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                const int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
                const int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
                adj[i][j] = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
            }
        }
        const double det = m[0][0] * adj[0][0] + m[0][1] * adj[1][0] + m[0][2] * adj[2][0];
        for (auto& row : adj) {
            for (double& v : row) v /= det;
        }
        return adj;
    }();
    return inv;
}

}  // namespace

namespace {

LabColor linear_to_lab(double r, double g, double b) {
    const auto& m = kRgbToXyz;
    const double x = m[0][0] * r + m[0][1] * g + m[0][2] * b;
    const double y = m[1][0] * r + m[1][1] * g + m[1][2] * b;
    const double z = m[2][0] * r + m[2][1] * g + m[2][2] * b;

    const double fx = lab_f(x / kXn);
    const double fy = lab_f(y / kYn);
    const double fz = lab_f(z / kZn);

    LabColor out;
    out.L = std::clamp(116.0 * fy - 16.0, 0.0, 100.0);
    out.A = 500.0 * (fx - fy);
    out.B = 200.0 * (fy - fz);
    return out;
}

}  // namespace

LabColor srgb_to_lab(Rgb8 p) {
    const auto& lut = decode_table();
    return linear_to_lab(lut[p.r], lut[p.g], lut[p.b]);
}

LabColor srgb_unit_to_lab(const std::array<double, 3>& rgb) {
    return linear_to_lab(srgb_decode(std::clamp(rgb[0], 0.0, 1.0)), srgb_decode(std::clamp(rgb[1], 0.0, 1.0)),
                         srgb_decode(std::clamp(rgb[2], 0.0, 1.0)));
}

PolarPixel lab_to_polar(const LabColor& c) {
    PolarPixel p;
    p.L = c.L;
    p.radius = std::hypot(c.A, c.B);
    p.angle = (c.A == 0.0 && c.B == 0.0)
                  ? 0.0
                  : wrap_degrees(std::atan2(c.B, c.A) * 180.0 / std::numbers::pi);
    return p;
}

LabColor polar_to_lab(const PolarPixel& p) {
    const double rad = p.angle * std::numbers::pi / 180.0;
    return LabColor{p.L, p.radius * std::cos(rad), p.radius * std::sin(rad)};
}

namespace {

std::array<double, 3> lab_to_linear(const LabColor& c) {
    const double fy = (c.L + 16.0) / 116.0;
    const double fx = fy + c.A / 500.0;
    const double fz = fy - c.B / 200.0;
    const double x = kXn * lab_f_inv(fx);
    const double y = kYn * lab_f_inv(fy);
    const double z = kZn * lab_f_inv(fz);
    const auto& m = xyz_to_rgb();
    return {
        m[0][0] * x + m[0][1] * y + m[0][2] * z,
        m[1][0] * x + m[1][1] * y + m[1][2] * z,
        m[2][0] * x + m[2][1] * y + m[2][2] * z,
    };
}

}  // namespace

std::array<double, 3> lab_to_srgb_unit(const LabColor& c) {
    auto lin = lab_to_linear(c);
    for (double& v : lin) v = v < 0.0 ? -srgb_encode(-v) : srgb_encode(v);
    return lin;
}

std::array<double, 3> hsv_to_srgb_unit(double h, double s, double v) {
    const double hh = wrap_degrees(h * 360.0) / 60.0;
    const int sector = static_cast<int>(hh) % 6;
    const double f = hh - std::floor(hh);
    const double p = v * (1.0 - s);
    const double q = v * (1.0 - s * f);
    const double t = v * (1.0 - s * (1.0 - f));
    switch (sector) {
        case 0: return {v, t, p};
        case 1: return {q, v, p};
        case 2: return {p, v, t};
        case 3: return {p, q, v};
        case 4: return {t, p, v};
        default: return {v, p, q};
    }
}

Rgb8 lab_to_srgb(const LabColor& c, bool* in_gamut) {
    const auto lin = lab_to_linear(c);
    bool ok = true;
    std::array<std::uint8_t, 3> out{};
    for (std::size_t i = 0; i < 3; ++i) {
        // Tolerate rounding noise at the gamut surface.
        if (lin[i] < -1e-9 || lin[i] > 1.0 + 1e-9) ok = false;
        const double enc = srgb_encode(std::clamp(lin[i], 0.0, 1.0));
        out[i] = static_cast<std::uint8_t>(std::lround(std::clamp(enc, 0.0, 1.0) * 255.0));
    }
    if (in_gamut) *in_gamut = ok;
    return Rgb8{out[0], out[1], out[2]};
}

double wrap_degrees(double deg) {
    double w = std::fmod(deg, 360.0);
    if (w < 0.0) w += 360.0;
    // fmod of a tiny negative value can round up to exactly 360.
    if (w >= 360.0) w = 0.0;
    return w;
}

double ccw_distance(double from, double to) {
    return wrap_degrees(to - from);
}

double angular_distance(double a, double b) {
    const double d = ccw_distance(a, b);
    return d > 180.0 ? 360.0 - d : d;
}

}  // namespace cw
