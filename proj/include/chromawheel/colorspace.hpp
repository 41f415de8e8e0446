// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The chromawheel authors

#pragma once

#include <array>
#include <cstdint>

namespace cw {

/// 8-bit sRGB pixel. Channels are always within [0, 255] by construction.
struct Rgb8 {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const Rgb8&, const Rgb8&) = default;
};

/// CIELAB colour under the D65 reference white (2 degree observer).
struct LabColor {
    double L = 0.0;
    double A = 0.0;
    double B = 0.0;
};

/// Chroma magnitude and hue angle of the (A, B) plane. L is carried along
/// for reporting only and never influences radius or angle.
struct PolarPixel {
    double radius = 0.0;
    double angle = 0.0;  // degrees in [0, 360)
    double L = 0.0;
};

/// Converts an 8-bit sRGB pixel to CIELAB (D65). Total and deterministic.
LabColor srgb_to_lab(Rgb8 p);

/// Same conversion for gamma-encoded channels in [0, 1], without
/// quantisation.
LabColor srgb_unit_to_lab(const std::array<double, 3>& rgb);

/// Converts a CIELAB colour to polar AB coordinates. The angle is measured
/// from the positive A axis toward positive B and lies in [0, 360). The
/// origin maps to angle 0 by convention.
PolarPixel lab_to_polar(const LabColor& c);

/// Inverse of lab_to_polar for the chromatic plane (L is passed through).
LabColor polar_to_lab(const PolarPixel& p);

/// Converts CIELAB back to 8-bit sRGB. Out-of-gamut values are clipped per
/// channel; `in_gamut`, when given, reports whether clipping was needed.
Rgb8 lab_to_srgb(const LabColor& c, bool* in_gamut = nullptr);

/// Gamma-encoded sRGB channels in [0, 1] before quantisation. Values
/// outside [0, 1] indicate an out-of-gamut colour and are not clipped.
std::array<double, 3> lab_to_srgb_unit(const LabColor& c);

/// Gamma-encoded sRGB channels in [0, 1] for an HSV colour with all
/// components in [0, 1].
std::array<double, 3> hsv_to_srgb_unit(double h, double s, double v);

/// Wraps any finite angle in degrees into [0, 360).
double wrap_degrees(double deg);

/// Counterclockwise distance from `from` to `to`, in [0, 360).
double ccw_distance(double from, double to);

/// Shortest angular distance between two angles, in [0, 180].
double angular_distance(double a, double b);

}  // namespace cw
