// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The chromawheel authors

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "chromawheel/category.hpp"
#include "chromawheel/classifier.hpp"
#include "chromawheel/colorspace.hpp"
#include "chromawheel/image.hpp"
#include "chromawheel/model.hpp"

namespace cw {

/// Trapezoidal hue membership of one category, in degrees. `a` and `g` are
/// the neighbouring peaks, `b` and `e` the category boundaries and [c, d]
/// the plateau. The function is 0 at a and g, 0.5 at b and e, 1 on [c, d]
/// and linear in between. Angles may wrap; they are unwrapped from `a`.
struct AngularMembership {
    CategoryId category = CategoryId::Red;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
    double e = 0.0;
    double g = 0.0;
};

/// Degree of membership of `theta` (degrees) in `f`, in [0, 1].
double angular_membership(double theta, const AngularMembership& f);

/// Membership functions of the ten hue intervals of a model, in interval
/// order. The plateau spans the first to the last base of the interval,
/// widened by the model's plateau half width and clipped to the interval.
std::vector<AngularMembership> angular_memberships(const ColorModel& m);

struct RadialMembership {
    double r1 = 0.0;
    double r2_prime = 0.0;
    double r3 = 0.0;
};

struct RadialDegrees {
    double achromatic = 0.0;
    double near_achromatic = 0.0;
    double chromatic = 0.0;
};

/// Radial degrees at radius `r`. Achromatic is 1 up to r1 and 0 beyond.
/// Near-achromatic is 1 on (r1, r2'], falls linearly to 0 at r3 and stays 0.
/// Chromatic is its complement beyond r1: it rises from 0 at r2' to 1 at r3.
RadialDegrees radial_memberships(double r, const RadialMembership& m);

RadialMembership radial_of(const ColorModel& m);

struct CompositionEntry {
    CategoryId category = CategoryId::Neutral;
    double percent = 0.0;
};

/// Fuzzy degrees of one colour and the derived percentage composition.
struct MembershipVector {
    std::array<double, kCategoryCount> degrees{};
    // Sorted by percentage (descending), ties in category order. Entries
    // below 0.5% are dropped before the rest is renormalised to 100.
    std::vector<CompositionEntry> composition;
};

/// Composition name of a polar colour under a model. Up to r1 the colour is
/// 100% Neutral. Inside the brown sector Brown takes the near-achromatic
/// degree and each hue its angular degree times the chromatic degree;
/// outside it the hue classes take their angular degree unscaled.
MembershipVector compose_name(const PolarPixel& p, const ColorModel& m);

/// Renders "44.00% Brown, 36.00% Light Orange, 20.00% Yellow". With
/// `final_and` the last separator becomes "and" ("86.09% Red and 13.91%
/// Pink"; ", and" for three or more terms).
std::string render_composition(const std::vector<CompositionEntry>& entries, bool final_and = false);

/// One quantised shade of a category.
struct Shade {
    LabColor lab;       // centre of the quantisation cell
    LabColor mean_lab;  // mean colour of the member pixels
    std::size_t count = 0;
    std::vector<CompositionEntry> composition;  // name of mean_lab
    std::string name;                           // rendered composition
    Rgb8 swatch;                                // sRGB of mean_lab
};

struct ShadeSummary {
    std::array<std::vector<Shade>, kCategoryCount> per_category;
    // Distinct quantised shades per category before truncation.
    std::array<std::size_t, kCategoryCount> distinct{};
};

struct ShadeOptions {
    double step = 5.0;         // Lab quantisation step on every axis
    std::size_t top = 10;      // shades kept per category
};

/// Quantises every pixel's Lab colour, counts shades per crisp category and
/// keeps the most frequent ones. Ties are ordered by the cell's L, A, B.
ShadeSummary summarize_shades(const Image& img, const LabelMap& labels, const ColorModel& m,
                              const ShadeOptions& opt = {});

}  // namespace cw
