// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The chromawheel authors

#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "chromawheel/colorspace.hpp"

namespace cw {

/// The twelve colour categories. The declaration order is the canonical
/// category order used for tie-breaking and report layout.
enum class CategoryId : int {
    Green = 0,
    Yellow,
    LightOrange,
    DeepOrange,
    Red,
    Pink,
    Purple,
    Ultramarine,
    Blue,
    Teal,
    Brown,
    Neutral,
};

inline constexpr int kCategoryCount = 12;
inline constexpr int kHueCategoryCount = 10;

inline constexpr std::array<CategoryId, kCategoryCount> kAllCategories = {
    CategoryId::Green,  CategoryId::Yellow,      CategoryId::LightOrange,
    CategoryId::DeepOrange, CategoryId::Red,     CategoryId::Pink,
    CategoryId::Purple, CategoryId::Ultramarine, CategoryId::Blue,
    CategoryId::Teal,   CategoryId::Brown,       CategoryId::Neutral,
};

constexpr int index_of(CategoryId c) { return static_cast<int>(c); }

constexpr bool is_hue(CategoryId c) {
    return c != CategoryId::Brown && c != CategoryId::Neutral;
}

/// Display name, e.g. "Light Orange".
std::string_view display_name(CategoryId c);

/// File-name friendly slug, e.g. "light_orange".
std::string_view slug(CategoryId c);

/// Parses display names, slugs, CamelCase identifiers and the accepted
/// aliases (Yellow-Orange, Red-Orange, Achromatic). Case-insensitive.
std::optional<CategoryId> parse_category(std::string_view text);

/// Reference sRGB colour of each hue category. Hue bases found in a wheel
/// are assigned to the category whose reference hue angle is nearest.
Rgb8 anchor_color(CategoryId c);

/// Hue angle of the anchor colour in degrees.
double anchor_angle(CategoryId c);

/// Colour used for the category in composite label images.
Rgb8 palette_color(CategoryId c);

}  // namespace cw
