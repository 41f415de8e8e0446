// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The chromawheel authors

#include "chromawheel/category.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace cw {
namespace {

struct CategoryInfo {
    std::string_view name;
    std::string_view slug;
    Rgb8 anchor;
    Rgb8 palette;
};

// Anchors are fully saturated sRGB hues (HSV hue in the trailing comment).
// The anchors of the sRGB secondaries stay on them; the others are the
// intermediate hues that separate the ten groups the way the ISCC-NBS hue
// families do, which places pure sRGB blue among the purples.
constexpr std::array<CategoryInfo, kCategoryCount> kInfo = {{
    {"Green", "green", {0, 255, 0}, {0, 170, 0}},                     // 120
    {"Yellow", "yellow", {255, 255, 0}, {255, 230, 0}},               // 60
    {"Light Orange", "light_orange", {255, 128, 0}, {255, 160, 0}},   // 30
    {"Deep Orange", "deep_orange", {255, 64, 0}, {255, 80, 0}},       // 15
    {"Red", "red", {255, 0, 64}, {210, 0, 30}},                       // 345
    {"Pink", "pink", {255, 0, 191}, {255, 100, 200}},                 // 315
    {"Purple", "purple", {128, 0, 255}, {140, 40, 200}},              // 270
    {"Ultramarine", "ultramarine", {0, 96, 255}, {40, 60, 220}},      // 217.5
    {"Blue", "blue", {0, 159, 255}, {0, 140, 255}},                   // 202.5
    {"Teal", "teal", {0, 255, 255}, {0, 180, 170}},                   // 180
    {"Brown", "brown", {133, 87, 35}, {133, 87, 35}},
    {"Neutral", "neutral", {128, 128, 128}, {128, 128, 128}},
}};

std::string normalise(std::string_view text) {
    std::string out;
    for (char ch : text) {
        if (ch == ' ' || ch == '_' || ch == '-') continue;
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    }
    return out;
}

}  // namespace

std::string_view display_name(CategoryId c) { return kInfo.at(index_of(c)).name; }

std::string_view slug(CategoryId c) { return kInfo.at(index_of(c)).slug; }

std::optional<CategoryId> parse_category(std::string_view text) {
    const std::string key = normalise(text);
    for (CategoryId c : kAllCategories) {
        if (normalise(kInfo[index_of(c)].name) == key) return c;
    }
    if (key == "yelloworange") return CategoryId::LightOrange;
    if (key == "redorange") return CategoryId::DeepOrange;
    if (key == "achromatic") return CategoryId::Neutral;
    return std::nullopt;
}

Rgb8 anchor_color(CategoryId c) {
    if (!is_hue(c)) throw std::invalid_argument("anchor colour requested for a non-hue category");
    return kInfo[index_of(c)].anchor;
}

double anchor_angle(CategoryId c) {
    return lab_to_polar(srgb_to_lab(anchor_color(c))).angle;
}

Rgb8 palette_color(CategoryId c) { return kInfo.at(index_of(c)).palette; }

}  // namespace cw
