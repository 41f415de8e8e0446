// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The chromawheel authors

#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "chromawheel/category.hpp"
#include "chromawheel/colorspace.hpp"
#include "chromawheel/image.hpp"
#include "chromawheel/model.hpp"

namespace cw {

/// One category label per pixel, row-major, same size as the source image.
struct LabelMap {
    int width = 0;
    int height = 0;
    std::vector<CategoryId> labels;

    std::size_t size() const { return labels.size(); }
    CategoryId at(int x, int y) const { return labels[static_cast<std::size_t>(y) * width + x]; }
};

/// Binary membership mask of one category (255 = member, 0 = not).
struct CategoryMask {
    CategoryId category = CategoryId::Neutral;
    GrayImage bitmap;
    std::size_t pixel_count = 0;
};

using CategoryCounts = std::array<std::size_t, kCategoryCount>;

/// Crisp label of one point. Radius at or below r1 is Neutral; radius at or
/// below r2 inside the brown sector is Brown; anything else takes the hue
/// interval that holds its angle.
CategoryId classify_point(const PolarPixel& p, const ColorModel& m);

/// Crisp label of an sRGB pixel.
CategoryId classify_rgb(Rgb8 px, const ColorModel& m);

/// Labels every pixel. Rows are split across `threads` workers (0 picks the
/// hardware concurrency). The result does not depend on the worker count.
/// Throws std::invalid_argument("empty input") for an empty image.
LabelMap classify_image(const Image& img, const ColorModel& m, unsigned threads = 0);

/// Same as classify_image under `base` with `overrides` applied. The base
/// model is left untouched; invalid edits throw ModelInvariantError.
LabelMap reclassify_with_overrides(const Image& img, const ColorModel& base, const ModelOverrides& overrides,
                                   unsigned threads = 0);

/// Pixel count per category.
CategoryCounts count_labels(const LabelMap& lm);

/// Mask of a single category (possibly empty).
CategoryMask mask_for(const LabelMap& lm, CategoryId c);

/// One mask per category present in the label map, in category order.
std::vector<CategoryMask> masks_from_labels(const LabelMap& lm);

/// Colour-coded composite of the label map using the category palette.
Image composite_labels(const LabelMap& lm);

/// Number of pixels whose labels differ. The maps must have equal size.
std::size_t count_changed(const LabelMap& a, const LabelMap& b);

}  // namespace cw
