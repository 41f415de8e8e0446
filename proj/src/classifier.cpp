// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The chromawheel authors

#include "chromawheel/classifier.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace cw {

CategoryId classify_point(const PolarPixel& p, const ColorModel& m) {
    if (p.radius <= m.r1) return CategoryId::Neutral;
    if (p.radius <= m.r2 && m.in_brown_sector(p.angle)) return CategoryId::Brown;
    return m.intervals()[m.interval_index(p.angle)].category;
}

CategoryId classify_rgb(Rgb8 px, const ColorModel& m) {
    return classify_point(lab_to_polar(srgb_to_lab(px)), m);
}

LabelMap classify_image(const Image& img, const ColorModel& m, unsigned threads) {
    if (img.empty()) throw std::invalid_argument("empty input");
    LabelMap out;
    out.width = img.width;
    out.height = img.height;
    out.labels.resize(img.size());

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(img.height));

    auto work = [&](int row_begin, int row_end) {
        const std::size_t begin = static_cast<std::size_t>(row_begin) * img.width;
        const std::size_t end = static_cast<std::size_t>(row_end) * img.width;
        for (std::size_t i = begin; i < end; ++i) out.labels[i] = classify_rgb(img.pixels[i], m);
    };

    if (threads <= 1) {
        work(0, img.height);
        return out;
    }
    std::vector<std::jthread> pool;
    const int per = (img.height + static_cast<int>(threads) - 1) / static_cast<int>(threads);
    for (int r = 0; r < img.height; r += per) pool.emplace_back(work, r, std::min(img.height, r + per));
    return out;  // jthreads join on destruction, before `out` is returned
}

LabelMap reclassify_with_overrides(const Image& img, const ColorModel& base, const ModelOverrides& overrides,
                                   unsigned threads) {
    if (overrides.empty()) return classify_image(img, base, threads);
    return classify_image(img, apply_overrides(base, overrides), threads);
}

CategoryCounts count_labels(const LabelMap& lm) {
    CategoryCounts counts{};
    for (CategoryId c : lm.labels) ++counts[index_of(c)];
    return counts;
}

CategoryMask mask_for(const LabelMap& lm, CategoryId c) {
    CategoryMask mask;
    mask.category = c;
    mask.bitmap.width = lm.width;
    mask.bitmap.height = lm.height;
    mask.bitmap.pixels.resize(lm.size(), 0);
    for (std::size_t i = 0; i < lm.size(); ++i) {
        if (lm.labels[i] == c) {
            mask.bitmap.pixels[i] = 255;
            ++mask.pixel_count;
        }
    }
    return mask;
}

std::vector<CategoryMask> masks_from_labels(const LabelMap& lm) {
    const CategoryCounts counts = count_labels(lm);
    std::vector<CategoryMask> out;
    for (CategoryId c : kAllCategories) {
        if (counts[index_of(c)] > 0) out.push_back(mask_for(lm, c));
    }
    return out;
}

Image composite_labels(const LabelMap& lm) {
    Image img(lm.width, lm.height);
    for (std::size_t i = 0; i < lm.size(); ++i) img.pixels[i] = palette_color(lm.labels[i]);
    return img;
}

std::size_t count_changed(const LabelMap& a, const LabelMap& b) {
    if (a.size() != b.size()) throw std::invalid_argument("label maps differ in size");
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) n += a.labels[i] != b.labels[i] ? 1 : 0;
    return n;
}

}  // namespace cw
