// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The chromawheel authors

#include <cmath>

#include "chromawheel/knowledge.hpp"

namespace cw {

AbHistogram build_histogram(const Image& img, const HistogramOptions& opt) {
    if (img.empty()) throw KnowledgeError("empty input");
    if (!(opt.bin_size > 0.0) || !std::isfinite(opt.bin_size)) {
        throw KnowledgeError("histogram bin size must be positive");
    }

    AbHistogram h;
    h.bin_size = opt.bin_size;
    h.half = static_cast<int>(std::ceil(128.0 / opt.bin_size));
    const int dim = h.dim();
    h.counts.assign(static_cast<std::size_t>(dim) * dim, 0);

    for (const Rgb8& p : img.pixels) {
        const LabColor lab = srgb_to_lab(p);
        const long col = std::lround(lab.A / opt.bin_size) + h.half;
        const long row = std::lround(lab.B / opt.bin_size) + h.half;
        if (col < 0 || row < 0 || col >= dim || row >= dim) continue;
        ++h.counts[static_cast<std::size_t>(row) * dim + col];
    }

    // Sparse bins are speckle from compression noise or dithering.
    const double threshold = opt.occupancy_fraction * static_cast<double>(img.size());
    for (auto& c : h.counts) {
        if (static_cast<double>(c) < threshold) c = 0;
    }
    return h;
}

}  // namespace cw
