// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The chromawheel authors

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "chromawheel/category.hpp"
#include "chromawheel/image.hpp"
#include "chromawheel/model.hpp"

namespace cw {

/// Raised when a reference wheel does not yield a usable colour model.
class KnowledgeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Occupancy histogram over the (A, B) plane. Bin (half, half) is centred
/// on the origin; the grid spans at least [-128, 128] on both axes.
struct AbHistogram {
    double bin_size = 1.0;
    int half = 0;                       // bins on each side of the centre bin
    std::vector<std::uint32_t> counts;  // row-major, rows follow B, columns follow A

    int dim() const { return 2 * half + 1; }
    std::uint32_t at(int col, int row) const { return counts[static_cast<std::size_t>(row) * dim() + col]; }
    double a_of(int col) const { return (col - half) * bin_size; }
    double b_of(int row) const { return (row - half) * bin_size; }
};

struct HistogramOptions {
    double bin_size = 1.0;
    // Bins holding fewer than this fraction of all pixels are cleared.
    double occupancy_fraction = 1e-4;
};

/// Binary raster used for the skeleton (1 = set).
struct BinaryGrid {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> cells;

    BinaryGrid() = default;
    BinaryGrid(int w, int h) : width(w), height(h), cells(static_cast<std::size_t>(w) * h, 0) {}
    std::uint8_t get(int x, int y) const {
        return (x < 0 || y < 0 || x >= width || y >= height) ? 0 : cells[static_cast<std::size_t>(y) * width + x];
    }
    void set(int x, int y, std::uint8_t v) { cells[static_cast<std::size_t>(y) * width + x] = v; }
    std::size_t count() const;
};

struct GridPoint {
    int x = 0;
    int y = 0;
    friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

struct SkeletonGraph {
    BinaryGrid skeleton;
    std::vector<GridPoint> endpoints;      // exactly one 8-neighbour
    std::vector<GridPoint> branch_points;  // three or more 8-neighbours
};

/// Critical radii in AB units.
struct Radii {
    double r1 = 0.0;
    double r2 = 0.0;
    double r2_prime = 0.0;
    double r3 = 0.0;
};

struct KnowledgeOptions {
    HistogramOptions histogram;
    double merge_threshold_deg = 5.0;
    // Radii closer than this belong to the same branch-point band.
    double band_gap = 3.0;
    // Offset of r2' and r3 from r2.
    double ramp_half_width = 5.0;
};

/// Accumulates the AB histogram of an image and clears sparse bins.
AbHistogram build_histogram(const Image& img, const HistogramOptions& opt = {});

/// Thins a binary grid to a one-pixel-wide 8-connected skeleton using the
/// two-subiteration Zhang-Suen scheme followed by a staircase cleanup pass
/// that removes redundant corner pixels. Deterministic.
BinaryGrid thin(BinaryGrid grid);

/// Lists endpoints and branch points of a thinned grid.
SkeletonGraph analyse_skeleton(BinaryGrid skeleton);

/// Binarises and thins the histogram. Throws "no chromatic content" when no
/// occupied bin lies away from the neutral centre.
SkeletonGraph skeletonize(const AbHistogram& h);

/// Merges angles that lie closer than `threshold_deg` on the circle. Closest
/// pairs of clusters merge first and each cluster is represented by the
/// circular mean of its members, until every gap reaches the threshold.
std::vector<double> merge_angles(const std::vector<double>& angles, double threshold_deg = 5.0);

/// Assigns each angle to the hue category with the nearest anchor angle and
/// returns the bases sorted by angle.
std::vector<ChromogenBase> assign_categories(const std::vector<double>& angles);

/// Hue bases from the skeleton endpoints lying outside `min_radius`.
/// Throws "degenerate skeleton" when fewer than two endpoints qualify.
std::vector<ChromogenBase> extract_bases(const SkeletonGraph& g, const AbHistogram& h,
                                         double min_radius = 0.0, double merge_threshold_deg = 5.0);

/// Bisectors between angularly adjacent bases of different categories,
/// sorted ascending in [0, 360).
std::vector<double> compute_boundaries(const std::vector<ChromogenBase>& bases);

/// Groups radii into bands separated by more than `band_gap` and derives
/// r1 and r2 from the two most populated bands. Throws "radii not
/// identifiable" with the radii listed when two bands cannot be found.
Radii compute_radii(const std::vector<double>& branch_radii, double band_gap = 3.0,
                    double ramp_half_width = 5.0);

/// Radii of the branch points of a skeleton, measured from the AB origin.
std::vector<double> branch_radii(const SkeletonGraph& g, const AbHistogram& h);

/// Full pipeline: histogram, skeleton, radii, bases, boundaries.
ColorModel build_model(const Image& wheel, const KnowledgeOptions& opt = {});

}  // namespace cw
