// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The chromawheel authors

#include "chromawheel/knowledge.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace cw {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

double circular_mean(const std::vector<double>& angles) {
    double s = 0.0;
    double c = 0.0;
    for (double a : angles) {
        s += std::sin(a * kDegToRad);
        c += std::cos(a * kDegToRad);
    }
    return wrap_degrees(std::atan2(s, c) / kDegToRad);
}

struct Cluster {
    std::vector<double> members;
    double mean = 0.0;
};

std::string list_radii(std::vector<double> radii) {
    std::sort(radii.begin(), radii.end());
    std::string out;
    for (std::size_t i = 0; i < radii.size(); ++i) out += fmt::format("{}{:.2f}", i ? ", " : "", radii[i]);
    return "[" + out + "]";
}

}  // namespace

std::vector<double> merge_angles(const std::vector<double>& angles, double threshold_deg) {
    std::vector<Cluster> clusters;
    for (double a : angles) clusters.push_back({{wrap_degrees(a)}, wrap_degrees(a)});
    auto by_mean = [](const Cluster& a, const Cluster& b) { return a.mean < b.mean; };
    std::sort(clusters.begin(), clusters.end(), by_mean);

    while (clusters.size() > 1) {
        // Closest pair of circularly adjacent clusters; ties go to the
        // lowest index so the result does not depend on input order.
        std::size_t best = clusters.size();
        double best_gap = threshold_deg;
        for (std::size_t i = 0; i < clusters.size(); ++i) {
            const std::size_t j = (i + 1) % clusters.size();
            const double gap = clusters.size() == 2 ? angular_distance(clusters[i].mean, clusters[j].mean)
                                                    : ccw_distance(clusters[i].mean, clusters[j].mean);
            if (gap < best_gap) {
                best_gap = gap;
                best = i;
            }
        }
        if (best == clusters.size()) break;
        const std::size_t j = (best + 1) % clusters.size();
        Cluster merged;
        merged.members = clusters[best].members;
        merged.members.insert(merged.members.end(), clusters[j].members.begin(), clusters[j].members.end());
        merged.mean = circular_mean(merged.members);
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(std::max(best, j)));
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(std::min(best, j)));
        clusters.push_back(std::move(merged));
        std::sort(clusters.begin(), clusters.end(), by_mean);
    }

    std::vector<double> out;
    for (const auto& c : clusters) out.push_back(c.mean);
    return out;
}

std::vector<ChromogenBase> assign_categories(const std::vector<double>& angles) {
    std::vector<std::pair<CategoryId, double>> anchors;
    for (CategoryId c : kAllCategories) {
        if (is_hue(c)) anchors.emplace_back(c, anchor_angle(c));
    }
    std::vector<ChromogenBase> bases;
    for (double a : angles) {
        ChromogenBase b{wrap_degrees(a), anchors.front().first};
        double best = 361.0;
        for (const auto& [cat, anchor] : anchors) {
            const double d = angular_distance(b.angle, anchor);
            if (d < best) {
                best = d;
                b.category = cat;
            }
        }
        bases.push_back(b);
    }
    std::sort(bases.begin(), bases.end(),
              [](const ChromogenBase& x, const ChromogenBase& y) { return x.angle < y.angle; });
    return bases;
}

std::vector<ChromogenBase> extract_bases(const SkeletonGraph& g, const AbHistogram& h, double min_radius,
                                         double merge_threshold_deg) {
    std::vector<double> angles;
    for (const GridPoint& p : g.endpoints) {
        const double a = h.a_of(p.x);
        const double b = h.b_of(p.y);
        if (std::hypot(a, b) <= min_radius) continue;
        angles.push_back(lab_to_polar(LabColor{0.0, a, b}).angle);
    }
    if (angles.size() < 2) {
        throw KnowledgeError(fmt::format("degenerate skeleton: {} endpoint(s) beyond radius {:.2f}",
                                         angles.size(), min_radius));
    }
    return assign_categories(merge_angles(angles, merge_threshold_deg));
}

std::vector<double> compute_boundaries(const std::vector<ChromogenBase>& bases) {
    if (bases.size() < 2) throw KnowledgeError("at least two bases are needed to place boundaries");
    std::vector<ChromogenBase> sorted = bases;
    std::sort(sorted.begin(), sorted.end(),
              [](const ChromogenBase& x, const ChromogenBase& y) { return x.angle < y.angle; });
    std::vector<double> out;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const auto& a = sorted[i];
        const auto& b = sorted[(i + 1) % sorted.size()];
        if (a.category == b.category) continue;
        // Bisect the arc between the two neighbours, which is the arc that
        // holds no other base.
        out.push_back(wrap_degrees(a.angle + ccw_distance(a.angle, b.angle) / 2.0));
    }
    std::sort(out.begin(), out.end());
    return out;
}

Radii compute_radii(const std::vector<double>& branch_radii, double band_gap, double ramp_half_width) {
    std::vector<double> r = branch_radii;
    std::sort(r.begin(), r.end());

    std::vector<std::pair<std::size_t, std::size_t>> bands;  // [begin, end)
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i == 0 || r[i] - r[i - 1] > band_gap) bands.emplace_back(i, i);
        bands.back().second = i + 1;
    }
    if (bands.size() < 2) {
        throw KnowledgeError(fmt::format("radii not identifiable: branch-point radii {} form {} band(s)",
                                         list_radii(r), bands.size()));
    }

    auto mean_of = [&](const std::pair<std::size_t, std::size_t>& b) {
        return std::accumulate(r.begin() + static_cast<std::ptrdiff_t>(b.first),
                               r.begin() + static_cast<std::ptrdiff_t>(b.second), 0.0) /
               static_cast<double>(b.second - b.first);
    };
    // The calibration rings produce the two most populated bands; isolated
    // forks where neighbouring hue ramps split form small bands of their own.
    std::stable_sort(bands.begin(), bands.end(), [](const auto& x, const auto& y) {
        return (x.second - x.first) > (y.second - y.first);
    });
    double inner = mean_of(bands[0]);
    double outer = mean_of(bands[1]);
    if (inner > outer) std::swap(inner, outer);

    Radii out;
    out.r1 = inner;
    out.r2 = outer;
    out.r2_prime = outer - ramp_half_width;
    out.r3 = outer + ramp_half_width;
    if (!(0.0 < out.r1 && out.r1 < out.r2_prime)) {
        throw KnowledgeError(fmt::format(
            "radii not identifiable: bands at {:.2f} and {:.2f} violate 0 < r1 < r2 - {:.1f}; radii {}",
            out.r1, out.r2, ramp_half_width, list_radii(r)));
    }
    return out;
}

std::vector<double> branch_radii(const SkeletonGraph& g, const AbHistogram& h) {
    std::vector<double> out;
    for (const GridPoint& p : g.branch_points) out.push_back(std::hypot(h.a_of(p.x), h.b_of(p.y)));
    return out;
}

ColorModel build_model(const Image& wheel, const KnowledgeOptions& opt) {
    const AbHistogram h = build_histogram(wheel, opt.histogram);
    const SkeletonGraph g = skeletonize(h);
    const Radii radii = compute_radii(branch_radii(g, h), opt.band_gap, opt.ramp_half_width);
    // Endpoints inside the chromatic radius terminate tint ramps in the
    // near-neutral disc; only endpoints beyond it mark pure hue extremes.
    const auto bases = extract_bases(g, h, radii.r3, opt.merge_threshold_deg);
    const auto boundaries = compute_boundaries(bases);
    try {
        return make_model(bases, boundaries, radii.r1, radii.r2, radii.r2_prime, radii.r3);
    } catch (const ModelInvariantError& e) {
        throw KnowledgeError(std::string("wheel does not yield a valid model: ") + e.what());
    }
}

}  // namespace cw
