// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The chromawheel authors

#include "chromawheel/fuzzy.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace cw {

double angular_membership(double theta, const AngularMembership& f) {
    // Unwrap every knot into [a, a + 360) by walking counterclockwise.
    const double a = f.a;
    const double b = a + ccw_distance(f.a, f.b);
    const double c = b + ccw_distance(f.b, f.c);
    const double d = c + ccw_distance(f.c, f.d);
    const double e = d + ccw_distance(f.d, f.e);
    const double g = e + ccw_distance(f.e, f.g);
    const double t = a + ccw_distance(f.a, theta);

    if (t >= g) return 0.0;
    if (t <= b) return b > a ? (t - a) / (2.0 * (b - a)) : 0.5;
    if (t < c) return (t - 2.0 * b + c) / (2.0 * (c - b));
    if (t <= d) return 1.0;
    if (t <= e) return (2.0 * e - d - t) / (2.0 * (e - d));
    return (g - t) / (2.0 * (g - e));
}

std::vector<AngularMembership> angular_memberships(const ColorModel& m) {
    const auto& iv = m.intervals();
    const std::size_t n = iv.size();
    std::vector<AngularMembership> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const HueInterval& cur = iv[i];
        const HueInterval& prev = iv[(i + n - 1) % n];
        const HueInterval& next = iv[(i + 1) % n];
        const double width = ccw_distance(cur.start, cur.end);
        const double first = ccw_distance(cur.start, cur.first_peak);
        const double last = ccw_distance(cur.start, cur.last_peak);
        AngularMembership f;
        f.category = cur.category;
        f.a = prev.last_peak;
        f.b = cur.start;
        f.c = wrap_degrees(cur.start + std::max(0.0, first - m.plateau_half_width));
        f.d = wrap_degrees(cur.start + std::min(width, last + m.plateau_half_width));
        f.e = cur.end;
        f.g = next.first_peak;
        out.push_back(f);
    }
    return out;
}

RadialDegrees radial_memberships(double r, const RadialMembership& m) {
    if (r <= m.r1) return {1.0, 0.0, 0.0};
    if (r <= m.r2_prime) return {0.0, 1.0, 0.0};
    if (r >= m.r3) return {0.0, 0.0, 1.0};
    const double chromatic = (r - m.r2_prime) / (m.r3 - m.r2_prime);
    return {0.0, 1.0 - chromatic, chromatic};
}

RadialMembership radial_of(const ColorModel& m) { return {m.r1, m.r2_prime, m.r3}; }

MembershipVector compose_name(const PolarPixel& p, const ColorModel& m) {
    MembershipVector v;
    if (p.radius <= m.r1) {
        v.degrees[index_of(CategoryId::Neutral)] = 1.0;
    } else {
        const RadialDegrees rad = radial_memberships(p.radius, radial_of(m));
        const bool brown = m.in_brown_sector(p.angle);
        const double hue_scale = brown ? rad.chromatic : 1.0;
        for (const AngularMembership& f : angular_memberships(m)) {
            v.degrees[index_of(f.category)] = angular_membership(p.angle, f) * hue_scale;
        }
        if (brown) v.degrees[index_of(CategoryId::Brown)] = rad.near_achromatic;
    }

    double total = 0.0;
    for (double d : v.degrees) total += d;
    if (total <= 0.0) {
        v.composition.push_back({CategoryId::Neutral, 100.0});
        return v;
    }
    std::vector<CompositionEntry> kept;
    double kept_total = 0.0;
    for (CategoryId c : kAllCategories) {
        const double pct = 100.0 * v.degrees[index_of(c)] / total;
        if (pct < 0.5) continue;
        kept.push_back({c, pct});
        kept_total += pct;
    }
    for (auto& e : kept) e.percent = 100.0 * e.percent / kept_total;
    std::stable_sort(kept.begin(), kept.end(),
                     [](const CompositionEntry& x, const CompositionEntry& y) { return x.percent > y.percent; });
    v.composition = std::move(kept);
    return v;
}

std::string render_composition(const std::vector<CompositionEntry>& entries, bool final_and) {
    std::string out;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i > 0) {
            const bool last = i + 1 == entries.size();
            if (final_and && last) {
                out += entries.size() > 2 ? ", and " : " and ";
            } else {
                out += ", ";
            }
        }
        out += fmt::format("{:.2f}% {}", entries[i].percent, display_name(entries[i].category));
    }
    return out;
}

namespace {

struct Cell {
    int l = 0;
    int a = 0;
    int b = 0;
    std::size_t count = 0;
    double sum_l = 0.0;
    double sum_a = 0.0;
    double sum_b = 0.0;
};

// Packs category and quantised coordinates into one key. Quantised values
// stay within [-256, 255] for any step >= 1.
std::uint64_t cell_key(CategoryId c, int l, int a, int b) {
    auto u = [](int v) { return static_cast<std::uint64_t>(v + 512) & 0x3ffu; };
    return (static_cast<std::uint64_t>(index_of(c)) << 30) | (u(l) << 20) | (u(a) << 10) | u(b);
}

}  // namespace

ShadeSummary summarize_shades(const Image& img, const LabelMap& labels, const ColorModel& m,
                              const ShadeOptions& opt) {
    if (labels.size() != img.size()) throw std::invalid_argument("label map does not match image size");
    if (!(opt.step >= 1.0)) throw std::invalid_argument("shade quantisation step must be >= 1");

    std::unordered_map<std::uint64_t, Cell> cells;
    std::array<std::vector<std::uint64_t>, kCategoryCount> keys;
    for (std::size_t i = 0; i < img.size(); ++i) {
        const LabColor lab = srgb_to_lab(img.pixels[i]);
        const int ql = static_cast<int>(std::lround(lab.L / opt.step));
        const int qa = static_cast<int>(std::lround(lab.A / opt.step));
        const int qb = static_cast<int>(std::lround(lab.B / opt.step));
        const CategoryId c = labels.labels[i];
        const std::uint64_t key = cell_key(c, ql, qa, qb);
        auto [it, inserted] = cells.try_emplace(key);
        Cell& cell = it->second;
        if (inserted) {
            cell.l = ql;
            cell.a = qa;
            cell.b = qb;
            keys[index_of(c)].push_back(key);
        }
        ++cell.count;
        cell.sum_l += lab.L;
        cell.sum_a += lab.A;
        cell.sum_b += lab.B;
    }

    ShadeSummary summary;
    for (CategoryId c : kAllCategories) {
        auto& list = keys[index_of(c)];
        summary.distinct[index_of(c)] = list.size();
        std::sort(list.begin(), list.end(), [&](std::uint64_t x, std::uint64_t y) {
            const Cell& p = cells.at(x);
            const Cell& q = cells.at(y);
            if (p.count != q.count) return p.count > q.count;
            return std::tie(p.l, p.a, p.b) < std::tie(q.l, q.a, q.b);
        });
        if (list.size() > opt.top) list.resize(opt.top);
        for (std::uint64_t key : list) {
            const Cell& cell = cells.at(key);
            Shade s;
            s.lab = {cell.l * opt.step, cell.a * opt.step, cell.b * opt.step};
            const double n = static_cast<double>(cell.count);
            s.mean_lab = {cell.sum_l / n, cell.sum_a / n, cell.sum_b / n};
            s.count = cell.count;
            s.composition = compose_name(lab_to_polar(s.mean_lab), m).composition;
            s.name = render_composition(s.composition);
            s.swatch = lab_to_srgb(s.mean_lab);
            summary.per_category[index_of(c)].push_back(std::move(s));
        }
    }
    return summary;
}

}  // namespace cw
