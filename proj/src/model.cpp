// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The chromawheel authors

#include "chromawheel/model.hpp"

#include <fmt/format.h>
#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "chromawheel/colorspace.hpp"

namespace cw {
namespace {

using nlohmann::json;

constexpr double kAngleEps = 1e-9;

std::string num(double v) { return fmt::format("{:.6f}", v); }

void require_finite(double v, const char* invariant, const char* what) {
    if (!std::isfinite(v)) throw ModelInvariantError(invariant, fmt::format("{} is not finite", what));
}

double get_number(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number()) {
        throw ModelFormatError(fmt::format("model file: missing or non-numeric field '{}'", key));
    }
    return j.at(key).get<double>();
}

// True when `list`, read in the given order, walks once around the circle
// with strictly positive steps.
bool circularly_increasing(const std::vector<double>& list) {
    if (list.size() < 2) return true;
    double total = 0.0;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const double step = ccw_distance(list[i], list[(i + 1) % list.size()]);
        if (step <= kAngleEps) return false;
        total += step;
    }
    return std::abs(total - 360.0) < 1e-6;
}

}  // namespace

std::size_t ColorModel::interval_index(double angle) const {
    const auto it = std::upper_bound(boundaries.begin(), boundaries.end(), angle);
    if (it == boundaries.begin()) return boundaries.size() - 1;
    return static_cast<std::size_t>(it - boundaries.begin()) - 1;
}

void ColorModel::validate() {
    require_finite(r1, "radii_order", "r1");
    require_finite(r2, "radii_order", "r2");
    require_finite(r2_prime, "radii_order", "r2_prime");
    require_finite(r3, "radii_order", "r3");
    if (!(0.0 < r1 && r1 < r2_prime && r2_prime < r2 && r2 < r3)) {
        throw ModelInvariantError(
            "radii_order", fmt::format("expected 0 < r1 < r2' < r2 < r3, got r1={} r2'={} r2={} r3={}",
                                       num(r1), num(r2_prime), num(r2), num(r3)));
    }
    require_finite(brown_lo, "brown_sector", "brown sector start");
    require_finite(brown_hi, "brown_sector", "brown sector end");
    if (!(0.0 <= brown_lo && brown_lo < brown_hi && brown_hi <= 360.0)) {
        throw ModelInvariantError("brown_sector", "brown sector must satisfy 0 <= start < end <= 360");
    }
    if (!std::isfinite(plateau_half_width) || plateau_half_width < 0.0) {
        throw ModelInvariantError("plateau_half_width", "plateau half width must be finite and >= 0");
    }

    if (bases.empty()) throw ModelInvariantError("bases", "model has no hue bases");
    for (const auto& b : bases) {
        require_finite(b.angle, "bases", "base angle");
        if (b.angle < 0.0 || b.angle >= 360.0) {
            throw ModelInvariantError("bases", fmt::format("base angle {} outside [0, 360)", num(b.angle)));
        }
        if (!is_hue(b.category)) {
            throw ModelInvariantError("bases", fmt::format("base at {} has non-hue category {}",
                                                           num(b.angle), display_name(b.category)));
        }
    }
    std::sort(bases.begin(), bases.end(),
              [](const ChromogenBase& a, const ChromogenBase& b) { return a.angle < b.angle; });

    for (double b : boundaries) {
        require_finite(b, "boundary_order", "boundary angle");
        if (b < 0.0 || b >= 360.0) {
            throw ModelInvariantError("boundary_order", fmt::format("boundary {} outside [0, 360)", num(b)));
        }
    }
    std::sort(boundaries.begin(), boundaries.end());
    for (std::size_t i = 1; i < boundaries.size(); ++i) {
        if (boundaries[i] - boundaries[i - 1] <= kAngleEps) {
            throw ModelInvariantError("boundary_order",
                                      fmt::format("boundaries must be strictly increasing, {} repeats",
                                                  num(boundaries[i])));
        }
    }
    if (boundaries.size() != static_cast<std::size_t>(kHueCategoryCount)) {
        throw ModelInvariantError("hue_coverage", fmt::format("expected {} boundaries, got {}",
                                                              kHueCategoryCount, boundaries.size()));
    }

    // Every interval must hold at least one base, all of one category.
    std::vector<HueInterval> out(boundaries.size());
    std::vector<bool> seen(boundaries.size(), false);
    for (std::size_t i = 0; i < boundaries.size(); ++i) {
        out[i].start = boundaries[i];
        out[i].end = boundaries[(i + 1) % boundaries.size()];
    }
    for (const auto& b : bases) {
        const std::size_t k = interval_index(b.angle);
        const double offset = ccw_distance(out[k].start, b.angle);
        if (!seen[k]) {
            seen[k] = true;
            out[k].category = b.category;
            out[k].first_peak = b.angle;
            out[k].last_peak = b.angle;
            continue;
        }
        if (out[k].category != b.category) {
            throw ModelInvariantError(
                "boundary_interleaving",
                fmt::format("interval [{}, {}) holds bases of both {} and {}", num(out[k].start),
                            num(out[k].end), display_name(out[k].category), display_name(b.category)));
        }
        if (offset < ccw_distance(out[k].start, out[k].first_peak)) out[k].first_peak = b.angle;
        if (offset > ccw_distance(out[k].start, out[k].last_peak)) out[k].last_peak = b.angle;
    }
    std::array<int, kCategoryCount> per_category{};
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!seen[i]) {
            throw ModelInvariantError("boundary_interleaving",
                                      fmt::format("interval [{}, {}) contains no hue base",
                                                  num(out[i].start), num(out[i].end)));
        }
        ++per_category[index_of(out[i].category)];
    }
    for (CategoryId c : kAllCategories) {
        if (is_hue(c) && per_category[index_of(c)] != 1) {
            throw ModelInvariantError("hue_coverage",
                                      fmt::format("category {} covers {} intervals, expected exactly one",
                                                  display_name(c), per_category[index_of(c)]));
        }
    }
    intervals_ = std::move(out);
}

ColorModel make_model(std::vector<ChromogenBase> bases, std::vector<double> boundaries, double r1,
                      double r2, double r2_prime, double r3) {
    ColorModel m;
    m.bases = std::move(bases);
    m.boundaries = std::move(boundaries);
    m.r1 = r1;
    m.r2 = r2;
    m.r2_prime = r2_prime;
    m.r3 = r3;
    m.validate();
    return m;
}

std::string serialize_model(const ColorModel& m) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"version\": " << m.version << ",\n";
    os << "  \"bases\": [\n";
    for (std::size_t i = 0; i < m.bases.size(); ++i) {
        os << fmt::format("    {{\"angle_deg\": {}, \"category\": \"{}\"}}{}\n", num(m.bases[i].angle),
                          display_name(m.bases[i].category), i + 1 < m.bases.size() ? "," : "");
    }
    os << "  ],\n";
    os << "  \"boundaries_deg\": [";
    for (std::size_t i = 0; i < m.boundaries.size(); ++i) os << (i ? ", " : "") << num(m.boundaries[i]);
    os << "],\n";
    // Derived from bases and boundaries; written for readers, ignored on load.
    os << "  \"intervals\": [\n";
    const auto& iv = m.intervals();
    for (std::size_t i = 0; i < iv.size(); ++i) {
        os << fmt::format("    {{\"start_deg\": {}, \"end_deg\": {}, \"category\": \"{}\"}}{}\n",
                          num(iv[i].start), num(iv[i].end), display_name(iv[i].category),
                          i + 1 < iv.size() ? "," : "");
    }
    os << "  ],\n";
    os << "  \"r1\": " << num(m.r1) << ",\n";
    os << "  \"r2\": " << num(m.r2) << ",\n";
    os << "  \"r2_prime\": " << num(m.r2_prime) << ",\n";
    os << "  \"r3\": " << num(m.r3) << ",\n";
    os << "  \"brown_sector_deg\": [" << num(m.brown_lo) << ", " << num(m.brown_hi) << "],\n";
    os << "  \"plateau_half_width_deg\": " << num(m.plateau_half_width) << "\n";
    os << "}\n";
    return os.str();
}

ColorModel parse_model(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ModelFormatError(std::string("model file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ModelFormatError("model file: top level must be an object");

    ColorModel m;
    if (j.contains("version")) m.version = j.at("version").get<int>();
    if (m.version != 1) throw ModelFormatError(fmt::format("model file: unsupported version {}", m.version));

    if (!j.contains("bases") || !j.at("bases").is_array()) throw ModelFormatError("model file: missing 'bases'");
    for (const auto& b : j.at("bases")) {
        const auto cat = parse_category(b.value("category", ""));
        if (!cat) throw ModelFormatError("model file: unknown category '" + b.value("category", "") + "'");
        m.bases.push_back({get_number(b, "angle_deg"), *cat});
    }
    if (!j.contains("boundaries_deg") || !j.at("boundaries_deg").is_array()) {
        throw ModelFormatError("model file: missing 'boundaries_deg'");
    }
    for (const auto& b : j.at("boundaries_deg")) m.boundaries.push_back(b.get<double>());
    m.r1 = get_number(j, "r1");
    m.r2 = get_number(j, "r2");
    m.r2_prime = get_number(j, "r2_prime");
    m.r3 = get_number(j, "r3");
    if (j.contains("brown_sector_deg")) {
        const auto& s = j.at("brown_sector_deg");
        if (!s.is_array() || s.size() != 2) throw ModelFormatError("model file: 'brown_sector_deg' needs 2 values");
        m.brown_lo = s[0].get<double>();
        m.brown_hi = s[1].get<double>();
    }
    if (j.contains("plateau_half_width_deg")) m.plateau_half_width = get_number(j, "plateau_half_width_deg");
    m.validate();
    return m;
}

void save_model(const std::filesystem::path& path, const ColorModel& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ModelFormatError("cannot write model file: " + path.string());
    out << serialize_model(m);
    if (!out) throw ModelFormatError("failed writing model file: " + path.string());
}

ColorModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ModelFormatError("cannot read model file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str());
}

bool ModelOverrides::empty() const {
    return !boundaries && boundary_edits.empty() && !r1 && !r2 && !r2_prime && !r3 && !brown_lo &&
           !brown_hi && !plateau_half_width;
}

ColorModel apply_overrides(const ColorModel& base, const ModelOverrides& o) {
    ColorModel m = base;
    std::vector<double> list = o.boundaries ? *o.boundaries : base.boundaries;
    for (const auto& [index, angle] : o.boundary_edits) {
        if (index >= list.size()) {
            throw ModelInvariantError("boundary_count",
                                      fmt::format("boundary index {} out of range (model has {})", index,
                                                  list.size()));
        }
        list[index] = angle;
    }
    if (list.size() != base.boundaries.size()) {
        throw ModelInvariantError("boundary_count", fmt::format("expected {} boundaries, got {}",
                                                                base.boundaries.size(), list.size()));
    }
    for (double& b : list) {
        require_finite(b, "boundary_order", "boundary angle");
        b = wrap_degrees(b);
    }
    // Edits may not reorder boundaries around the circle.
    if (!circularly_increasing(list)) {
        throw ModelInvariantError("boundary_order",
                                  "boundaries must stay strictly increasing around the circle");
    }
    m.boundaries = std::move(list);

    if (o.r2) {
        const double shift = *o.r2 - base.r2;
        m.r2 = *o.r2;
        m.r2_prime = base.r2_prime + shift;
        m.r3 = base.r3 + shift;
    }
    if (o.r1) m.r1 = *o.r1;
    if (o.r2_prime) m.r2_prime = *o.r2_prime;
    if (o.r3) m.r3 = *o.r3;
    if (o.brown_lo) m.brown_lo = *o.brown_lo;
    if (o.brown_hi) m.brown_hi = *o.brown_hi;
    if (o.plateau_half_width) m.plateau_half_width = *o.plateau_half_width;
    m.validate();
    return m;
}

std::string model_hash(const ColorModel& m) {
    const std::string text = serialize_model(m);
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 digest failed");
    }
    std::string hex;
    for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
    return hex;
}

}  // namespace cw
