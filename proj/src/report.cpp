// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The chromawheel authors

#include "chromawheel/report.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <json.hpp>
#include <sstream>

namespace cw {
namespace {

using ordered_json = nlohmann::ordered_json;

const char kDefaultModelText[] =
#include "default_model_data.inc"
    ;

double round4(double v) { return std::round(v * 1e4) / 1e4; }

ordered_json lab_json(const LabColor& c) { return ordered_json::array({round4(c.L), round4(c.A), round4(c.B)}); }

std::string hex(Rgb8 c) { return fmt::format("#{:02x}{:02x}{:02x}", c.r, c.g, c.b); }

ordered_json composition_json(const std::vector<CompositionEntry>& entries) {
    ordered_json arr = ordered_json::array();
    for (const auto& e : entries) {
        arr.push_back({{"category", std::string(display_name(e.category))}, {"percent", round4(e.percent)}});
    }
    return arr;
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace

const std::string& default_model_json() {
    static const std::string text(kDefaultModelText);
    return text;
}

const ColorModel& default_model() {
    static const ColorModel model = parse_model(default_model_json());
    return model;
}

double AnalysisReport::percent(CategoryId c) const {
    const std::size_t total = pixel_total();
    return total == 0 ? 0.0 : 100.0 * static_cast<double>(counts[index_of(c)]) / static_cast<double>(total);
}

AnalysisResult analyze(const Image& img, const ColorModel& m, const AnalyzeOptions& opt) {
    const auto start = std::chrono::steady_clock::now();
    AnalysisResult out;
    out.labels = classify_image(img, m, opt.threads);
    AnalysisReport& r = out.report;
    r.source = opt.source;
    r.width = img.width;
    r.height = img.height;
    r.model_id = opt.model_id;
    r.model_hash = model_hash(m);
    r.counts = count_labels(out.labels);
    r.shades = summarize_shades(img, out.labels, m, opt.shades);
    r.duration_ms = elapsed_ms(start);
    return out;
}

double export_masks(const LabelMap& labels, const std::filesystem::path& dir, const std::string& stem,
                    AnalysisReport& report) {
    const auto start = std::chrono::steady_clock::now();
    std::filesystem::create_directories(dir);
    report.masks.clear();
    for (const CategoryMask& mask : masks_from_labels(labels)) {
        const std::string name = fmt::format("{}_{}.png", stem, slug(mask.category));
        save_png(dir / name, mask.bitmap);
        report.masks.push_back({mask.category, name, mask.pixel_count});
    }
    report.composite = stem + "_labels.png";
    save_png(dir / report.composite, composite_labels(labels));
    const double ms = elapsed_ms(start);
    report.duration_ms += ms;
    return ms;
}

std::string report_to_json(const AnalysisReport& r, bool include_timing) {
    ordered_json j;
    j["source"] = {{"path", r.source}, {"width", r.width}, {"height", r.height}};
    j["model"] = {{"id", r.model_id}, {"sha256", r.model_hash}};
    j["pixel_total"] = r.pixel_total();

    ordered_json cats = ordered_json::array();
    for (CategoryId c : kAllCategories) {
        cats.push_back({{"category", std::string(display_name(c))},
                        {"slug", std::string(slug(c))},
                        {"count", r.counts[index_of(c)]},
                        {"percent", round4(r.percent(c))}});
    }
    j["categories"] = std::move(cats);

    ordered_json shades = ordered_json::array();
    for (CategoryId c : kAllCategories) {
        const auto& list = r.shades.per_category[index_of(c)];
        if (list.empty()) continue;
        ordered_json top = ordered_json::array();
        for (const Shade& s : list) {
            top.push_back({{"lab", lab_json(s.lab)},
                           {"mean_lab", lab_json(s.mean_lab)},
                           {"count", s.count},
                           {"swatch", hex(s.swatch)},
                           {"name", s.name},
                           {"composition", composition_json(s.composition)}});
        }
        shades.push_back({{"category", std::string(display_name(c))},
                          {"distinct_shades", r.shades.distinct[index_of(c)]},
                          {"top", std::move(top)}});
    }
    j["shades"] = std::move(shades);

    ordered_json masks = ordered_json::array();
    for (const MaskFile& m : r.masks) {
        masks.push_back({{"category", std::string(display_name(m.category))}, {"file", m.file}, {"pixels", m.pixel_count}});
    }
    j["masks"] = {{"composite", r.composite}, {"files", std::move(masks)}};
    if (include_timing) j["duration_ms"] = round4(r.duration_ms);
    return j.dump(2) + "\n";
}

std::string report_to_text(const AnalysisReport& r) {
    std::ostringstream os;
    os << fmt::format("Image: {} ({}x{}, {} pixels)\n", r.source, r.width, r.height, r.pixel_total());
    os << fmt::format("Model: {} (sha256 {})\n\n", r.model_id, r.model_hash.substr(0, 16));
    os << fmt::format("{:<14}{:>10}{:>10}\n", "Category", "Pixels", "Percent");
    for (CategoryId c : kAllCategories) {
        if (r.counts[index_of(c)] == 0) continue;
        os << fmt::format("{:<14}{:>10}{:>9.2f}%\n", display_name(c), r.counts[index_of(c)], r.percent(c));
    }
    for (CategoryId c : kAllCategories) {
        const auto& list = r.shades.per_category[index_of(c)];
        if (list.empty()) continue;
        os << fmt::format("\n{} shades ({} distinct):\n", display_name(c), r.shades.distinct[index_of(c)]);
        for (const Shade& s : list) {
            os << fmt::format("  {} L{:>4.0f} A{:>5.0f} B{:>5.0f} {:>8} px  {}\n", hex(s.swatch), s.lab.L, s.lab.A,
                              s.lab.B, s.count, s.name);
        }
    }
    if (!r.masks.empty()) {
        os << "\nMasks:\n";
        for (const MaskFile& m : r.masks) os << fmt::format("  {:<14} {}\n", display_name(m.category), m.file);
        os << fmt::format("  {:<14} {}\n", "composite", r.composite);
    }
    os << fmt::format("\nDuration: {:.1f} ms\n", r.duration_ms);
    return os.str();
}

}  // namespace cw
