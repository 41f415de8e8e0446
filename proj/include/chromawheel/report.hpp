// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The chromawheel authors

#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "chromawheel/classifier.hpp"
#include "chromawheel/fuzzy.hpp"
#include "chromawheel/image.hpp"
#include "chromawheel/model.hpp"

namespace cw {

/// The model shipped with the library, built from data/wheel.png.
const ColorModel& default_model();

/// Text of the shipped model file.
const std::string& default_model_json();

struct MaskFile {
    CategoryId category = CategoryId::Neutral;
    std::string file;  // file name relative to the output directory
    std::size_t pixel_count = 0;
};

struct AnalysisReport {
    std::string source;  // path or upload name
    int width = 0;
    int height = 0;
    std::string model_id;
    std::string model_hash;
    CategoryCounts counts{};
    ShadeSummary shades;
    std::vector<MaskFile> masks;  // empty when masks were not exported
    std::string composite;        // composite label image, if exported
    double duration_ms = 0.0;

    std::size_t pixel_total() const { return static_cast<std::size_t>(width) * height; }
    double percent(CategoryId c) const;
};

struct AnalysisResult {
    LabelMap labels;
    AnalysisReport report;
};

struct AnalyzeOptions {
    std::string source;
    std::string model_id = "default";
    ShadeOptions shades;
    unsigned threads = 0;
};

/// Classifies the image, counts categories and summarises shades. The
/// measured duration covers the whole call.
AnalysisResult analyze(const Image& img, const ColorModel& m, const AnalyzeOptions& opt = {});

/// Writes `<stem>_<category>.png` for every category present plus the
/// composite `<stem>_labels.png`, and records them in the report. Returns
/// the time spent in milliseconds.
double export_masks(const LabelMap& labels, const std::filesystem::path& dir, const std::string& stem,
                    AnalysisReport& report);

/// JSON rendering with a fixed key order. `include_timing` = false omits
/// duration_ms so that repeated analyses compare byte for byte.
std::string report_to_json(const AnalysisReport& r, bool include_timing = true);

/// Human-readable rendering.
std::string report_to_text(const AnalysisReport& r);

}  // namespace cw
