// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The chromawheel authors

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <json.hpp>

#include "chromawheel/report.hpp"

using namespace cw;
namespace fs = std::filesystem;

namespace {

Image sample_image() {
    Image img(64, 48);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            img.at(x, y) = {static_cast<std::uint8_t>(x * 4), static_cast<std::uint8_t>(y * 5),
                            static_cast<std::uint8_t>((x * y) % 256)};
        }
    }
    return img;
}

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("chromawheel_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("a single gray pixel is reported as fully neutral") {
    const AnalysisResult r = analyze(Image(1, 1, {128, 128, 128}), default_model(), {"gray.png"});
    CHECK(r.report.counts[index_of(CategoryId::Neutral)] == 1);
    CHECK(r.report.percent(CategoryId::Neutral) == 100.0);
    const auto j = nlohmann::json::parse(report_to_json(r.report));
    CHECK(j["pixel_total"] == 1);
    CHECK(j["shades"][0]["category"] == "Neutral");
    CHECK(j["shades"][0]["top"][0]["name"] == "100.00% Neutral");
}

TEST_CASE("report counts and percentages reconcile with the label map") {
    const Image img = sample_image();
    const AnalysisResult r = analyze(img, default_model(), {"sample.png"});
    const CategoryCounts counts = count_labels(r.labels);
    CHECK(counts == r.report.counts);

    const auto j = nlohmann::json::parse(report_to_json(r.report));
    std::size_t total = 0;
    double pct = 0.0;
    REQUIRE(j["categories"].size() == 12);
    for (const auto& c : j["categories"]) {
        total += c["count"].get<std::size_t>();
        pct += c["percent"].get<double>();
    }
    CHECK(total == img.size());
    CHECK(std::abs(pct - 100.0) < 0.01);
    CHECK(j["model"]["sha256"] == model_hash(default_model()));
    CHECK(j.contains("duration_ms"));
    for (const auto& cat : j["shades"]) CHECK(cat["top"].size() <= 10);
}

TEST_CASE("reports are byte identical apart from timing") {
    const Image img = sample_image();
    const std::string a = report_to_json(analyze(img, default_model(), {"s"}).report, false);
    const std::string b = report_to_json(analyze(img, default_model(), {"s", "default", {}, 3}).report, false);
    CHECK(a == b);
    CHECK(a.find("duration_ms") == std::string::npos);
}

TEST_CASE("key order is stable") {
    const auto text = report_to_json(analyze(sample_image(), default_model(), {"s"}).report);
    const auto source = text.find("\"source\"");
    const auto model = text.find("\"model\"");
    const auto categories = text.find("\"categories\"");
    const auto shades = text.find("\"shades\"");
    const auto masks = text.find("\"masks\"");
    CHECK(source < model);
    CHECK(model < categories);
    CHECK(categories < shades);
    CHECK(shades < masks);
}

TEST_CASE("mask export writes one file per present category and a composite") {
    const Image img = sample_image();
    AnalysisResult r = analyze(img, default_model(), {"sample.png"});
    const fs::path dir = scratch_dir("masks");
    export_masks(r.labels, dir, "sample", r.report);
    std::size_t present = 0;
    for (auto n : r.report.counts) present += n > 0 ? 1 : 0;
    CHECK(r.report.masks.size() == present);
    std::size_t covered = 0;
    for (const MaskFile& m : r.report.masks) {
        REQUIRE(fs::exists(dir / m.file));
        CHECK(m.file == "sample_" + std::string(slug(m.category)) + ".png");
        const Image back = load_image(dir / m.file);
        std::size_t white = 0;
        for (const Rgb8& p : back.pixels) white += p.r == 255 ? 1 : 0;
        CHECK(white == m.pixel_count);
        covered += white;
    }
    CHECK(covered == img.size());
    CHECK(fs::exists(dir / "sample_labels.png"));
    const auto j = nlohmann::json::parse(report_to_json(r.report));
    CHECK(j["masks"]["composite"] == "sample_labels.png");
    CHECK(j["masks"]["files"].size() == present);
    fs::remove_all(dir);
}

TEST_CASE("text rendering lists categories and shades") {
    const AnalysisResult r = analyze(sample_image(), default_model(), {"sample.png"});
    const std::string text = report_to_text(r.report);
    CHECK(text.find("Image: sample.png (64x48") != std::string::npos);
    CHECK(text.find("Category") != std::string::npos);
    CHECK(text.find("shades (") != std::string::npos);
}

TEST_CASE("png round trip through the image codec") {
    const Image img = sample_image();
    const fs::path dir = scratch_dir("png");
    save_png(dir / "x.png", img);
    CHECK(load_image(dir / "x.png").pixels == img.pixels);
    CHECK(decode_image(encode_png(img)).pixels == img.pixels);
    CHECK_THROWS_AS(load_image(dir / "missing.png"), ImageIoError);
    CHECK_THROWS_AS(decode_image({1, 2, 3}), ImageIoError);
    fs::remove_all(dir);
}
