// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The chromawheel authors
//
// Command-line front end: build a model from a reference wheel, analyse
// images, or serve the session API.

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "chromawheel/knowledge.hpp"
#include "chromawheel/report.hpp"
#include "chromawheel/service.hpp"

namespace {

namespace fs = std::filesystem;

struct ModelChoice {
    cw::ColorModel model;
    std::string id;
};

ModelChoice choose_model(const std::string& path) {
    if (path.empty()) return {cw::default_model(), "default"};
    return {cw::load_model(path), path};
}

void print_model_summary(const cw::ColorModel& m) {
    std::cout << fmt::format("{:>4}  {:>11}  {}\n", "base", "angle (deg)", "category");
    for (std::size_t i = 0; i < m.bases.size(); ++i) {
        std::cout << fmt::format("{:>4}  {:>11.4f}  {}\n", i, m.bases[i].angle, cw::display_name(m.bases[i].category));
    }
    std::cout << fmt::format("\n{:>4}  {:>11}  {:>11}  {}\n", "int", "start", "end", "category");
    for (std::size_t i = 0; i < m.intervals().size(); ++i) {
        const auto& iv = m.intervals()[i];
        std::cout << fmt::format("{:>4}  {:>11.4f}  {:>11.4f}  {}\n", i, iv.start, iv.end, cw::display_name(iv.category));
    }
    std::cout << fmt::format("\nr1 = {:.4f}   r2' = {:.4f}   r2 = {:.4f}   r3 = {:.4f}\n", m.r1, m.r2_prime, m.r2,
                             m.r3);
}

int cmd_build_model(const std::string& wheel, const std::string& out, const cw::KnowledgeOptions& opt) {
    const cw::Image img = cw::load_image(wheel);
    const cw::ColorModel m = cw::build_model(img, opt);
    cw::save_model(out, m);
    print_model_summary(m);
    std::cout << "\nwrote " << out << "\n";
    return 0;
}

int cmd_analyze(const std::string& image_path, const std::string& model_path, const std::string& out_dir,
                bool masks, const std::string& format, unsigned threads) {
    const ModelChoice mc = choose_model(model_path);
    const cw::Image img = cw::load_image(image_path);
    cw::AnalyzeOptions opt;
    opt.source = image_path;
    opt.model_id = mc.id;
    opt.threads = threads;
    cw::AnalysisResult result = cw::analyze(img, mc.model, opt);

    const std::string stem = fs::path(image_path).stem().string();
    fs::create_directories(out_dir);
    if (masks) cw::export_masks(result.labels, out_dir, stem, result.report);

    const bool text = format == "text";
    const fs::path report_path = fs::path(out_dir) / (stem + (text ? "_report.txt" : "_report.json"));
    const std::string body = text ? cw::report_to_text(result.report) : cw::report_to_json(result.report);
    std::ofstream f(report_path, std::ios::binary);
    f << body;
    if (!f) throw cw::ImageIoError("cannot write report: " + report_path.string());
    if (text) std::cout << body;
    std::cout << fmt::format("wrote {} ({:.1f} ms)\n", report_path.string(), result.report.duration_ms);
    return 0;
}

cw::Service* g_service = nullptr;

void handle_signal(int) {
    if (g_service) g_service->stop();
}

int cmd_serve(const std::string& host, int port, const std::string& model_path, const std::string& static_dir,
              std::size_t max_sessions) {
    ModelChoice mc = choose_model(model_path);
    cw::ServiceOptions opt;
    opt.model_id = mc.id;
    opt.max_sessions = max_sessions;
    if (!static_dir.empty()) opt.static_dir = static_dir;
    cw::Service service(std::move(mc.model), opt);
    g_service = &service;
    std::signal(SIGINT, handle_signal);
    std::signal(SIGTERM, handle_signal);
    spdlog::info("serving on http://{}:{}/api (model {})", host, port, opt.model_id);
    const bool ok = service.listen(host, port);
    g_service = nullptr;
    if (!ok) {
        spdlog::error("cannot listen on {}:{} (port in use or not permitted)", host, port);
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Colour classification, naming and segmentation in polar CIELAB"};
    app.require_subcommand(1);
    bool verbose = false;
    app.add_flag("-v,--verbose", verbose, "Verbose logging");

    auto* build = app.add_subcommand("build-model", "Derive a colour model from a reference wheel image");
    std::string wheel;
    std::string model_out;
    cw::KnowledgeOptions kopt;
    build->add_option("wheel", wheel, "Reference wheel image")->required();
    build->add_option("-o,--output", model_out, "Model JSON to write")->required();
    build->add_option("--bin-size", kopt.histogram.bin_size, "Histogram bin size in AB units")
        ->check(CLI::PositiveNumber);
    build->add_option("--occupancy", kopt.histogram.occupancy_fraction,
                      "Bins below this fraction of all pixels are cleared")
        ->check(CLI::Range(0.0, 1.0));

    auto* an = app.add_subcommand("analyze", "Classify an image and write its report");
    std::string image;
    std::string model_path;
    std::string out_dir = ".";
    bool masks = false;
    std::string format = "json";
    unsigned threads = 0;
    an->add_option("image", image, "Image to analyse (PNG, JPEG or BMP)")->required();
    an->add_option("-m,--model", model_path, "Model JSON (default: built-in model)");
    an->add_option("-o,--output-dir", out_dir, "Directory for the report and masks");
    an->add_flag("--masks", masks, "Write one PNG mask per category and a composite");
    an->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));
    an->add_option("--threads", threads, "Worker threads (0 = all cores)");

    auto* serve = app.add_subcommand("serve", "Serve the session API over HTTP");
    int port = 8080;
    std::string host = "127.0.0.1";
    std::string serve_model;
    std::string static_dir;
    std::size_t max_sessions = 16;
    serve->add_option("-p,--port", port, "TCP port")->check(CLI::Range(1, 65535));
    serve->add_option("--host", host, "Address to bind");
    serve->add_option("-m,--model", serve_model, "Model JSON (default: built-in model)");
    serve->add_option("--static", static_dir, "Directory with the UI bundle, served at /");
    serve->add_option("--max-sessions", max_sessions, "Sessions kept in memory")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);
    spdlog::set_level(verbose ? spdlog::level::debug : spdlog::level::info);

    try {
        if (*build) return cmd_build_model(wheel, model_out, kopt);
        if (*an) return cmd_analyze(image, model_path, out_dir, masks, format, threads);
        if (*serve) return cmd_serve(host, port, serve_model, static_dir, max_sessions);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
