// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The chromawheel authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <list>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "chromawheel/classifier.hpp"
#include "chromawheel/image.hpp"
#include "chromawheel/model.hpp"
#include "chromawheel/report.hpp"

namespace cw {

/// State of one interactive analysis. Access goes through `mutex`.
struct Session {
    std::string id;
    std::string source;
    Image image;
    ModelOverrides overrides;
    ColorModel effective;  // base model with overrides applied
    LabelMap labels;
    AnalysisReport report;
    std::mutex mutex;
};

/// In-memory sessions with least-recently-used eviction.
class SessionStore {
public:
    explicit SessionStore(std::size_t capacity = 16);

    /// Inserts a session, evicting the least recently used one when full.
    /// Returns the ids of evicted sessions.
    std::vector<std::string> insert(std::shared_ptr<Session> s);

    /// Looks a session up and marks it most recently used.
    std::shared_ptr<Session> get(const std::string& id);

    bool erase(const std::string& id);
    std::size_t size() const;
    std::size_t capacity() const { return capacity_; }

private:
    std::size_t capacity_;
    mutable std::mutex mutex_;
    std::list<std::shared_ptr<Session>> order_;  // front = most recent
    std::unordered_map<std::string, std::list<std::shared_ptr<Session>>::iterator> index_;
};

struct ServiceOptions {
    std::size_t max_sessions = 16;
    std::size_t max_upload_bytes = 64u << 20;
    std::string model_id = "default";
    std::optional<std::filesystem::path> static_dir;  // UI bundle served at "/"
    unsigned analysis_threads = 0;
};

/// HTTP JSON API under /api:
///   GET    /api/health
///   GET    /api/model
///   POST   /api/session                       image upload (multipart "image" or raw body)
///   GET    /api/session/{id}
///   DELETE /api/session/{id}
///   GET    /api/session/{id}/report
///   PATCH  /api/session/{id}/model            boundary and radius edits
///   GET    /api/session/{id}/mask/{category}  PNG mask
///   GET    /api/session/{id}/labels           PNG composite
class Service {
public:
    Service(ColorModel base, ServiceOptions opt = {});
    ~Service();
    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    /// Binds and serves until stop(). Returns false when the port cannot be
    /// bound.
    bool listen(const std::string& host, int port);

    /// Binds to a free port and returns it, or -1. Serve with
    /// listen_after_bind().
    int bind_to_any_port(const std::string& host);
    bool listen_after_bind();

    void stop();
    void wait_until_ready() const;

    const ColorModel& base_model() const { return base_; }
    SessionStore& sessions() { return store_; }

private:
    struct Impl;
    ColorModel base_;
    ServiceOptions opt_;
    SessionStore store_;
    std::unique_ptr<Impl> impl_;
};

/// Parses a PATCH body into overrides merged on top of `current`. Fields:
/// "reset" (bool, clears earlier edits first), "boundaries" (full list),
/// "boundary_edits" ([{"index", "angle"}] or {"<index>": angle}),
/// "r1", "r2", "r2_prime", "r3", "brown_sector" ([lo, hi]) and
/// "plateau_half_width". Throws std::invalid_argument on malformed input.
ModelOverrides merge_override_patch(const ModelOverrides& current, const std::string& json_body);

/// JSON rendering of an override set.
std::string overrides_to_json(const ModelOverrides& o);

}  // namespace cw
