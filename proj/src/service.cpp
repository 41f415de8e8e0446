// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The chromawheel authors

#include "chromawheel/service.hpp"

#include <fmt/format.h>
#include <openssl/rand.h>
#include <spdlog/spdlog.h>

#include <httplib.h>

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <stdexcept>

namespace cw {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string new_session_id() {
    unsigned char bytes[16];
    if (RAND_bytes(bytes, sizeof bytes) != 1) throw std::runtime_error("random source unavailable");
    std::string id;
    for (unsigned char b : bytes) id += fmt::format("{:02x}", b);
    return id;
}

void send_json(httplib::Response& res, int status, const ordered_json& body) {
    res.status = status;
    res.set_content(body.dump(2) + "\n", "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& code, const std::string& message) {
    send_json(res, status, {{"error", code}, {"message", message}});
}

double number_field(const json& j, const char* key) {
    const auto& v = j.at(key);
    if (!v.is_number()) throw std::invalid_argument(fmt::format("field '{}' must be a number", key));
    return v.get<double>();
}

std::size_t index_field(const json& v, const std::string& what) {
    if (v.is_number_unsigned()) return v.get<std::size_t>();
    if (v.is_number_integer() && v.get<long long>() >= 0) return static_cast<std::size_t>(v.get<long long>());
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        std::size_t pos = 0;
        try {
            const unsigned long long n = std::stoull(s, &pos);
            if (pos == s.size()) return static_cast<std::size_t>(n);
        } catch (const std::exception&) {
        }
    }
    throw std::invalid_argument(what + " must be a non-negative integer");
}

ordered_json session_json(const Session& s, const ColorModel& base) {
    ordered_json j;
    j["session_id"] = s.id;
    j["model"] = ordered_json::parse(serialize_model(s.effective));
    j["base_model_sha256"] = model_hash(base);
    j["overrides"] = ordered_json::parse(overrides_to_json(s.overrides));
    j["report"] = ordered_json::parse(report_to_json(s.report));
    return j;
}

}  // namespace

// ---------------------------------------------------------------- sessions

SessionStore::SessionStore(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ == 0) throw std::invalid_argument("session capacity must be positive");
}

std::vector<std::string> SessionStore::insert(std::shared_ptr<Session> s) {
    std::lock_guard lock(mutex_);
    std::vector<std::string> evicted;
    if (auto it = index_.find(s->id); it != index_.end()) {
        order_.erase(it->second);
        index_.erase(it);
    }
    while (order_.size() >= capacity_) {
        evicted.push_back(order_.back()->id);
        index_.erase(order_.back()->id);
        order_.pop_back();
    }
    order_.push_front(std::move(s));
    index_[order_.front()->id] = order_.begin();
    return evicted;
}

std::shared_ptr<Session> SessionStore::get(const std::string& id) {
    std::lock_guard lock(mutex_);
    auto it = index_.find(id);
    if (it == index_.end()) return nullptr;
    order_.splice(order_.begin(), order_, it->second);
    return order_.front();
}

bool SessionStore::erase(const std::string& id) {
    std::lock_guard lock(mutex_);
    auto it = index_.find(id);
    if (it == index_.end()) return false;
    order_.erase(it->second);
    index_.erase(it);
    return true;
}

std::size_t SessionStore::size() const {
    std::lock_guard lock(mutex_);
    return order_.size();
}

// ---------------------------------------------------------------- overrides

ModelOverrides merge_override_patch(const ModelOverrides& current, const std::string& json_body) {
    json j;
    try {
        j = json_body.empty() ? json::object() : json::parse(json_body);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("body is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("body must be a JSON object");

    static const std::vector<std::string> known = {"reset", "boundaries", "boundary_edits", "r1", "r2", "r2_prime",
                                                   "r3", "brown_sector", "plateau_half_width"};
    for (const auto& [key, value] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw std::invalid_argument("unknown field '" + key + "'");
        }
    }

    ModelOverrides o = current;
    if (j.contains("reset")) {
        if (!j.at("reset").is_boolean()) throw std::invalid_argument("field 'reset' must be a boolean");
        if (j.at("reset").get<bool>()) o = ModelOverrides{};
    }
    if (j.contains("boundaries")) {
        const auto& arr = j.at("boundaries");
        if (!arr.is_array()) throw std::invalid_argument("field 'boundaries' must be an array of numbers");
        std::vector<double> list;
        for (const auto& v : arr) {
            if (!v.is_number()) throw std::invalid_argument("field 'boundaries' must be an array of numbers");
            list.push_back(v.get<double>());
        }
        o.boundaries = std::move(list);
        o.boundary_edits.clear();
    }
    if (j.contains("boundary_edits")) {
        const auto& edits = j.at("boundary_edits");
        if (edits.is_array()) {
            for (const auto& e : edits) {
                if (!e.is_object() || !e.contains("index") || !e.contains("angle") || !e.at("angle").is_number()) {
                    throw std::invalid_argument("each boundary edit needs an integer 'index' and a numeric 'angle'");
                }
                o.boundary_edits[index_field(e.at("index"), "boundary edit index")] = e.at("angle").get<double>();
            }
        } else if (edits.is_object()) {
            for (const auto& [key, value] : edits.items()) {
                if (!value.is_number()) throw std::invalid_argument("boundary edit angles must be numbers");
                o.boundary_edits[index_field(json(key), "boundary edit index")] = value.get<double>();
            }
        } else {
            throw std::invalid_argument("field 'boundary_edits' must be an array or an object");
        }
    }
    if (j.contains("r1")) o.r1 = number_field(j, "r1");
    if (j.contains("r2")) o.r2 = number_field(j, "r2");
    if (j.contains("r2_prime")) o.r2_prime = number_field(j, "r2_prime");
    if (j.contains("r3")) o.r3 = number_field(j, "r3");
    if (j.contains("brown_sector")) {
        const auto& s = j.at("brown_sector");
        if (!s.is_array() || s.size() != 2 || !s[0].is_number() || !s[1].is_number()) {
            throw std::invalid_argument("field 'brown_sector' must be [start, end] in degrees");
        }
        o.brown_lo = s[0].get<double>();
        o.brown_hi = s[1].get<double>();
    }
    if (j.contains("plateau_half_width")) o.plateau_half_width = number_field(j, "plateau_half_width");
    return o;
}

std::string overrides_to_json(const ModelOverrides& o) {
    ordered_json j = ordered_json::object();
    if (o.boundaries) j["boundaries"] = *o.boundaries;
    if (!o.boundary_edits.empty()) {
        ordered_json edits = ordered_json::array();
        for (const auto& [index, angle] : o.boundary_edits) edits.push_back({{"index", index}, {"angle", angle}});
        j["boundary_edits"] = std::move(edits);
    }
    if (o.r1) j["r1"] = *o.r1;
    if (o.r2) j["r2"] = *o.r2;
    if (o.r2_prime) j["r2_prime"] = *o.r2_prime;
    if (o.r3) j["r3"] = *o.r3;
    if (o.brown_lo || o.brown_hi) {
        j["brown_sector"] = {o.brown_lo.value_or(std::nan("")), o.brown_hi.value_or(std::nan(""))};
    }
    if (o.plateau_half_width) j["plateau_half_width"] = *o.plateau_half_width;
    return j.dump();
}

// ---------------------------------------------------------------- service

struct Service::Impl {
    httplib::Server server;
};

Service::Service(ColorModel base, ServiceOptions opt)
    : base_(std::move(base)), opt_(std::move(opt)), store_(opt_.max_sessions), impl_(std::make_unique<Impl>()) {
    auto& srv = impl_->server;
    srv.set_payload_max_length(opt_.max_upload_bytes);
    // The library default adds SO_REUSEPORT, which lets a second server
    // silently share a port that is already taken. Only allow quick rebinds.
    srv.set_socket_options([](socket_t sock) {
        int yes = 1;
        setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
    });

    srv.Get("/api/health", [this](const httplib::Request&, httplib::Response& res) {
        send_json(res, 200, {{"status", "ok"}, {"sessions", store_.size()}});
    });

    srv.Get("/api/model", [this](const httplib::Request&, httplib::Response& res) {
        res.status = 200;
        res.set_content(serialize_model(base_), "application/json");
    });

    srv.Post("/api/session", [this](const httplib::Request& req, httplib::Response& res) {
        std::string source = "upload";
        const std::string* bytes = &req.body;
        httplib::MultipartFormData file;
        if (req.is_multipart_form_data()) {
            if (!req.has_file("image")) {
                send_error(res, 400, "missing_image", "multipart upload needs an 'image' field");
                return;
            }
            file = req.get_file_value("image");
            if (!file.filename.empty()) source = file.filename;
            bytes = &file.content;
        }
        if (bytes->empty()) {
            send_error(res, 400, "missing_image", "request body holds no image");
            return;
        }
        auto s = std::make_shared<Session>();
        try {
            s->image = decode_image(std::vector<std::uint8_t>(bytes->begin(), bytes->end()));
        } catch (const ImageIoError& e) {
            send_error(res, 400, "invalid_image", e.what());
            return;
        }
        s->id = new_session_id();
        s->source = source;
        s->effective = base_;
        AnalysisResult result = analyze(s->image, base_, {source, opt_.model_id, {}, opt_.analysis_threads});
        s->labels = std::move(result.labels);
        s->report = std::move(result.report);
        ordered_json body;
        {
            std::lock_guard lock(s->mutex);
            body = session_json(*s, base_);
        }
        for (const auto& gone : store_.insert(s)) spdlog::info("session {} evicted", gone);
        spdlog::info("session {} created from {} ({}x{})", s->id, source, s->image.width, s->image.height);
        send_json(res, 201, body);
    });

    auto with_session = [this](const httplib::Request& req, httplib::Response& res) -> std::shared_ptr<Session> {
        auto s = store_.get(req.path_params.at("id"));
        if (!s) send_error(res, 404, "unknown_session", "no session with id " + req.path_params.at("id"));
        return s;
    };

    srv.Get("/api/session/:id", [this, with_session](const httplib::Request& req, httplib::Response& res) {
        auto s = with_session(req, res);
        if (!s) return;
        std::lock_guard lock(s->mutex);
        send_json(res, 200, session_json(*s, base_));
    });

    srv.Delete("/api/session/:id", [this](const httplib::Request& req, httplib::Response& res) {
        if (!store_.erase(req.path_params.at("id"))) {
            send_error(res, 404, "unknown_session", "no session with id " + req.path_params.at("id"));
            return;
        }
        res.status = 204;
    });

    srv.Get("/api/session/:id/report", [with_session](const httplib::Request& req, httplib::Response& res) {
        auto s = with_session(req, res);
        if (!s) return;
        std::lock_guard lock(s->mutex);
        res.status = 200;
        res.set_content(report_to_json(s->report), "application/json");
    });

    srv.Patch("/api/session/:id/model", [this, with_session](const httplib::Request& req, httplib::Response& res) {
        auto s = with_session(req, res);
        if (!s) return;
        std::lock_guard lock(s->mutex);
        ModelOverrides merged;
        try {
            merged = merge_override_patch(s->overrides, req.body);
        } catch (const std::invalid_argument& e) {
            send_error(res, 400, "invalid_request", e.what());
            return;
        }
        ColorModel edited;
        try {
            edited = apply_overrides(base_, merged);
        } catch (const ModelInvariantError& e) {
            spdlog::info("session {} rejected edit: {}", s->id, e.what());
            send_json(res, 422, {{"error", "invalid_model_edit"}, {"invariant", e.invariant()}, {"message", e.what()}});
            return;
        }
        AnalysisResult result = analyze(s->image, edited, {s->source, opt_.model_id, {}, opt_.analysis_threads});
        const std::size_t changed = count_changed(s->labels, result.labels);
        s->overrides = std::move(merged);
        s->effective = std::move(edited);
        s->labels = std::move(result.labels);
        s->report = std::move(result.report);
        ordered_json body = session_json(*s, base_);
        body["changed_pixels"] = changed;
        send_json(res, 200, body);
    });

    srv.Get("/api/session/:id/mask/:category", [with_session](const httplib::Request& req, httplib::Response& res) {
        auto s = with_session(req, res);
        if (!s) return;
        const auto cat = parse_category(req.path_params.at("category"));
        if (!cat) {
            send_error(res, 404, "unknown_category", "no category named " + req.path_params.at("category"));
            return;
        }
        std::vector<std::uint8_t> png;
        {
            std::lock_guard lock(s->mutex);
            png = encode_png(mask_for(s->labels, *cat).bitmap);
        }
        res.status = 200;
        res.set_header("Content-Disposition",
                       fmt::format("inline; filename=\"mask_{}.png\"", slug(*cat)));
        res.set_content(std::string(png.begin(), png.end()), "image/png");
    });

    srv.Get("/api/session/:id/labels", [with_session](const httplib::Request& req, httplib::Response& res) {
        auto s = with_session(req, res);
        if (!s) return;
        std::vector<std::uint8_t> png;
        {
            std::lock_guard lock(s->mutex);
            png = encode_png(composite_labels(s->labels));
        }
        res.status = 200;
        res.set_content(std::string(png.begin(), png.end()), "image/png");
    });

    srv.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string what = "unknown error";
        try {
            std::rethrow_exception(ep);
        } catch (const std::exception& e) {
            what = e.what();
        } catch (...) {
        }
        spdlog::error("request failed: {}", what);
        send_error(res, 500, "internal_error", what);
    });

    if (opt_.static_dir && !srv.set_mount_point("/", opt_.static_dir->string())) {
        throw std::invalid_argument("static directory not found: " + opt_.static_dir->string());
    }
}

Service::~Service() { stop(); }

bool Service::listen(const std::string& host, int port) { return impl_->server.listen(host, port); }

int Service::bind_to_any_port(const std::string& host) { return impl_->server.bind_to_any_port(host); }

bool Service::listen_after_bind() { return impl_->server.listen_after_bind(); }

void Service::stop() {
    if (impl_) impl_->server.stop();
}

void Service::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace cw
