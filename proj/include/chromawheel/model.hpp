// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The chromawheel authors

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chromawheel/category.hpp"

namespace cw {

/// A hue direction found in the reference wheel.
struct ChromogenBase {
    double angle = 0.0;  // degrees in [0, 360)
    CategoryId category = CategoryId::Red;
};

/// Angular interval [start, end) owned by one hue category. The peaks are
/// the first and last base of the category met when walking
/// counterclockwise from `start`.
struct HueInterval {
    CategoryId category = CategoryId::Red;
    double start = 0.0;
    double end = 0.0;
    double first_peak = 0.0;
    double last_peak = 0.0;
};

/// Raised when a model (or an edit to one) breaks a structural invariant.
/// `invariant()` names the violated constraint.
class ModelInvariantError : public std::invalid_argument {
public:
    ModelInvariantError(std::string invariant, const std::string& message)
        : std::invalid_argument(invariant + ": " + message), invariant_(std::move(invariant)) {}
    const std::string& invariant() const { return invariant_; }

private:
    std::string invariant_;
};

/// Raised when a model file cannot be read or parsed.
class ModelFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Geometric colour knowledge: hue bases, boundary angles and critical radii.
/// Construct through `make_model`, `load_model` or `parse_model`, which
/// validate every invariant and derive the hue intervals.
class ColorModel {
public:
    int version = 1;
    std::vector<ChromogenBase> bases;    // sorted by angle
    std::vector<double> boundaries;      // sorted ascending in [0, 360)
    double r1 = 0.0;
    double r2 = 0.0;
    double r2_prime = 0.0;
    double r3 = 0.0;
    double brown_lo = 0.0;
    double brown_hi = 90.0;
    double plateau_half_width = 0.0;

    /// One interval per boundary, aligned with `boundaries` (interval i
    /// starts at boundaries[i]).
    const std::vector<HueInterval>& intervals() const { return intervals_; }

    /// Index into intervals() of the interval holding `angle`. Intervals are
    /// half-open so a boundary belongs to the counterclockwise class.
    std::size_t interval_index(double angle) const;

    bool in_brown_sector(double angle) const { return angle >= brown_lo && angle <= brown_hi; }

    /// Checks all invariants and recomputes the intervals.
    void validate();

private:
    std::vector<HueInterval> intervals_;
};

/// Builds a validated model from its parts.
ColorModel make_model(std::vector<ChromogenBase> bases, std::vector<double> boundaries, double r1,
                      double r2, double r2_prime, double r3);

/// Serialises a model as JSON with fixed six-decimal numbers, so rebuilding
/// from identical input yields a byte-identical file.
std::string serialize_model(const ColorModel& m);
ColorModel parse_model(const std::string& json_text);

void save_model(const std::filesystem::path& path, const ColorModel& m);
ColorModel load_model(const std::filesystem::path& path);

/// User edits applied on top of a base model. Unset fields keep the base
/// value. Setting r2 alone moves r2' and r3 with it.
struct ModelOverrides {
    std::optional<std::vector<double>> boundaries;
    std::map<std::size_t, double> boundary_edits;  // index into sorted boundaries
    std::optional<double> r1;
    std::optional<double> r2;
    std::optional<double> r2_prime;
    std::optional<double> r3;
    std::optional<double> brown_lo;
    std::optional<double> brown_hi;
    std::optional<double> plateau_half_width;

    bool empty() const;
};

/// Returns a validated copy of `base` with the overrides applied. The base
/// model is never modified. Throws ModelInvariantError.
ColorModel apply_overrides(const ColorModel& base, const ModelOverrides& o);

/// Hex SHA-256 digest of the serialised model.
std::string model_hash(const ColorModel& m);

}  // namespace cw
