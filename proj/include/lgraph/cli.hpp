#pragma once

// Command implementations behind the lgraph executable. Each command returns
// a JSON report plus an exit code; the executable only parses flags and
// prints.

#include <lgraph/envelope_geometry.hpp>
#include <lgraph/rational.hpp>

#include <json.hpp>

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace lgraph::cli {

using json = nlohmann::ordered_json;

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int malformed = 1;
inline constexpr int indeterminate = 2;
/// The computation disagrees with the predicted outcome.
inline constexpr int contradiction = 3;
}  // namespace exit_code

enum class Format { json, text };

struct RunConfig {
    int cap = default_cap;
    /// Working order; each command has its own default when unset.
    std::optional<int> order;
    /// Grid points per axis.
    std::optional<std::array<int, 2>> resolution;
    /// xi_min, xi_max, t_min, t_max.
    std::optional<std::array<double, 4>> domain;
    std::filesystem::path out = ".";
    std::uint64_t seed = 1;
    Format format = Format::json;
};

struct Outcome {
    int exit_code = exit_code::ok;
    json report;
};

/// Grid from the config, falling back to a square of the given half width.
GridSpec resolve_grid(const RunConfig& config, double default_half_width, int default_resolution);
int resolve_order(const RunConfig& config, int default_order);

/// Input is {"u": poly} or {"k0", "k1", "alpha"[, "higher"]}.
Outcome classify(const json& input, const RunConfig& config);

enum class VerifyKind { eq2, fold_sufficiency, miniversal };

VerifyKind parse_verify_kind(std::string_view name);
std::string to_string(VerifyKind kind);

struct VerifyParams {
    VerifyKind kind = VerifyKind::eq2;
    Rational a{1, 5};
    Rational b{1};
};

Outcome verify(const VerifyParams& params, const RunConfig& config);

/// Input is {"u": poly} for the family (xi + t, u) or {"x": poly, "y": poly}.
/// Writes envelope.svg (and lift.obj when asked) under config.out.
Outcome envelope(const json& input, const RunConfig& config, bool write_obj);

struct SweepParams {
    Rational a{-1, 2};
    Rational b{1};
    DeformationMode mode = DeformationMode::beaks;
    double lambda_min = -0.25;
    double lambda_max = 0.25;
    int frames = 11;
    double mu1 = 0.0;
    double mu2 = 0.0;
};

/// Frame SVGs plus manifest.json under config.out.
Outcome sweep(const SweepParams& params, const RunConfig& config);

/// Randomized ring, Leibniz, chain-rule and functoriality checks on jets at
/// config.cap, seeded by config.seed.
Outcome properties(int count, const RunConfig& config);

// --- JSON helpers ----------------------------------------------------------

/// Inline JSON when the text starts with '{', otherwise a file path.
json read_json_argument(std::string_view argument);

/// Exact rational from a JSON string ("1/5", "0.25") or number.
Rational rational_field(const json& object, const std::string& key);

/// "key: value" lines, nested keys joined with '.'.
std::string render_text(const json& report);

std::string render(const json& report, Format format);

/// Writes `content` to `path`, creating parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace lgraph::cli
