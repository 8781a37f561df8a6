#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "adjpair/model.hpp"
#include "adjpair/vishik.hpp"

namespace adjpair {

inline constexpr int kSchemaVersion = 1;
inline constexpr std::string_view kToolVersion = "0.1.0";

/// Parsed model file. The generator is validated only when the model is built.
struct ModelFile {
    std::string name;
    AtomGenerator generator;
    ModelVector xi;
    Tolerance tolerance;
    std::uint64_t seed = 42;
    /// Basis columns (u; v) of an extension subspace in kernel coordinates.
    std::optional<CMatrix> subspace;
};

/// Throws ParseError for malformed JSON and SchemaError for missing or
/// ill-typed fields.
ModelFile parse_model(std::string_view text);
/// Throws IoError when the file cannot be read.
ModelFile load_model(const std::filesystem::path& path);

struct Residual {
    std::string name;
    double value = 0.0;
    double bound = 0.0;

    bool operator==(const Residual&) const = default;
};

struct ErrorInfo {
    std::string kind;
    std::string module;
    std::string message;

    bool operator==(const ErrorInfo&) const = default;
};

struct RunReport {
    std::string tool_version{kToolVersion};
    std::string command;
    std::string model_name;
    std::string model_digest;
    /// "ok", "failed" (a mathematical verdict came out negative) or "error".
    std::string status = "ok";
    nlohmann::json verdicts = nlohmann::json::object();
    std::vector<Residual> residuals;
    std::optional<std::map<std::string, double>> timings_ms;
    std::optional<ErrorInfo> error;

    bool operator==(const RunReport&) const = default;
};

nlohmann::json to_json(const RunReport& report);
RunReport report_from_json(const nlohmann::json& j);
/// Pretty-printed JSON with sorted keys and a trailing newline.
std::string emit_report(const RunReport& report);
/// Throws ParseError or SchemaError.
RunReport parse_report(std::string_view text);

/// [re, im] pairs for complex values.
nlohmann::json complex_json(cplx z);

}  // namespace adjpair
