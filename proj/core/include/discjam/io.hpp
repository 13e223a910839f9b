#pragma once

#include "discjam/configuration.hpp"
#include "discjam/construction.hpp"
#include "discjam/metropolis.hpp"
#include "discjam/verifier.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace discjam {

inline constexpr int config_schema_version = 1;

std::string config_to_json(const Configuration& config);
// Throws SchemaError naming the offending field.
Configuration config_from_json(const std::string& text);

void write_config(const Configuration& config, const std::string& path);
Configuration read_config(const std::string& path);

// "radius,<r>" then "x,y" and one row per center, shortest round-trip decimals.
std::string config_to_csv(const Configuration& config);
void write_csv(const Configuration& config, const std::string& path);

struct RenderOptions {
    bool contacts = false;
    bool jamming = false;
    double width_px = 800.0;
    Tolerances tol;
};

std::string render_svg(const Configuration& config, const RenderOptions& options = {});

// Resolved run parameters, echoed at the top of every report.
using ParamValue = std::variant<bool, std::int64_t, std::uint64_t, double, std::string>;
using ParamList = std::vector<std::pair<std::string, ParamValue>>;

std::string report_json(const JammingReport& report, const ParamList& params = {});
std::string report_json(const ChainStats& stats, const ParamList& params = {});
std::string report_json(const AssemblyMetrics& metrics, const ParamList& params = {});
std::string report_json(const std::vector<EscapeRow>& rows, const ParamList& params = {});

template <class Report>
void write_report(const Report& report, const std::string& path, const ParamList& params = {});

// Writes text to path, raising IoError with the path on failure.
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

// Shortest decimal that reads back to the same double.
std::string format_shortest(double v);

} // namespace discjam
