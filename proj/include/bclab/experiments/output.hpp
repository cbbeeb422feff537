#pragma once

#include "bclab/core/rational.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace bclab {

struct SeriesPoint {
  std::uint64_t n = 0;
  Rational value;
};

using Series = std::vector<SeriesPoint>;

struct NamedSeries {
  std::string name;
  Series points;
};

/// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

/// Header "n,value_num,value_den,value_float", one row per point.
std::string series_csv(const Series& series);

/// Self-contained SVG polyline of the float view of a series.
std::string series_svg(const Series& series, const std::string& title);

/// JSON text with two-space indent and a trailing newline.
std::string dump_json(const nlohmann::json& value);

/// Writes `content` to `path`, creating parent directories. Throws ResourceError.
void write_text(const std::string& path, const std::string& content);

enum class OutputFormat { csv, json, both };

OutputFormat parse_output_format(const std::string& text);

/// Writes `<stem>.json` (report) and `<stem>_<series>.csv` files into dir as
/// selected by format, plus `.svg` charts when requested. Returns the paths
/// written, in order.
std::vector<std::string> write_outputs(const std::string& dir, const std::string& stem,
                                       const nlohmann::json& report,
                                       const std::vector<NamedSeries>& series, OutputFormat format,
                                       bool svg);

}  // namespace bclab
