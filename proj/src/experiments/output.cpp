#include "bclab/experiments/output.hpp"

#include "bclab/core/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace bclab {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw ResourceError("float formatting failed");
  return std::string(buf, end);
}

std::string series_csv(const Series& series) {
  std::string out = "n,value_num,value_den,value_float\n";
  for (const auto& p : series) {
    out += std::to_string(p.n);
    out += ',';
    out += p.value.get_num().get_str();
    out += ',';
    out += p.value.get_den().get_str();
    out += ',';
    out += format_double(to_double(p.value));
    out += '\n';
  }
  return out;
}

namespace {

std::string escape_xml(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fixed(double v) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(2);
  s << v;
  return s.str();
}

}  // namespace

std::string series_svg(const Series& series, const std::string& title) {
  const double width = 640, height = 400, left = 70, right = 20, top = 40, bottom = 40;
  std::vector<std::pair<double, double>> pts;
  for (const auto& p : series) {
    double y = to_double(p.value);
    if (std::isfinite(y)) pts.emplace_back(static_cast<double>(p.n), y);
  }
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (!pts.empty()) {
    auto [xmin, xmax] = std::minmax_element(pts.begin(), pts.end());
    x0 = xmin->first;
    x1 = xmax->first;
    auto [ymin, ymax] = std::minmax_element(pts.begin(), pts.end(),
                                            [](const auto& a, const auto& b) { return a.second < b.second; });
    y0 = ymin->second;
    y1 = ymax->second;
  }
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * (width - left - right); };
  auto sy = [&](double y) { return height - bottom - (y - y0) / (y1 - y0) * (height - top - bottom); };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" viewBox=\"0 0 640 400\">\n";
  out += "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
  out += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" +
         escape_xml(title) + "</text>\n";
  out += "<rect x=\"70\" y=\"40\" width=\"550\" height=\"320\" fill=\"none\" stroke=\"black\"/>\n";
  auto label = [&](double x, double y, const std::string& anchor, const std::string& text) {
    out += "<text x=\"" + fixed(x) + "\" y=\"" + fixed(y) + "\" text-anchor=\"" + anchor +
           "\" font-family=\"sans-serif\" font-size=\"11\">" + escape_xml(text) + "</text>\n";
  };
  label(left - 4, top + 4, "end", format_double(y1));
  label(left - 4, height - bottom, "end", format_double(y0));
  label(left, height - bottom + 16, "start", format_double(x0));
  label(width - right, height - bottom + 16, "end", format_double(x1));
  out += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ' ';
    out += fixed(sx(pts[i].first)) + "," + fixed(sy(pts[i].second));
  }
  out += "\"/>\n</svg>\n";
  return out;
}

std::string dump_json(const nlohmann::json& value) { return value.dump(2) + "\n"; }

void write_text(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream f(p, std::ios::binary);
  if (!f) throw ResourceError("cannot open " + path + " for writing");
  f << content;
  if (!f) throw ResourceError("failed writing " + path);
}

OutputFormat parse_output_format(const std::string& text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  if (text == "both") return OutputFormat::both;
  throw ConfigError("unknown format '" + text + "' (csv, json or both)");
}

std::vector<std::string> write_outputs(const std::string& dir, const std::string& stem,
                                       const nlohmann::json& report,
                                       const std::vector<NamedSeries>& series, OutputFormat format,
                                       bool svg) {
  std::vector<std::string> written;
  auto path = [&](const std::string& name) { return (std::filesystem::path(dir) / name).string(); };
  if (format != OutputFormat::csv) {
    written.push_back(path(stem + ".json"));
    write_text(written.back(), dump_json(report));
  }
  for (const auto& s : series) {
    if (format != OutputFormat::json) {
      written.push_back(path(stem + "_" + s.name + ".csv"));
      write_text(written.back(), series_csv(s.points));
    }
    if (svg) {
      written.push_back(path(stem + "_" + s.name + ".svg"));
      write_text(written.back(), series_svg(s.points, stem + " " + s.name));
    }
  }
  return written;
}

}  // namespace bclab
