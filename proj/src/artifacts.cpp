#include "sumpaths/artifacts.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace sumpaths::artifacts {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void Metadata::add(std::string key, double value) {
  params.emplace_back(std::move(key), format_double(value));
}

namespace {

std::string meta_comment_line(const Metadata& meta) {
  std::string s = "tool=sumpaths version=";
  s += kToolVersion;
  s += " seed=" + std::to_string(meta.seed);
  for (const auto& [k, v] : meta.params) s += " " + k + "=" + v;
  return s;
}

std::string csv_header(const Metadata& meta) {
  return "# " + meta_comment_line(meta) + "\n";
}

}  // namespace

std::string svg_path(std::span<const cplx> vertices, const Metadata& meta) {
  if (vertices.empty()) {
    throw std::invalid_argument("svg_path: empty vertex list");
  }
  double min_x = vertices[0].real(), max_x = min_x;
  double min_y = vertices[0].imag(), max_y = min_y;
  for (const cplx& z : vertices) {
    min_x = std::min(min_x, z.real());
    max_x = std::max(max_x, z.real());
    min_y = std::min(min_y, z.imag());
    max_y = std::max(max_y, z.imag());
  }
  double w = max_x - min_x, h = max_y - min_y;
  if (w <= 0.0) w = 1.0;
  if (h <= 0.0) h = 1.0;
  // 5% margin on each side, uniform scale to an 800px-wide canvas.
  const double mx = 0.05 * w, my = 0.05 * h;
  const double x0 = min_x - mx, y1 = max_y + my;
  const double span_x = w + 2 * mx, span_y = h + 2 * my;
  const double scale = 800.0 / span_x;
  const double width = 800.0, height = span_y * scale;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<!-- " + meta_comment_line(meta) + " -->\n";
  out += "<!-- transform (y axis up): X = " + format_double(scale) +
         " * (x - " + format_double(x0) + "), Y = " + format_double(scale) +
         " * (" + format_double(y1) + " - y) -->\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         format_double(width) + "\" height=\"" + format_double(height) +
         "\" viewBox=\"0 0 " + format_double(width) + " " +
         format_double(height) + "\">\n";
  out += "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"0.6\" points=\"";
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const double px = scale * (vertices[i].real() - x0);
    const double py = scale * (y1 - vertices[i].imag());
    if (i) out += " ";
    out += format_double(px) + "," + format_double(py);
  }
  out += "\"/>\n</svg>\n";
  return out;
}

std::string csv_path(std::span<const cplx> vertices, const Metadata& meta) {
  std::string out = csv_header(meta);
  out += "index,t,re,im\n";
  const std::size_t n = vertices.size();
  const double segs = n > 1 ? static_cast<double>(n - 1) : 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    out += std::to_string(i) + "," + format_double(static_cast<double>(i) / segs) +
           "," + format_double(vertices[i].real()) + "," +
           format_double(vertices[i].imag()) + "\n";
  }
  return out;
}

std::string csv_series(std::span<const double> t, std::span<const cplx> values,
                       const Metadata& meta) {
  if (t.size() != values.size()) {
    throw std::invalid_argument("csv_series: length mismatch");
  }
  std::string out = csv_header(meta);
  out += "t,re,im\n";
  for (std::size_t i = 0; i < t.size(); ++i) {
    out += format_double(t[i]) + "," + format_double(values[i].real()) + "," +
           format_double(values[i].imag()) + "\n";
  }
  return out;
}

std::string csv_tails(std::span<const double> thresholds,
                      std::span<const double> probabilities,
                      std::span<const std::uint64_t> exceedances,
                      const Metadata& meta) {
  if (thresholds.size() != probabilities.size() ||
      thresholds.size() != exceedances.size()) {
    throw std::invalid_argument("csv_tails: length mismatch");
  }
  std::string out = csv_header(meta);
  out += "threshold,probability,samples\n";
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    out += format_double(thresholds[i]) + "," +
           format_double(probabilities[i]) + "," +
           std::to_string(exceedances[i]) + "\n";
  }
  return out;
}

json base_record(const std::string& statistic, const Metadata& meta) {
  json rec;
  rec["statistic"] = statistic;
  rec["version"] = kToolVersion;
  rec["seed"] = meta.seed;
  json params = json::object();
  for (const auto& [k, v] : meta.params) params[k] = v;
  rec["parameters"] = params;
  return rec;
}

json complex_json(cplx z) {
  json j;
  j["re"] = z.real();
  j["im"] = z.imag();
  return j;
}

std::string dump_json(const json& record) { return record.dump(2) + "\n"; }

}  // namespace sumpaths::artifacts
