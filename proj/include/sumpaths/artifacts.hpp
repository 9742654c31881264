#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sumpaths/numeric.hpp"

namespace sumpaths::artifacts {

inline constexpr const char* kToolVersion = "0.1.0";

using json = nlohmann::ordered_json;

/// Provenance block embedded in every artifact: tool version, seed and
/// the full parameter set, in a fixed order so reruns are byte-identical.
struct Metadata {
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> params;

  void add(std::string key, std::string value) {
    params.emplace_back(std::move(key), std::move(value));
  }
  void add(std::string key, std::uint64_t value) {
    params.emplace_back(std::move(key), std::to_string(value));
  }
  void add(std::string key, double value);
};

/// Deterministic float formatting shared by all emitters ("%.12g").
std::string format_double(double v);

/// Polygonal path in the complex plane as an SVG document: one polyline,
/// mathematical y-axis up, viewBox enclosing all vertices with a 5%
/// margin; the data->pixel affine map is recorded in a comment.
std::string svg_path(std::span<const cplx> vertices, const Metadata& meta);

/// Path CSV: "index,t,re,im" rows, metadata as leading '#' comments.
std::string csv_path(std::span<const cplx> vertices, const Metadata& meta);

/// Series realization CSV: "t,re,im".
std::string csv_series(std::span<const double> t, std::span<const cplx> values,
                       const Metadata& meta);

/// Tail CSV: "threshold,probability,samples" (samples = exceedance count
/// at that threshold).
std::string csv_tails(std::span<const double> thresholds,
                      std::span<const double> probabilities,
                      std::span<const std::uint64_t> exceedances,
                      const Metadata& meta);

/// JSON record skeleton {statistic, version, seed, parameters:{...}};
/// callers append their values and dump with dump_json.
json base_record(const std::string& statistic, const Metadata& meta);

json complex_json(cplx z);

std::string dump_json(const json& record);

}  // namespace sumpaths::artifacts
