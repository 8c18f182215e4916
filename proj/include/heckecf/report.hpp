#pragma once

#include <string>
#include <string_view>

#include "heckecf/measures.hpp"
#include "heckecf/minkowski.hpp"

namespace heckecf {

enum class Format { Text, Json, Csv, Svg };
Format parse_format(std::string_view s);
const char* to_string(Format f);

/// Version stamped into every JSON document as "format_version".
inline constexpr int kFormatVersion = 1;

/// Thrown for well-formed requests a format cannot express (e.g. svg of a
/// field); mapped to a usage error by the C API.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses an element, optionally prefixed with its field: "m=7:L-1". Without
/// a prefix the element lives in Q(lambda_m) for the given default m.
AlgebraicNumber parse_point(int default_m, std::string_view text);

/// Named seed presets; "cubic" is lambda_7 - 1.
std::string seed_preset(std::string_view name);

std::string report_field(int m, int digits, Format f);
std::string report_generators(int m, Format f);
std::string report_embed(int m, std::string_view word, std::string_view target, Format f);
std::string report_tree_validate(int m, std::string_view tree, Format f);
std::string report_map_table(const DecoratedTree& tree, Format f);
std::string report_attractor(const AttractorResult& r, int digits, Format f);
std::string report_dual(const AttractorResult& r, int digits, Format f);
std::string report_census(AttractorResult& r, Format f);
std::string report_minkowski_eval(int m, std::string_view x, int n, int samples, Format f);
std::string report_minkowski_invert(int m, std::string_view y, int n, int digits, Format f);
std::string report_hoelder(int m, int digits, Format f);
std::string report_jsr(int m, int n_max, int witness, Format f);

struct DensityRequest {
  Picture picture = Picture::Unit;
  int level = kDefaultMaxLevel;
  double lo = 0.0, hi = 0.0;  ///< sample range; hi <= lo selects the natural range
  int samples = 20;
};
std::string report_density(const DecoratedTree& tree, const DensityRequest& req, Format f);
std::string report_transfer_check(const DecoratedTree& tree, const DensityRequest& req, Side side, Format f);

struct OrbitRequest {
  std::string seed_x = "m=7:L-1";
  std::string seed_y = "1/2";
  size_t count = 8000;
  OrbitOptions options;
  int digits = 17;
};
std::string report_orbit(const DecoratedTree& tree, const OrbitRequest& req, Format f);
std::string report_poincare(const DecoratedTree& tree, int n, Format f);

}  // namespace heckecf
