#include <doctest.h>

#include <json.hpp>

#include <regex>
#include <set>

#include "heckecf/report.hpp"

using namespace heckecf;
using nlohmann::json;

namespace {

size_t count(const std::string& s, const std::string& needle) {
  size_t n = 0;
  for (size_t p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("format names") {
  CHECK(parse_format("svg") == Format::Svg);
  CHECK(std::string(to_string(Format::Csv)) == "csv");
  CHECK_THROWS_AS(parse_format("xml"), UsageError);
}

TEST_CASE("json documents carry the format version and exact forms") {
  const json j = json::parse(report_attractor(attractor_cover(parse_tree(5, "1,2f,3,4f")), 20, Format::Json));
  CHECK(j["format_version"] == kFormatVersion);
  CHECK(j["status"] == "ExactFixedPoint");
  REQUIRE(j["cover"].size() == 2);
  CHECK(j["cover"][1]["lo"]["coeffs"] == json::array({"-1/5", "2/5"}));
  CHECK(j["cover"][1]["lo"]["text"] == "-1/5 + 2/5*L");
  CHECK(j["cover"][1]["lo"]["decimal"].get<std::string>().substr(0, 12) == "0.4472135954");
  for (const std::string& s : {report_field(7, 20, Format::Json), report_generators(5, Format::Json),
                               report_hoelder(3, 20, Format::Json), report_poincare(parse_tree(3, "1,2"), 3, Format::Json)})
    CHECK(json::parse(s)["format_version"] == kFormatVersion);
}

TEST_CASE("output is deterministic") {
  const DecoratedTree t = parse_tree(3, "111,112,12,21,221,222");
  const AttractorResult r = attractor_cover(t, 4);
  for (Format f : {Format::Text, Format::Json, Format::Csv, Format::Svg}) {
    CHECK(report_attractor(r, 17, f) == report_attractor(attractor_cover(t, 4), 17, f));
    CHECK(report_map_table(t, f) == report_map_table(t, f));
  }
  OrbitRequest req;
  req.count = 50;
  CHECK(report_orbit(t, req, Format::Csv) == report_orbit(t, req, Format::Csv));
}

TEST_CASE("unsupported formats are usage errors") {
  CHECK_THROWS_AS(report_field(5, 10, Format::Svg), UsageError);
  CHECK_THROWS_AS(report_hoelder(5, 10, Format::Svg), UsageError);
  CHECK_THROWS_AS(report_embed(5, "12", "Q", Format::Text), UsageError);
}

TEST_CASE("domain errors propagate") {
  CHECK_THROWS_AS(report_tree_validate(3, "1", Format::Text), DomainError);
  CHECK_THROWS_AS(report_minkowski_invert(3, "3/2", 5, 10, Format::Text), DomainError);
}

TEST_CASE("svg graph of the Farey map") {
  const std::string svg = report_map_table(parse_tree(3, "1,2f"), Format::Svg);
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(count(svg, "<polyline") == 2);
  // 512 samples per branch.
  const size_t first = svg.find("points=\"");
  const size_t end = svg.find('"', first + 8);
  CHECK(count(svg.substr(first, end - first), ",") == 512);
}

TEST_CASE("svg of an empty orbit has axes only") {
  OrbitRequest req;
  req.count = 0;
  const std::string svg = report_orbit(parse_tree(3, "1,2f"), req, Format::Svg);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(count(svg, "<circle") == 0);
  CHECK(count(svg, "<text") > 0);
}

TEST_CASE("svg of the golden-ratio dual map") {
  const std::string svg = report_dual(attractor_cover(parse_tree(5, "1,2f,3,4f")), 17, Format::Svg);
  // Four branches, each over two disjoint base intervals.
  CHECK(count(svg, "<polyline") == 8);
  std::set<std::string> colors;
  std::regex stroke("stroke=\"(#[0-9a-f]{6})\"");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), stroke); it != std::sregex_iterator(); ++it)
    colors.insert((*it)[1]);
  CHECK(colors.size() == 4);
}

TEST_CASE("stacked cover bars") {
  const AttractorResult r = attractor_cover(parse_tree(3, "111,112,12,21,221,222"), 3);
  const std::string svg = report_attractor(r, 17, Format::Svg);
  size_t parts = 0;
  for (const IntervalUnion& u : r.covers) parts += u.size();
  CHECK(count(svg, "<rect") == parts + 2);  // plus background and frame
}

TEST_CASE("orbit csv rows") {
  OrbitRequest req;
  req.count = 120;
  const std::string csv = report_orbit(parse_tree(3, "111,112,12,21,221,222"), req, Format::Csv);
  CHECK(count(csv, "\n") == 121);
  CHECK(csv.rfind("x,y\n", 0) == 0);
}

TEST_CASE("density csv") {
  DensityRequest req;
  req.samples = 10;
  const std::string csv = report_density(jump_tree(1), req, Format::Csv);
  CHECK(csv.rfind("x,h,error_bound\n", 0) == 0);
  CHECK(count(csv, "\n") == 11);
}

TEST_CASE("points and presets") {
  CHECK(parse_point(3, "m=7:L-1").field()->m() == 7);
  CHECK(parse_point(5, "1/L").field()->m() == 5);
  CHECK(seed_preset("cubic") == "m=7:L-1");
  CHECK_THROWS_AS(seed_preset("quartic"), UsageError);
}

TEST_CASE("embed report") {
  const json j = json::parse(report_embed(5, "f2", "B", Format::Json));
  CHECK(j["normal_form"] == "3f");
  CHECK(j["matrix"]["det"] == -1);
  const json c = json::parse(report_embed(5, "2", "C", Format::Json));
  CHECK(c["affine"]["a"]["exact"] == "1/4");
  CHECK(c["affine"]["b"]["exact"] == "1/4");
}
