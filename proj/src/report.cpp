#include "heckecf/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace heckecf {
namespace {

using nlohmann::ordered_json;

std::string num(double v, int sig = 15) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", sig, v);
  return buf;
}

ordered_json json_double(double v) {
  if (std::isfinite(v)) return v;
  return num(v);
}

ordered_json exact_json(const AlgebraicNumber& a, int digits) {
  ordered_json coeffs = ordered_json::array();
  for (const Rational& c : a.coeffs()) coeffs.push_back(c.get_str());
  return {{"coeffs", coeffs}, {"text", a.to_string()}, {"decimal", to_float(a, digits).text}};
}

ordered_json rational_json(const Rational& q, int digits) {
  return {{"exact", q.get_str()}, {"decimal", format_decimal(q, digits)}};
}

ordered_json matrix_json(const GroupElement& g, int digits = 17) {
  return {{"det", g.det()},
          {"entries",
           {{exact_json(g.a(), digits), exact_json(g.b(), digits)}, {exact_json(g.c(), digits), exact_json(g.d(), digits)}}}};
}

ordered_json interval_json(const ClosedInterval& iv, int digits) {
  return {{"lo", exact_json(iv.lo, digits)}, {"hi", exact_json(iv.hi, digits)}};
}

ordered_json enclosure_json(const Interval& v, int digits) {
  return {{"lower", v.lower_string(digits)}, {"upper", v.upper_string(digits)}, {"mid", v.mid_string(digits)}};
}

std::string dump(ordered_json doc, std::string_view command) {
  ordered_json out;
  out["format_version"] = kFormatVersion;
  out["command"] = std::string(command);
  for (auto it = doc.begin(); it != doc.end(); ++it) out[it.key()] = it.value();
  return out.dump(2) + "\n";
}

[[noreturn]] void unsupported(Format f, std::string_view command) {
  throw UsageError(std::string("format ") + to_string(f) + " is not available for " + std::string(command));
}

std::string interval_text(const ClosedInterval& iv) {
  return "[" + iv.lo.to_string() + ", " + iv.hi.to_string() + "]";
}

// ---- minimal SVG writer ----------------------------------------------------

const char* const kPalette[] = {"#8c564b", "#d62728", "#1f77b4", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#17becf", "#e377c2", "#7f7f7f", "#bcbd22"};

class Svg {
 public:
  Svg(double xmin, double xmax, double ymin, double ymax) : x0_(xmin), x1_(xmax), y0_(ymin), y1_(ymax) {}

  double px(double x) const { return kMargin + (x - x0_) / (x1_ - x0_) * (kSize - 2 * kMargin); }
  double py(double y) const { return kSize - kMargin - (y - y0_) / (y1_ - y0_) * (kSize - 2 * kMargin); }

  void axes(const std::string& xlabel, const std::string& ylabel) {
    body_ << "<rect x=\"" << num(kMargin, 6) << "\" y=\"" << num(kMargin, 6) << "\" width=\""
          << num(kSize - 2 * kMargin, 6) << "\" height=\"" << num(kSize - 2 * kMargin, 6)
          << "\" fill=\"none\" stroke=\"#000\" stroke-width=\"1\"/>\n";
    label(px(x0_), kSize - kMargin + 16, num(x0_, 4), "middle");
    label(px(x1_), kSize - kMargin + 16, num(x1_, 4), "middle");
    label(kMargin - 6, py(y0_) + 4, num(y0_, 4), "end");
    label(kMargin - 6, py(y1_) + 4, num(y1_, 4), "end");
    label(kSize / 2, kSize - 8, xlabel, "middle");
    label(14, kSize / 2, ylabel, "middle");
  }

  void label(double x, double y, const std::string& text, const char* anchor) {
    body_ << "<text x=\"" << num(x, 6) << "\" y=\"" << num(y, 6) << "\" font-size=\"12\" text-anchor=\"" << anchor
          << "\">" << text << "</text>\n";
  }

  void polyline(const std::vector<std::pair<double, double>>& pts, const char* color) {
    if (pts.empty()) return;
    body_ << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < pts.size(); ++i) body_ << (i ? " " : "") << num(px(pts[i].first), 7) << "," << num(py(pts[i].second), 7);
    body_ << "\"/>\n";
  }

  void rect(double xa, double xb, double ya, double yb, const char* color) {
    const double left = px(xa), right = std::max(px(xb), left + 0.6);
    body_ << "<rect x=\"" << num(left, 7) << "\" y=\"" << num(py(yb), 7) << "\" width=\"" << num(right - left, 7)
          << "\" height=\"" << num(py(ya) - py(yb), 7) << "\" fill=\"" << color << "\"/>\n";
  }

  void dot(double x, double y, const char* color) {
    body_ << "<circle cx=\"" << num(px(x), 7) << "\" cy=\"" << num(py(y), 7) << "\" r=\"0.8\" fill=\"" << color
          << "\"/>\n";
  }

  std::string str() const {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
        << "\" viewBox=\"0 0 " << kSize << " " << kSize << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n"
        << body_.str() << "</svg>\n";
    return out.str();
  }

 private:
  static constexpr double kSize = 640;
  static constexpr double kMargin = 48;
  double x0_, x1_, y0_, y1_;
  std::ostringstream body_;
};

constexpr int kSamplesPerBranch = 512;

double apply(const Eigen::Matrix2d& g, double x) { return (g(0, 0) * x + g(0, 1)) / (g(1, 0) * x + g(1, 1)); }

Eigen::Matrix2d inverse_of(const GroupElement& g) { return g.inverse().to_matrix(); }

std::vector<std::pair<double, double>> sample_curve(const Eigen::Matrix2d& g, double a, double b, int n) {
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i < n; ++i) {
    const double x = n == 1 ? a : a + (b - a) * i / (n - 1);
    pts.emplace_back(x, apply(g, x));
  }
  return pts;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  const size_t dot = s.find('.');
  if (dot == std::string::npos) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw DomainError("not a rational number: \"" + s + "\"");
    q.canonicalize();
    return q;
  }
  const std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
  Integer den = 1;
  for (size_t i = 0; i < frac.size(); ++i) den *= 10;
  Integer n;
  if (n.set_str(whole.empty() || whole == "-" ? whole + "0" + frac : whole + frac, 10) != 0)
    throw DomainError("not a decimal number: \"" + s + "\"");
  Rational q(n, den);
  q.canonicalize();
  return q;
}

}  // namespace

Format parse_format(std::string_view s) {
  if (s == "text") return Format::Text;
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "svg") return Format::Svg;
  throw UsageError("unknown format \"" + std::string(s) + "\" (expected text, json, csv or svg)");
}

const char* to_string(Format f) {
  switch (f) {
    case Format::Text:
      return "text";
    case Format::Json:
      return "json";
    case Format::Csv:
      return "csv";
    case Format::Svg:
      return "svg";
  }
  return "text";
}

AlgebraicNumber parse_point(int default_m, std::string_view text) {
  int m = default_m;
  if (text.substr(0, 2) == "m=") {
    const size_t colon = text.find(':');
    if (colon == std::string_view::npos) throw DomainError("expected m=<k>:<expression>");
    m = std::stoi(std::string(text.substr(2, colon - 2)));
    text = text.substr(colon + 1);
  }
  return parse_algebraic(make_field(m), text);
}

std::string seed_preset(std::string_view name) {
  if (name == "cubic") return "m=7:L-1";
  throw UsageError("unknown seed preset \"" + std::string(name) + "\" (available: cubic)");
}

// ---------------------------------------------------------------------------

std::string report_field(int m, int digits, Format f) {
  const Field field = make_field(m);
  const AlgebraicNumber lam = AlgebraicNumber::lambda(field);
  const DecimalApprox approx = to_float(lam, digits);
  const RationalInterval enc = field->lambda_enclosure(64);
  switch (f) {
    case Format::Text: {
      std::ostringstream o;
      o << "m: " << m << "\n"
        << "minimal polynomial: " << field->minpoly_string() << "\n"
        << "degree: " << field->degree() << "\n"
        << "lambda: " << approx.text << "\n"
        << "lambda enclosure: [" << format_decimal(approx.lo, digits + 2) << ", " << format_decimal(approx.hi, digits + 2)
        << "]\n";
      return o.str();
    }
    case Format::Json: {
      ordered_json coeffs = ordered_json::array();
      for (const Integer& c : field->minpoly()) coeffs.push_back(c.get_str());
      return dump({{"m", m},
                   {"minpoly", {{"coeffs", coeffs}, {"text", field->minpoly_string()}}},
                   {"degree", field->degree()},
                   {"lambda", {{"decimal", approx.text},
                               {"lower", approx.lo.get_str()},
                               {"upper", approx.hi.get_str()}}},
                   {"isolating_interval", {enc.lo.get_str(), enc.hi.get_str()}}},
                  "field");
    }
    case Format::Csv: {
      std::ostringstream o;
      o << "m,degree,minpoly,lambda\n" << m << "," << field->degree() << ",\"" << field->minpoly_string() << "\","
        << approx.text << "\n";
      return o.str();
    }
    default:
      unsupported(f, "field");
  }
}

std::string report_generators(int m, Format f) {
  const Field field = make_field(m);
  std::vector<std::pair<std::string, GroupElement>> gens;
  for (const char* name : {"L", "S", "F", "R"}) gens.emplace_back(name, generator(field, parse_generator(name)));
  for (int j = 1; j < m; ++j) gens.emplace_back("A_" + std::to_string(j), a_digit(field, j));
  for (int j = 1; j < m; ++j) gens.emplace_back("B_" + std::to_string(j), embed_b(field, Word{{j}, false}));
  gens.emplace_back("B_f", embed_b(field, Word{{}, true}));
  switch (f) {
    case Format::Text: {
      std::ostringstream o;
      for (const auto& [name, g] : gens) o << name << " = " << g.to_string() << "  det " << g.det() << "\n";
      return o.str();
    }
    case Format::Json: {
      ordered_json arr = ordered_json::array();
      for (const auto& [name, g] : gens) arr.push_back({{"name", name}, {"matrix", matrix_json(g)}});
      return dump({{"m", m}, {"generators", arr}}, "generators");
    }
    case Format::Csv: {
      std::ostringstream o;
      o << "name,det,a,b,c,d\n";
      for (const auto& [name, g] : gens)
        o << name << "," << g.det() << ",\"" << g.a().to_string() << "\",\"" << g.b().to_string() << "\",\""
          << g.c().to_string() << "\",\"" << g.d().to_string() << "\"\n";
      return o.str();
    }
    default:
      unsupported(f, "generators");
  }
}

std::string report_embed(int m, std::string_view word_text, std::string_view target, Format f) {
  const Field field = make_field(m);
  const Word w = parse_word(m, word_text);
  const Word s = sharp(m, w);
  std::string t(target);
  for (char& c : t) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (t != "A" && t != "B" && t != "C") throw UsageError("embedding target must be A, B or C");
  ordered_json doc{{"m", m}, {"input", std::string(word_text)}, {"normal_form", to_string(m, w)},
                   {"sharp", to_string(m, s)}, {"level", w.level()}, {"target", t}};
  std::ostringstream text, csv;
  text << "normal form: " << to_string(m, w) << "\nsharp: " << to_string(m, s) << "\n";
  if (t == "C") {
    const AffineMap c = embed_c(m, w);
    doc["affine"] = {{"a", rational_json(c.a, 17)}, {"b", rational_json(c.b, 17)}};
    text << "C: x -> " << c.a.get_str() << "*x + " << c.b.get_str() << "\n";
    csv << "target,a,b\nC," << c.a.get_str() << "," << c.b.get_str() << "\n";
  } else {
    const GroupElement g = t == "A" ? embed_a(field, w) : embed_b(field, w);
    doc["matrix"] = matrix_json(g);
    text << t << ": " << g.to_string() << "  det " << g.det() << "\n";
    csv << "target,det,a,b,c,d\n"
        << t << "," << g.det() << ",\"" << g.a().to_string() << "\",\"" << g.b().to_string() << "\",\""
        << g.c().to_string() << "\",\"" << g.d().to_string() << "\"\n";
  }
  switch (f) {
    case Format::Text:
      return text.str();
    case Format::Json:
      return dump(doc, "embed");
    case Format::Csv:
      return csv.str();
    default:
      unsupported(f, "embed");
  }
}

std::string report_tree_validate(int m, std::string_view tree_text, Format f) {
  const DecoratedTree tree = parse_tree(m, tree_text);
  const std::vector<Word> sharps = tree.sharp_leaves();
  const SelfdualEvidence ev = selfdual_sufficient(tree);
  switch (f) {
    case Format::Text: {
      std::ostringstream o;
      o << "valid: yes\nm: " << m << "\nleaves: " << tree.to_string() << "\nsharp leaves: ";
      for (size_t i = 0; i < sharps.size(); ++i) o << (i ? "," : "") << to_string(m, sharps[i]);
      o << "\ncompleteness sum: 1\nselfduality evidence: " << to_string(ev) << "\n";
      return o.str();
    }
    case Format::Json: {
      ordered_json leaves = ordered_json::array();
      for (size_t i = 0; i < tree.size(); ++i)
        leaves.push_back({{"leaf", to_string(m, tree.leaves()[i])},
                          {"level", tree.leaves()[i].level()},
                          {"sharp", to_string(m, sharps[i])}});
      return dump({{"m", m}, {"valid", true}, {"leaves", leaves}, {"completeness_sum", "1"},
                   {"selfdual_evidence", to_string(ev)}},
                  "tree-validate");
    }
    case Format::Csv: {
      std::ostringstream o;
      o << "leaf,level,sharp\n";
      for (size_t i = 0; i < tree.size(); ++i)
        o << to_string(m, tree.leaves()[i]) << "," << tree.leaves()[i].level() << "," << to_string(m, sharps[i]) << "\n";
      return o.str();
    }
    default:
      unsupported(f, "tree-validate");
  }
}

std::string report_map_table(const DecoratedTree& tree, Format f) {
  const int m = tree.m();
  const FareyMap map(tree);
  const double top = unit_interval(tree.field()).hi.to_double();
  switch (f) {
    case Format::Text: {
      std::ostringstream o;
      for (size_t i = 0; i < map.branches().size(); ++i) {
        const FareyBranch& br = map.branches()[i];
        o << "branch " << i << ": leaf " << to_string(m, tree.leaves()[br.leaf]) << " on "
          << interval_text(br.domain) << "  B = " << br.element.to_string() << "\n";
      }
      return o.str();
    }
    case Format::Json: {
      ordered_json arr = ordered_json::array();
      for (size_t i = 0; i < map.branches().size(); ++i) {
        const FareyBranch& br = map.branches()[i];
        arr.push_back({{"index", i}, {"leaf", to_string(m, tree.leaves()[br.leaf])}, {"leaf_index", br.leaf},
                       {"domain", interval_json(br.domain, 17)}, {"matrix", matrix_json(br.element)}});
      }
      return dump({{"m", m}, {"tree", tree.to_string()}, {"branches", arr}}, "map-table");
    }
    case Format::Csv: {
      std::ostringstream o;
      o << "index,leaf,lo,hi,lo_exact,hi_exact\n";
      for (size_t i = 0; i < map.branches().size(); ++i) {
        const FareyBranch& br = map.branches()[i];
        o << i << "," << to_string(m, tree.leaves()[br.leaf]) << "," << num(br.domain.lo.to_double(), 17) << ","
          << num(br.domain.hi.to_double(), 17) << ",\"" << br.domain.lo.to_string() << "\",\""
          << br.domain.hi.to_string() << "\"\n";
      }
      return o.str();
    }
    case Format::Svg: {
      Svg svg(0, top, 0, top);
      svg.axes("x", "F(x)");
      for (size_t i = 0; i < map.branches().size(); ++i) {
        const FareyBranch& br = map.branches()[i];
        svg.polyline(sample_curve(inverse_of(br.element), br.domain.lo.to_double(), br.domain.hi.to_double(),
                                  kSamplesPerBranch),
                     kPalette[i % 10]);
      }
      return svg.str();
    }
  }
  unsupported(f, "map-table");
}

std::string report_attractor(const AttractorResult& r, int digits, Format f) {
  const int m = r.tree.m();
  switch (f) {
    case Format::Text: {
      std::ostringstream o;
      o << "tree: " << r.tree.to_string() << " (m=" << m << ")\nstatus: " << to_string(r.status)
        << "\nlevel: " << r.level << "\ncomponents: " << r.cover.size() << "\n";
      for (const ClosedInterval& iv : r.cover.parts())
        o << "  " << interval_text(iv) << "  ~ [" << to_float(iv.lo, digits).text << ", " << to_float(iv.hi, digits).text
          << "]\n";
      o << "history:";
      for (const auto& [k, c] : r.component_history) o << " " << k << ":" << c;
      o << "\n";
      return o.str();
    }
    case Format::Json: {
      ordered_json comps = ordered_json::array();
      for (const ClosedInterval& iv : r.cover.parts()) comps.push_back(interval_json(iv, digits));
      ordered_json hist = ordered_json::array();
      for (const auto& [k, c] : r.component_history) hist.push_back({{"level", k}, {"components", c}});
      return dump({{"m", m}, {"tree", r.tree.to_string()}, {"status", to_string(r.status)}, {"level", r.level},
                   {"cover", comps}, {"component_history", hist}},
                  "attractor");
    }
    case Format::Csv: {
      std::ostringstream o;
      o << "level,index,lo,hi,lo_exact,hi_exact\n";
      for (size_t k = 0; k < r.covers.size(); ++k)
        for (size_t i = 0; i < r.covers[k].size(); ++i) {
          const ClosedInterval& iv = r.covers[k].parts()[i];
          o << k << "," << i << "," << to_float(iv.lo, digits).text << "," << to_float(iv.hi, digits).text << ",\""
            << iv.lo.to_string() << "\",\"" << iv.hi.to_string() << "\"\n";
        }
      return o.str();
    }
    case Format::Svg: {
      const double top = unit_interval(r.tree.field()).hi.to_double();
      const double levels = static_cast<double>(r.covers.size());
      Svg svg(0, top, 0, levels);
      svg.axes("y", "level");
      for (size_t k = 0; k < r.covers.size(); ++k) {
        const double row = levels - 1 - static_cast<double>(k);
        for (const ClosedInterval& iv : r.covers[k].parts())
          svg.rect(iv.lo.to_double(), iv.hi.to_double(), row + 0.15, row + 0.85, kPalette[k % 10]);
      }
      return svg.str();
    }
  }
  unsupported(f, "attractor");
}

std::string report_dual(const AttractorResult& r, int digits, Format f) {
  const int m = r.tree.m();
  const DualMap dual(r.tree, r);
  switch (f) {
    case Format::Text: {
      std::ostringstream o;
      o << "cover status: " << to_string(r.status) << " at level " << r.level << "\n";
      for (const DualBranch& br : dual.branches()) {
        o << "branch " << br.leaf << ": B_" << to_string(m, br.word) << " = " << br.element.to_string()
          << "\n  inverse on";
        for (const ClosedInterval& iv : br.domain_union.parts()) o << " " << interval_text(iv);
        o << "\n";
      }
      return o.str();
    }
    case Format::Json: {
      ordered_json arr = ordered_json::array();
      for (const DualBranch& br : dual.branches()) {
        ordered_json dom = ordered_json::array();
        for (const ClosedInterval& iv : br.domain_union.parts()) dom.push_back(interval_json(iv, digits));
        arr.push_back({{"leaf_index", br.leaf}, {"word", to_string(m, br.word)}, {"matrix", matrix_json(br.element)},
                       {"domain_hull", interval_json(br.domain, digits)}, {"domain", dom}});
      }
      return dump({{"m", m}, {"tree", r.tree.to_string()}, {"status", to_string(r.status)}, {"level", r.level},
                   {"branches", arr}},
                  "dual");
    }
    case Format::Csv: {
      std::ostringstream o;
      o << "leaf_index,word,lo,hi,lo_exact,hi_exact\n";
      for (const DualBranch& br : dual.branches())
        for (const ClosedInterval& iv : br.domain_union.parts())
          o << br.leaf << "," << to_string(m, br.word) << "," << to_float(iv.lo, digits).text << ","
            << to_float(iv.hi, digits).text << ",\"" << iv.lo.to_string() << "\",\"" << iv.hi.to_string() << "\"\n";
      return o.str();
    }
    case Format::Svg: {
      const double top = unit_interval(r.tree.field()).hi.to_double();
      Svg svg(0, top, 0, top);
      svg.axes("y", "F#(y)");
      for (const DualBranch& br : dual.branches()) {
        const Eigen::Matrix2d inv = inverse_of(br.element);
        const double total = br.domain_union.total_length(r.tree.field()).to_double();
        for (const ClosedInterval& iv : br.domain_union.parts()) {
          const double a = iv.lo.to_double(), b = iv.hi.to_double();
          const int n = total > 0 ? std::max(2, static_cast<int>(std::lround(kSamplesPerBranch * (b - a) / total))) : 1;
          svg.polyline(sample_curve(inv, a, b, n), kPalette[br.leaf % 10]);
        }
      }
      return svg.str();
    }
  }
  unsupported(f, "dual");
}

std::string report_census(AttractorResult& r, Format f) {
  const Census c = component_census(r);
  std::vector<AlgebraicNumber> overlaps;
  for (size_t k = 0; k < r.covers.size(); ++k) overlaps.push_back(overlap_measure(r.tree, r, static_cast<int>(k)));
  switch (f) {
    case Format::Text: {
      std::ostringstream o;
      o << "tree: " << r.tree.to_string() << " (m=" << r.tree.m() << ")\n";
      for (size_t k = 0; k < c.counts.size(); ++k)
        o << "level " << c.counts[k].first << ": " << c.counts[k].second << " components ("
          << c.point_counts[k].second << " points), overlap " << overlaps[k].to_string() << "\n";
      o << "stabilized: " << (c.stabilized ? "yes" : "no") << "\nhint: " << to_string(c.hint)
        << " (finite-level evidence, not a proof)\n";
      return o.str();
    }
    case Format::Json: {
      ordered_json levels = ordered_json::array();
      for (size_t k = 0; k < c.counts.size(); ++k)
        levels.push_back({{"level", c.counts[k].first}, {"components", c.counts[k].second},
                          {"points", c.point_counts[k].second}, {"overlap", exact_json(overlaps[k], 17)}});
      return dump({{"m", r.tree.m()}, {"tree", r.tree.to_string()}, {"levels", levels}, {"stabilized", c.stabilized},
                   {"hint", to_string(c.hint)}, {"evidence_only", true}},
                  "census");
    }
    case Format::Csv: {
      std::ostringstream o;
      o << "level,components,points,overlap\n";
      for (size_t k = 0; k < c.counts.size(); ++k)
        o << c.counts[k].first << "," << c.counts[k].second << "," << c.point_counts[k].second << ","
          << num(overlaps[k].to_double(), 17) << "\n";
      return o.str();
    }
    default:
      unsupported(f, "census");
  }
}

std::string report_minkowski_eval(int m, std::string_view x_text, int n, int samples, Format f) {
  const Field field = make_field(m);
  Rational bound = 1;
  for (int i = 0; i < n; ++i) bound /= (m - 1);
  if (samples > 0) {
    const AlgebraicNumber top = unit_interval(field).hi;
    std::vector<std::pair<AlgebraicNumber, Rational>> rows;
    for (int k = 0; k <= samples; ++k) {
      AlgebraicNumber x = top * (Rational(k) / samples);
      Rational q = minkowski_evaluate(field, x, n);
      rows.emplace_back(std::move(x), std::move(q));
    }
    switch (f) {
      case Format::Csv:
      case Format::Text: {
        std::ostringstream o;
        o << "x,M\n";
        for (const auto& [x, q] : rows) o << num(x.to_double(), 17) << "," << format_decimal(q, 17) << "\n";
        return o.str();
      }
      case Format::Json: {
        ordered_json arr = ordered_json::array();
        for (const auto& [x, q] : rows) arr.push_back({{"x", exact_json(x, 17)}, {"M", rational_json(q, 17)}});
        return dump({{"m", m}, {"depth", n}, {"error_bound", bound.get_str()}, {"table", arr}}, "minkowski-eval");
      }
      case Format::Svg: {
        Svg svg(0, top.to_double(), 0, 1);
        svg.axes("x", "M(x)");
        std::vector<std::pair<double, double>> pts;
        for (const auto& [x, q] : rows) pts.emplace_back(x.to_double(), q.get_d());
        svg.polyline(pts, kPalette[2]);
        return svg.str();
      }
    }
  }
  const AlgebraicNumber x = parse_point(m, x_text);
  const DigitStream ds = minkowski_digits(field, x, n);
  const Rational q = minkowski_evaluate(field, x, n);
  std::string digit_text;
  for (size_t i = 0; i < ds.digits.size(); ++i) digit_text += (i && m > 10 ? "." : "") + std::to_string(ds.digits[i]);
  switch (f) {
    case Format::Text: {
      std::ostringstream o;
      o << "x: " << x.to_string() << "\ndigits: " << digit_text << (ds.exact_tail ? " (constant tail)" : "")
        << "\nM(x) ~ " << q.get_str() << " = " << format_decimal(q, 20) << "\nerror bound: " << bound.get_str() << "\n";
      return o.str();
    }
    case Format::Json:
      return dump({{"m", m}, {"x", exact_json(x, 17)}, {"depth", n}, {"digits", ds.digits},
                   {"exact_tail", ds.exact_tail}, {"value", rational_json(q, 20)},
                   {"error_bound", bound.get_str()}},
                  "minkowski-eval");
    case Format::Csv: {
      std::ostringstream o;
      o << "x,M,error_bound\n" << num(x.to_double(), 17) << "," << format_decimal(q, 20) << "," << bound.get_str() << "\n";
      return o.str();
    }
    default:
      unsupported(f, "minkowski-eval");
  }
}

std::string report_minkowski_invert(int m, std::string_view y_text, int n, int digits, Format f) {
  const Field field = make_field(m);
  const Rational y = parse_rational(y_text);
  const ClosedInterval iv = minkowski_invert(field, y, n);
  switch (f) {
    case Format::Text: {
      std::ostringstream o;
      o << "y: " << y.get_str() << "\nbracket: " << interval_text(iv) << "\n  ~ [" << to_float(iv.lo, digits).text
        << ", " << to_float(iv.hi, digits).text << "]\nwidth: " << to_float(iv.length(), 6).text << "\n";
      return o.str();
    }
    case Format::Json:
      return dump({{"m", m}, {"y", y.get_str()}, {"depth", n}, {"bracket", interval_json(iv, digits)},
                   {"width", exact_json(iv.length(), 6)}},
                  "minkowski-invert");
    case Format::Csv: {
      std::ostringstream o;
      o << "y,lo,hi,lo_exact,hi_exact\n"
        << y.get_str() << "," << to_float(iv.lo, digits).text << "," << to_float(iv.hi, digits).text << ",\""
        << iv.lo.to_string() << "\",\"" << iv.hi.to_string() << "\"\n";
      return o.str();
    }
    default:
      unsupported(f, "minkowski-invert");
  }
}

std::string report_hoelder(int m, int digits, Format f) {
  const Field field = make_field(m);
  const unsigned bits = static_cast<unsigned>(digits * 3.33) + 64;
  const HoelderData h = hoelder(field, bits);
  switch (f) {
    case Format::Text: {
      std::ostringstream o;
      o << "m: " << m << "\nt = |A_" << m / 2 << "|_F^2 = " << h.t.to_string() << "\nrho^2 = (t + sqrt(t^2 - 4))/2 ~ "
        << h.rho_sq.mid_string(digits) << "\nrho ~ " << h.rho.mid_string(digits) << "\nalpha ~ "
        << h.alpha.mid_string(digits) << "\n";
      return o.str();
    }
    case Format::Json:
      return dump({{"m", m}, {"generator", m / 2}, {"t", exact_json(h.t, digits)},
                   {"rho_sq", {{"formula", "(t + sqrt(t^2 - 4))/2"}, {"enclosure", enclosure_json(h.rho_sq, digits)}}},
                   {"rho", enclosure_json(h.rho, digits)}, {"alpha", enclosure_json(h.alpha, digits)}},
                  "hoelder");
    case Format::Csv: {
      std::ostringstream o;
      o << "m,t,rho,alpha\n" << m << ",\"" << h.t.to_string() << "\"," << h.rho.mid_string(digits) << ","
        << h.alpha.mid_string(digits) << "\n";
      return o.str();
    }
    default:
      unsupported(f, "hoelder");
  }
}

std::string report_jsr(int m, int n_max, int witness, Format f) {
  const Field field = make_field(m);
  const JsrBounds b = jsr_bruteforce(field, n_max);
  const HoelderData h = hoelder(field);
  std::vector<AlgebraicNumber> ts;
  for (int j = 1; j < m; ++j) ts.push_back(frobenius_sq(a_digit(field, j)));
  bool maximal = true;
  for (const AlgebraicNumber& t : ts) maximal = maximal && t <= h.t;
  std::vector<WitnessRow> rows;
  if (witness > 0) rows = optimality_witness(field, witness);
  switch (f) {
    case Format::Text: {
      std::ostringstream o;
      o << "m: " << m << "  n_max: " << n_max << "  products: " << b.products << "\nlower: " << num(b.lower, 17)
        << " (length " << b.lower_length << ")\nupper: " << num(b.upper, 17) << " (length " << b.upper_length
        << ")\nrho: " << h.rho.mid_string(17) << "\nA_" << m / 2 << " has maximal norm: " << (maximal ? "yes" : "no")
        << "\n";
      for (const WitnessRow& r : rows)
        o << "k=" << r.k << " ratio(alpha)=" << num(r.ratio_alpha, 10) << " ratio(alpha+0.05)=" << num(r.ratio_alpha_plus, 10)
          << "\n";
      return o.str();
    }
    case Format::Json: {
      ordered_json tv = ordered_json::array();
      for (int j = 1; j < m; ++j) tv.push_back({{"j", j}, {"t", exact_json(ts[static_cast<size_t>(j - 1)], 17)}});
      ordered_json wt = ordered_json::array();
      for (const WitnessRow& r : rows)
        wt.push_back({{"k", r.k}, {"cylinder", interval_json(r.cylinder, 17)}, {"length", exact_json(r.length, 17)},
                      {"m_increment", r.m_increment.get_str()}, {"ratio_alpha", json_double(r.ratio_alpha)},
                      {"ratio_alpha_plus", json_double(r.ratio_alpha_plus)}});
      return dump({{"m", m}, {"n_max", n_max}, {"products", b.products}, {"lower", b.lower},
                   {"lower_length", b.lower_length}, {"upper", b.upper}, {"upper_length", b.upper_length},
                   {"rho", enclosure_json(h.rho, 17)}, {"t_values", tv}, {"maximal", maximal}, {"witness", wt}},
                  "jsr");
    }
    case Format::Csv: {
      std::ostringstream o;
      if (rows.empty()) {
        o << "m,n_max,lower,upper,rho\n"
          << m << "," << n_max << "," << num(b.lower, 17) << "," << num(b.upper, 17) << "," << h.rho.mid_string(17) << "\n";
      } else {
        o << "k,length,m_increment,ratio_alpha,ratio_alpha_plus\n";
        for (const WitnessRow& r : rows)
          o << r.k << "," << num(r.length.to_double(), 17) << "," << r.m_increment.get_str() << ","
            << num(r.ratio_alpha, 17) << "," << num(r.ratio_alpha_plus, 17) << "\n";
      }
      return o.str();
    }
    default:
      unsupported(f, "jsr");
  }
}

namespace {

std::pair<double, double> natural_range(const DensityContext& ctx, const DensityRequest& req) {
  if (req.hi > req.lo) return {req.lo, req.hi};
  if (ctx.picture() == Picture::Unit) return {0.0, 1.0 / ctx.lambda()};
  return {0.0, 10.0};
}

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> xs;
  for (int k = 0; k < n; ++k) xs.push_back(lo + (hi - lo) * (k + 0.5) / n);
  return xs;
}

}  // namespace

std::string report_density(const DecoratedTree& tree, const DensityRequest& req, Format f) {
  if (req.samples < 1) throw UsageError("samples must be positive");
  const DensityContext ctx(tree, req.picture, req.level);
  const auto [lo, hi] = natural_range(ctx, req);
  std::vector<std::tuple<double, double, double>> rows;
  for (double x : grid(lo, hi, req.samples)) {
    const DensityValue v = mu_density(ctx, x, req.level);
    rows.emplace_back(x, v.value, v.error_bound);
  }
  switch (f) {
    case Format::Text:
    case Format::Csv: {
      std::ostringstream o;
      o << "x,h,error_bound\n";
      for (const auto& [x, h, e] : rows) o << num(x, 17) << "," << num(h, 17) << "," << num(e, 17) << "\n";
      return o.str();
    }
    case Format::Json: {
      ordered_json arr = ordered_json::array();
      for (const auto& [x, h, e] : rows) arr.push_back({{"x", x}, {"h", h}, {"error_bound", e}});
      return dump({{"m", tree.m()}, {"tree", tree.to_string()}, {"picture", to_string(req.picture)},
                   {"level", req.level}, {"density", arr}},
                  "density");
    }
    case Format::Svg: {
      double ymax = 0;
      for (const auto& r : rows) ymax = std::max(ymax, std::get<1>(r));
      Svg svg(lo, hi, 0, ymax > 0 ? ymax : 1);
      svg.axes("x", "h(x)");
      std::vector<std::pair<double, double>> pts;
      for (const auto& [x, h, e] : rows) pts.emplace_back(x, h);
      svg.polyline(pts, kPalette[2]);
      return svg.str();
    }
  }
  unsupported(f, "density");
}

std::string report_transfer_check(const DecoratedTree& tree, const DensityRequest& req, Side side, Format f) {
  if (req.samples < 1) throw UsageError("samples must be positive");
  const DensityContext ctx(tree, req.picture, req.level);
  std::vector<double> pts;
  if (side == Side::Forward) {
    const auto [lo, hi] = natural_range(ctx, req);
    pts = grid(lo, hi, req.samples);
  } else {
    // Interior points of the unit-picture cover, mapped to the picture.
    const IntervalUnion& cover = ctx.attractor().cover;
    const ClosedInterval hull = cover.hull();
    for (double y : grid(hull.lo.to_double(), hull.hi.to_double(), req.samples)) {
      bool inside = false;
      for (const ClosedInterval& iv : cover.parts())
        if (iv.lo.to_double() < y && y < iv.hi.to_double()) inside = true;
      if (!inside) continue;
      pts.push_back(ctx.picture() == Picture::Unit ? y : y / (1.0 - ctx.lambda() * y));
    }
  }
  std::vector<std::pair<double, double>> rows;
  double worst = 0;
  for (double p : pts) {
    const double r = transfer_residual(ctx, side, p, {}, req.level);
    rows.emplace_back(p, r);
    worst = std::max(worst, r);
  }
  const char* side_name = side == Side::Forward ? "forward" : "dual";
  switch (f) {
    case Format::Text: {
      std::ostringstream o;
      o << "tree: " << tree.to_string() << " (m=" << tree.m() << ")  side: " << side_name
        << "  picture: " << to_string(req.picture) << "\npoints: " << rows.size() << "\nmax residual: " << num(worst, 6)
        << "\n";
      return o.str();
    }
    case Format::Json: {
      ordered_json arr = ordered_json::array();
      for (const auto& [p, r] : rows) arr.push_back({{"point", p}, {"residual", r}});
      return dump({{"m", tree.m()}, {"tree", tree.to_string()}, {"side", side_name},
                   {"picture", to_string(req.picture)}, {"max_residual", worst}, {"points", arr}},
                  "transfer-check");
    }
    case Format::Csv: {
      std::ostringstream o;
      o << "point,residual\n";
      for (const auto& [p, r] : rows) o << num(p, 17) << "," << num(r, 6) << "\n";
      return o.str();
    }
    default:
      unsupported(f, "transfer-check");
  }
}

std::string report_orbit(const DecoratedTree& tree, const OrbitRequest& req, Format f) {
  const AlgebraicNumber x0 = parse_point(tree.m(), req.seed_x);
  const AlgebraicNumber y0 = parse_point(tree.m(), req.seed_y);
  const DensityContext ctx(tree, Picture::Unit, 3);
  const OrbitResult res = orbit(ctx, x0, y0, req.count, req.options);
  if (res.exhausted_at)
    throw DomainError("precision exhausted at step " + std::to_string(*res.exhausted_at) +
                      " (branch undecidable at " + std::to_string(req.options.precision_bits) + " bits)");
  const int d = req.digits;
  switch (f) {
    case Format::Csv: {
      std::ostringstream o;
      o << "x,y\n";
      for (const OrbitPoint& p : res.points) o << num(p.x, d) << "," << num(p.y, d) << "\n";
      return o.str();
    }
    case Format::Text: {
      std::ostringstream o;
      o << "tree: " << tree.to_string() << " (m=" << tree.m() << ")\nseed: (" << x0.to_string() << ", "
        << y0.to_string() << ")\nmode: " << (req.options.mode == OrbitMode::Exact ? "exact" : "interval")
        << "\npoints: " << res.points.size() << "\nitinerary prefix:";
      for (size_t i = 0; i < std::min<size_t>(40, res.points.size()); ++i) o << " " << res.points[i].leaf;
      o << "\n";
      return o.str();
    }
    case Format::Json: {
      ordered_json xs = ordered_json::array(), ys = ordered_json::array(), it = ordered_json::array();
      for (const OrbitPoint& p : res.points) {
        xs.push_back(p.x);
        ys.push_back(p.y);
        it.push_back(p.leaf);
      }
      return dump({{"m", tree.m()}, {"tree", tree.to_string()}, {"seed_x", exact_json(x0, 17)},
                   {"seed_y", exact_json(y0, 17)},
                   {"mode", req.options.mode == OrbitMode::Exact ? "exact" : "interval"},
                   {"precision_bits", req.options.precision_bits}, {"count", res.points.size()}, {"x", xs}, {"y", ys},
                   {"itinerary", it}},
                  "orbit");
    }
    case Format::Svg: {
      Svg svg(0, 1.0 / ctx.lambda(), 0, 1.0 / ctx.lambda());
      svg.axes("x", "y");
      for (const OrbitPoint& p : res.points) svg.dot(p.x, p.y, kPalette[2]);
      return svg.str();
    }
  }
  unsupported(f, "orbit");
}

std::string report_poincare(const DecoratedTree& tree, int n, Format f) {
  const std::vector<double> sums = poincare_partial_sums(tree, n);
  switch (f) {
    case Format::Text: {
      std::ostringstream o;
      for (size_t k = 0; k < sums.size(); ++k) o << "S_" << k << " = " << num(sums[k], 17) << "\n";
      return o.str();
    }
    case Format::Json:
      return dump({{"m", tree.m()}, {"tree", tree.to_string()}, {"partial_sums", sums}}, "poincare");
    case Format::Csv: {
      std::ostringstream o;
      o << "k,S\n";
      for (size_t k = 0; k < sums.size(); ++k) o << k << "," << num(sums[k], 17) << "\n";
      return o.str();
    }
    default:
      unsupported(f, "poincare");
  }
}

}  // namespace heckecf
