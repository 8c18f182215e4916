// Acceptance suite: one PASS/FAIL line per criterion.
#include <Eigen/Eigenvalues>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "support.hpp"
#include "heckecf/measures.hpp"
#include "heckecf/minkowski.hpp"

using namespace heckecf;
using testsupport::Gen;

namespace {

// Tolerances.
constexpr double kAlphaTol = 1e-9;
constexpr double kJsrLowerTol = 1e-9;
constexpr double kJsrUpperGap = 0.05;
constexpr double kTransferTol = 1e-10;
constexpr double kFareyDensityTol = 1e-8;
constexpr double kEtaTol = 1e-10;
constexpr double kSo21Tol = 1e-9;
constexpr size_t kMinDecidedSteps = 1000;

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome ok(bool pass, const std::string& detail) { return {pass, detail}; }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

ClosedInterval iv(const Field& f, const char* lo, const char* hi) {
  return {parse_algebraic(f, lo), parse_algebraic(f, hi)};
}

// 1
Outcome transpose_identity() {
  Gen g(1001);
  int bad = 0;
  for (int it = 0; it < 500; ++it) {
    const int m = g.uniform(3, 8);
    const Field f = make_field(m);
    const Word w = g.word(m, 12);
    if (embed_a(f, sharp(m, w)) != embed_a(f, w).transpose()) ++bad;
  }
  return ok(bad == 0, "500 words, " + std::to_string(bad) + " mismatches");
}

// 2
Outcome farey_dual() {
  const DecoratedTree t = parse_tree(3, "1,2f");
  const AttractorResult r = attractor_cover(t, 3);
  const Field& f = t.field();
  bool pass = r.status == AttractorStatus::ExactFixedPoint && r.level <= 3 &&
              r.cover == IntervalUnion({iv(f, "1/2", "1")});
  const DualMap dual(t, r);
  const GroupElement b2f = embed_b(f, parse_word(3, "2f")), b2 = embed_b(f, parse_word(3, "2"));
  bool branches = false;
  for (const DualBranch& a : dual.branches())
    for (const DualBranch& b : dual.branches())
      if (a.element == b2f && a.domain_union == IntervalUnion({iv(f, "1/2", "2/3")}) && b.element == b2 &&
          b.domain_union == IntervalUnion({iv(f, "2/3", "1")}))
        branches = true;
  return ok(pass && branches, "status " + std::string(to_string(r.status)) + " at level " + std::to_string(r.level) +
                                  ", branches " + (branches ? "exact" : "wrong"));
}

// 3
Outcome golden_dual() {
  const DecoratedTree t = parse_tree(5, "1,2f,3,4f");
  const AttractorResult r = attractor_cover(t);
  const Field& f = t.field();
  const bool cover = r.status == AttractorStatus::ExactFixedPoint &&
                     r.cover == IntervalUnion({iv(f, "(-1+2*L)/5", "1/L"), iv(f, "(-1+L)/2", "2-L")});
  // Displayed matrices; the library stores the representative with positive first nonzero entry.
  struct Shown {
    const char* word;
    const char* a;
    const char* b;
    const char* c;
    const char* d;
  };
  const Shown shown[] = {{"4", "-L", "L", "-1-2*L", "2+L"},
                         {"2f", "-L", "L", "-2-L", "1+2*L"},
                         {"2", "0", "1", "-1", "2*L"},
                         {"4f", "0", "1", "1", "L"}};
  bool matrices = true;
  for (const Shown& s : shown) {
    const GroupElement g = embed_b(f, parse_word(5, s.word));
    const AlgebraicNumber a = parse_algebraic(f, s.a), b = parse_algebraic(f, s.b), c = parse_algebraic(f, s.c),
                          d = parse_algebraic(f, s.d);
    const bool same = g.a() == a && g.b() == b && g.c() == c && g.d() == d;
    const bool negated = g.a() == -a && g.b() == -b && g.c() == -c && g.d() == -d;
    matrices = matrices && (same || negated);
  }
  const std::vector<Word> sharps = t.sharp_leaves();
  const bool names = to_string(5, sharps[0]) == "4" && to_string(5, sharps[1]) == "2f" &&
                     to_string(5, sharps[2]) == "2" && to_string(5, sharps[3]) == "4f";
  return ok(cover && matrices && names, std::string("cover ") + (cover ? "exact" : "wrong") + ", matrices " +
                                            (matrices ? "entry-exact (projective sign)" : "wrong"));
}

// 4
Outcome jump_attractor() {
  AttractorResult r = attractor_cover(jump_tree(3), 8);
  const IntervalUnion& c = cover_at(r, 8);
  const Field& f = r.tree.field();
  int found = 0;
  for (int k = 0; k <= 4; ++k)
    if (c.has_component({AlgebraicNumber(f, Rational(3 * k + 1, 3 * k + 2)),
                         AlgebraicNumber(f, Rational(3 * k + 2, 3 * k + 3))}))
      ++found;
  return ok(found == 5, std::to_string(found) + "/5 components present among " + std::to_string(c.size()));
}

// 5
Outcome six_leaf() {
  const DecoratedTree t = parse_tree(3, "111,112,12,21,221,222");
  bool disjoint = true;
  for (int n = 1; n <= 5; ++n) {
    const std::vector<ClosedInterval> cyl = level_cylinders(t, n);
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<int> v;
      for (int i = 0; i < n; ++i) v.push_back((mask >> i) & 1 ? 6 : 1);
      disjoint = disjoint && components_disjointness(cyl, 6, v);
    }
  }
  const AttractorResult r = attractor_cover(t, 5);
  bool increasing = r.covers.size() == 6;
  std::string counts;
  for (size_t k = 0; k < r.covers.size(); ++k) {
    counts += (k ? "," : "") + std::to_string(r.covers[k].size());
    if (k > 0) increasing = increasing && r.covers[k].size() > r.covers[k - 1].size();
  }
  return ok(disjoint && increasing, std::string("{1,6}^n isolated: ") + (disjoint ? "yes" : "no") + ", counts " + counts);
}

// 6
Outcome salem_exponent() {
  const double phi = (1 + std::sqrt(5.0)) / 2;
  const double want = std::log(2.0) / (2 * std::log(phi));
  const double got = hoelder(make_field(3)).alpha.mid();
  return ok(std::fabs(got - want) <= kAlphaTol, "alpha " + std::to_string(got) + ", error " + fmt(std::fabs(got - want)));
}

// 7
Outcome jsr_sandwich() {
  bool pass = true;
  double worst_lower = 0, worst_gap = 0;
  for (int m = 3; m <= 8; ++m) {
    const Field f = make_field(m);
    const HoelderData h = hoelder(f);
    const double rho = h.rho.mid();
    const double lower = jsr_bruteforce(f, 2).lower;
    const double upper = jsr_bruteforce(f, 8).upper;
    worst_lower = std::max(worst_lower, std::fabs(lower - rho));
    worst_gap = std::max(worst_gap, upper - rho);
    pass = pass && std::fabs(lower - rho) <= kJsrLowerTol && upper >= rho - kJsrLowerTol && upper - rho < kJsrUpperGap;
    for (int j = 1; j < m; ++j) pass = pass && frobenius_sq(a_digit(f, j)) <= h.t;
  }
  return ok(pass, "max |lower - rho| " + fmt(worst_lower) + ", max upper - rho " + fmt(worst_gap));
}

// 8
Outcome minkowski_conjugacy() {
  Gen g(1008);
  const int n = 30;
  const int ms[] = {3, 4, 5, 7};
  int bad = 0;
  for (int it = 0; it < 500; ++it) {
    const int m = ms[it % 4];
    const Field f = make_field(m);
    const Word w = g.word(m, 6);
    const AlgebraicNumber x = g.interior_point(f);
    Rational bound = 2;
    for (int i = 0; i < n; ++i) bound /= (m - 1);
    if (conjugacy_residual(f, w, x, n) > bound) ++bad;
  }
  const Field f3 = make_field(3);
  const Rational q = minkowski_evaluate(f3, AlgebraicNumber(f3, Rational(1, 3)), n);
  Rational tol = 1;
  for (int i = 0; i < n; ++i) tol /= 2;
  const Rational classical = testsupport::question_mark(Rational(1, 3));
  const bool question = classical == Rational(1, 4) && abs(q - classical) <= tol;
  return ok(bad == 0 && question,
            std::to_string(bad) + "/500 residuals over bound, M_3(1/3) " + (question ? "= 1/4" : "wrong"));
}

// 9
Outcome density_invariance() {
  double worst_full = 0, worst_dual = 0, worst_farey = 0;
  for (int m = 3; m <= 7; ++m) {
    std::string leaves;
    for (int j = 1; j < m; ++j) leaves += (j > 1 ? "," : "") + std::to_string(j);
    const DensityContext ctx(parse_tree(m, leaves), Picture::Unit);
    const double l = ctx.lambda();
    const auto h = [l](double x) { return 1 / (x * (1 - l * x)); };
    for (int k = 1; k <= 100; ++k)
      worst_full = std::max(worst_full, transfer_residual(ctx, Side::Forward, k / (101.0 * l), h));
  }
  for (const auto& [m, text] : std::vector<std::pair<int, std::string>>{{3, "1,2f"}, {5, "1,2f,3,4f"}}) {
    const DensityContext ctx(parse_tree(m, text), Picture::Unit);
    Gen g(1009);
    for (int k = 0; k < 100; ++k)
      worst_dual = std::max(worst_dual, transfer_residual(ctx, Side::Dual, g.cover_point(ctx.attractor().cover).to_double()));
  }
  const DensityContext farey(jump_tree(1), Picture::Unit);
  for (int k = 1; k <= 100; ++k) {
    const double x = k / 101.0;
    worst_farey = std::max(worst_farey, std::fabs(mu_density(farey, x).value - 1 / x));
  }
  return ok(worst_full < kTransferTol && worst_dual < kTransferTol && worst_farey < kFareyDensityTol,
            "forward " + fmt(worst_full) + ", dual " + fmt(worst_dual) + ", h_1 " + fmt(worst_farey));
}

// 10
Outcome natural_extension() {
  Gen g(1010);
  int bad = 0;
  double worst_eta = 0;
  for (const auto& [m, text] : std::vector<std::pair<int, std::string>>{{3, "1,2f"}, {5, "1,2f,3,4f"}, {5, "1,2,3,4"}}) {
    const DensityContext ctx(parse_tree(m, text), Picture::Unit);
    for (int k = 0; k < 100; ++k) {
      const ExtensionPoint p{g.interior_point(ctx.tree().field()), g.cover_point(ctx.attractor().cover)};
      const ExtensionPoint back =
          natural_extension_step(ctx, natural_extension_step(ctx, p, Direction::Forward), Direction::Backward);
      if (back.x != p.x || back.y != p.y) ++bad;
      worst_eta = std::max(worst_eta, eta_invariance_residual(ctx, p.x.to_double(), p.y.to_double()));
    }
  }
  return ok(bad == 0 && worst_eta < kEtaTol,
            std::to_string(bad) + "/300 round-trip failures, eta residual " + fmt(worst_eta));
}

// 11
Outcome so21_and_cylinders() {
  Gen g(1011);
  int tested = 0;
  double worst = 0;
  while (tested < 200) {
    const int m = g.uniform(3, 8);
    const Field f = make_field(m);
    GroupElement h = GroupElement::identity(f);
    for (int d : g.digits(m, g.uniform(1, 8))) h = h * a_digit(f, d);
    const double tr = std::fabs(h.to_matrix().trace());
    if (tr <= 2.0 + 1e-12) continue;  // parabolic or elliptic: no simple dominant eigenvalue
    ++tested;
    const double rho = (tr + std::sqrt(tr * tr - 4)) / 2;
    const Eigen::VectorXcd ev = Eigen::EigenSolver<Eigen::Matrix3d>(so21_embed_numeric(h)).eigenvalues();
    double rho3 = 0;
    for (int i = 0; i < 3; ++i) rho3 = std::max(rho3, std::abs(ev(i)));
    worst = std::max(worst, std::fabs(rho3 / (rho * rho) - 1));
  }
  int bad = 0;
  for (int it = 0; it < 1000; ++it) {
    const int m = 3 + it % 3;
    const Field f = make_field(m);
    const std::vector<int> d = g.digits(m, g.uniform(1, 12));
    const Cylinder c = cylinder(f, d);
    if (!((infinity_norm(so21_embed(c.a_product)) * Rational(8)).inverse() < c.length)) ++bad;
  }
  return ok(worst < kSo21Tol && bad == 0,
            "max relative rho error " + fmt(worst) + ", " + std::to_string(bad) + "/1000 cylinder violations");
}

// 12
Outcome orbit_containment() {
  const DecoratedTree t = parse_tree(3, "111,112,12,21,221,222");
  const DensityContext ctx(t, Picture::Unit, 3);
  const AlgebraicNumber x0 = parse_algebraic(make_field(7), "L-1");
  const AlgebraicNumber y0(t.field(), Rational(1, 2));
  const OrbitResult exact = orbit(ctx, x0, y0, 8000, {OrbitMode::Exact, 0, true});
  const IntervalUnion cover = ctx.cover(3);
  size_t outside = 0;
  for (size_t k = 100; k < exact.exact_y.size(); ++k)
    if (!cover.contains(exact.exact_y[k])) ++outside;
  const OrbitResult p1 = orbit(ctx, x0, y0, 8000, {OrbitMode::Interval, 1024, false});
  const OrbitResult p2 = orbit(ctx, x0, y0, 8000, {OrbitMode::Interval, 2048, false});
  size_t agree = 0;
  bool stable = true;
  for (const OrbitResult* r : {&p1, &p2})
    for (size_t k = 0; k < r->points.size(); ++k)
      if (r->points[k].leaf != exact.points[k].leaf) stable = false;
  agree = std::min(p1.points.size(), p2.points.size());
  stable = stable && exact.points.size() == 8000 && p2.points.size() >= p1.points.size() && agree >= kMinDecidedSteps;
  return ok(outside == 0 && stable, std::to_string(exact.points.size()) + " points, " + std::to_string(outside) +
                                        " outside the level-3 cover; itineraries agree on " +
                                        std::to_string(p1.points.size()) + " (1024 bits) and " +
                                        std::to_string(p2.points.size()) + " (2048 bits) decided steps");
}

// 13
Outcome power_duality() {
  const DecoratedTree t = parse_tree(3, "1,2f");
  const DecoratedTree t2 = tree_power(t, 2);
  const AttractorResult r = attractor_cover(t), r2 = attractor_cover(t2);
  bool pass = r.status == AttractorStatus::ExactFixedPoint && r2.status == AttractorStatus::ExactFixedPoint &&
              r.cover == r2.cover;
  const DualMap d(t, r), d2(t2, r2);
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j) {
      const DualBranch& b = d2.branches()[2 * i + j];
      const GroupElement composed = d.branches()[j].element * d.branches()[i].element;
      pass = pass && b.element == composed && b.domain_union == image(composed, r.cover);
    }
  return ok(pass, std::string("dual attractors ") + (r.cover == r2.cover ? "equal" : "differ"));
}

// 14
Outcome poincare_growth() {
  const std::vector<double> s = poincare_partial_sums(parse_tree(3, "1,2"), 10);
  bool pass = s.size() == 11;
  for (size_t k = 1; k < s.size(); ++k) pass = pass && s[k] > s[k - 1];
  return ok(pass, "S_10 = " + fmt(s.back()));
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"transpose identity", transpose_identity},
      {"Farey dual attractor", farey_dual},
      {"golden-ratio dual attractor", golden_dual},
      {"jump-map attractor components", jump_attractor},
      {"six-leaf point components", six_leaf},
      {"Salem exponent", salem_exponent},
      {"JSR sandwich", jsr_sandwich},
      {"Minkowski conjugacy", minkowski_conjugacy},
      {"density invariance", density_invariance},
      {"natural extension round trip", natural_extension},
      {"SO(2,1) spectral radius and cylinder bound", so21_and_cylinders},
      {"orbit containment", orbit_containment},
      {"power duality", power_duality},
      {"Poincare partial sums", poincare_growth},
  };
  int failed = 0, index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("[%s] %2d %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
