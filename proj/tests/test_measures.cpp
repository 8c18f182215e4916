#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "heckecf/measures.hpp"

using namespace heckecf;
using testsupport::Gen;

namespace {

std::string full_tree(int m) {
  std::string s;
  for (int j = 1; j < m; ++j) s += (j > 1 ? "," : "") + std::to_string(j);
  return s;
}

}  // namespace

TEST_CASE("picture names") {
  CHECK(parse_picture("unit") == Picture::Unit);
  CHECK(parse_picture("infinite") == Picture::Infinite);
  CHECK_THROWS(parse_picture("disk"));
}

TEST_CASE("eta in the two pictures is related by the L pullback") {
  // x_unit = X/(1 + lambda X), dx_unit/dX = 1/(1 + lambda X)^2.
  for (int m : {3, 5, 7}) {
    const DensityContext unit(parse_tree(m, full_tree(m)), Picture::Unit);
    const DensityContext inf(parse_tree(m, full_tree(m)), Picture::Infinite);
    const double l = unit.lambda();
    for (double X : {0.1, 0.7, 2.0, 9.0})
      for (double Y : {0.2, 1.5, 4.0}) {
        const double x = X / (1 + l * X), y = Y / (1 + l * Y);
        const double jac = 1 / ((1 + l * X) * (1 + l * X) * (1 + l * Y) * (1 + l * Y));
        CHECK(eta_density(inf, X, Y) == doctest::Approx(eta_density(unit, x, y) * jac).epsilon(1e-12));
      }
  }
}

TEST_CASE("Farey density is 1/x") {
  const DensityContext ctx(jump_tree(1), Picture::Unit);
  for (double x : {0.05, 0.2, 0.5, 0.77, 0.99}) {
    const DensityValue v = mu_density(ctx, x);
    CHECK(v.value == doctest::Approx(1 / x).epsilon(1e-12));
    CHECK(v.error_bound == 0.0);
  }
}

TEST_CASE("forward transfer operator fixes the full-tree density") {
  for (int m = 3; m <= 8; ++m) {
    const DensityContext ctx(parse_tree(m, full_tree(m)), Picture::Unit);
    const double l = ctx.lambda();
    const auto h = [l](double x) { return 1 / (x * (1 - l * x)); };
    for (int k = 1; k <= 20; ++k) {
      const double x = k / (21.0 * l);
      CHECK(transfer_residual(ctx, Side::Forward, x, h) < 1e-10 * h(x));
    }
  }
}

TEST_CASE("dual transfer operator fixes nu") {
  for (const auto& [m, text] : std::vector<std::pair<int, std::string>>{{3, "1,2f"}, {5, "1,2f,3,4f"}}) {
    const DensityContext ctx(parse_tree(m, text), Picture::Unit);
    Gen g(61);
    for (int k = 0; k < 30; ++k) {
      const double y = g.cover_point(ctx.attractor().cover).to_double();
      CHECK(transfer_residual(ctx, Side::Dual, y) < 1e-10 * nu_density(ctx, y));
    }
  }
}

TEST_CASE("eta invariance under the natural extension") {
  Gen g(62);
  for (const auto& [m, text] : std::vector<std::pair<int, std::string>>{
           {3, "1,2f"}, {5, "1,2f,3,4f"}, {5, "1,2,3,4"}, {4, "1f,2,3f"}}) {
    for (Picture p : {Picture::Unit, Picture::Infinite}) {
      const DensityContext ctx(parse_tree(m, text), p);
      for (int k = 0; k < 20; ++k) {
        double x = g.interior_point(ctx.tree().field()).to_double();
        double y = g.cover_point(ctx.attractor().cover).to_double();
        if (p == Picture::Infinite) {
          x = x / (1 - ctx.lambda() * x);
          y = y / (1 - ctx.lambda() * y);
        }
        CHECK(eta_invariance_residual(ctx, x, y) < 1e-10);
      }
    }
  }
}

TEST_CASE("natural extension steps are mutually inverse") {
  Gen g(63);
  for (const auto& [m, text] : std::vector<std::pair<int, std::string>>{{3, "1,2f"}, {5, "1,2f,3,4f"}, {5, "1,2,3,4"}}) {
    const DensityContext ctx(parse_tree(m, text), Picture::Unit);
    for (int k = 0; k < 30; ++k) {
      const ExtensionPoint p{g.interior_point(ctx.tree().field()), g.cover_point(ctx.attractor().cover)};
      const ExtensionPoint q = natural_extension_step(ctx, p, Direction::Forward);
      CHECK(ctx.attractor().cover.contains(q.y));
      const ExtensionPoint back = natural_extension_step(ctx, q, Direction::Backward);
      CHECK(back.x == p.x);
      CHECK(back.y == p.y);
    }
  }
}

TEST_CASE("jump-tree density against its series") {
  // K is the union of [(3k+1)/(3k+2), (3k+2)/(3k+3)], k >= 0; over each one eta
  // integrates to 1/((3kx+x+1)(3kx+1)).
  const DecoratedTree t = jump_tree(3);
  const Field& f = t.field();
  const DensityContext ctx(t, Picture::Unit, 10);
  const auto eta = [](double x, double y) {
    const double d = 1 - x - y + 2 * x * y;
    return 1 / (d * d);
  };
  const auto simpson = [&eta](double x, double c, double d) {
    const int n = 2000;
    const double h = (d - c) / n;
    double s = eta(x, c) + eta(x, d);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4 : 2) * eta(x, c + i * h);
    return s * h / 3;
  };
  const auto term = [](double x, int k) { return 1 / ((3 * k * x + x + 1) * (3 * k * x + 1)); };
  const auto series = [&term](double x, int terms) {
    double s = 0;
    for (int k = 0; k < terms; ++k) s += term(x, k);
    return s;
  };
  for (double x : {0.2, 0.5, 0.8})
    for (int k = 0; k < 6; ++k)
      CHECK(simpson(x, (3.0 * k + 1) / (3 * k + 2), (3.0 * k + 2) / (3 * k + 3)) ==
            doctest::Approx(term(x, k)).epsilon(1e-10));
  for (int level : {4, 6, 8}) {
    // Level L resolves the first L-1 components and keeps one tail piece up to 1.
    const IntervalUnion c = ctx.cover(level);
    REQUIRE(c.size() == static_cast<size_t>(level));
    for (int k = 0; k < level; ++k) {
      CHECK(c.parts()[k].lo == AlgebraicNumber(f, Rational(3 * k + 1, 3 * k + 2)));
      const Rational hi = k + 1 < level ? Rational(3 * k + 2, 3 * k + 3) : Rational(1);
      CHECK(c.parts()[k].hi == AlgebraicNumber(f, hi));
    }
  }
  for (double x : {0.2, 0.5, 0.8}) {
    double prev = INFINITY;
    for (int level : {4, 6, 8}) {
      const double v = mu_density(ctx, x, level).value;
      const double tail = simpson(x, (3.0 * level - 2) / (3 * level - 1), 1.0);
      CHECK(v == doctest::Approx(series(x, level - 1) + tail).epsilon(1e-10));
      // The cover contains K, so the value dominates the full series.
      CHECK(v >= series(x, 100000));
      CHECK(v <= prev);
      prev = v;
    }
  }
}

TEST_CASE("orbit containment and exactness") {
  const DecoratedTree t = parse_tree(3, "111,112,12,21,221,222");
  const DensityContext ctx(t, Picture::Unit, 4);
  const Field f7 = make_field(7);
  const AlgebraicNumber x0 = parse_algebraic(f7, "L-1");
  const AlgebraicNumber y0(t.field(), Rational(1, 2));
  const OrbitResult r = orbit(ctx, x0, y0, 400, {OrbitMode::Exact, 256, true});
  REQUIRE(r.points.size() == 400);
  CHECK_FALSE(r.exhausted_at.has_value());
  const IntervalUnion cover = ctx.cover(3);
  for (size_t k = 100; k < r.exact_y.size(); ++k) CHECK(cover.contains(r.exact_y[k]));
  const OrbitResult iv = orbit(ctx, x0, y0, 400, {OrbitMode::Interval, 1024, false});
  REQUIRE(iv.points.size() == 400);
  for (size_t k = 0; k < 400; ++k) {
    CHECK(iv.points[k].leaf == r.points[k].leaf);
    CHECK(iv.points[k].x == doctest::Approx(r.points[k].x).epsilon(1e-12));
  }
  const OrbitResult coarse = orbit(ctx, x0, y0, 400, {OrbitMode::Interval, 32, false});
  REQUIRE(coarse.exhausted_at.has_value());
  CHECK(*coarse.exhausted_at < 400);
  CHECK(orbit(ctx, x0, y0, 0).points.empty());
}

TEST_CASE("Poincare partial sums") {
  const std::vector<double> s = poincare_partial_sums(parse_tree(3, "1,2"), 8);
  REQUIRE(s.size() == 9);
  CHECK(s[0] == doctest::Approx(1.0));
  for (size_t k = 1; k < s.size(); ++k) CHECK(s[k] > s[k - 1]);
  CHECK_THROWS_AS(poincare_partial_sums(parse_tree(3, "1,2"), 20, 1000), BudgetError);
}
