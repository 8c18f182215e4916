#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "support.hpp"

using namespace heckecf;
using testsupport::Gen;

namespace {

GroupElement power(const GroupElement& g, int n) {
  GroupElement r = GroupElement::identity(g.field());
  for (int i = 0; i < n; ++i) r = r * g;
  return r;
}

GroupElement product(const Field& f, const std::vector<int>& digits) {
  GroupElement r = GroupElement::identity(f);
  for (int j : digits) r = r * a_digit(f, j);
  return r;
}

ExactMatrix3 mul3(const ExactMatrix3& x, const ExactMatrix3& y) {
  const Field& f = x[0][0].field();
  ExactMatrix3 r{{{AlgebraicNumber(f), AlgebraicNumber(f), AlgebraicNumber(f)},
                  {AlgebraicNumber(f), AlgebraicNumber(f), AlgebraicNumber(f)},
                  {AlgebraicNumber(f), AlgebraicNumber(f), AlgebraicNumber(f)}}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r[i][j] += x[i][k] * y[k][j];
  return r;
}

bool equal_up_to_sign(const ExactMatrix3& x, const ExactMatrix3& y) {
  bool plus = true, minus = true;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      plus = plus && x[i][j] == y[i][j];
      minus = minus && x[i][j] == -y[i][j];
    }
  return plus || minus;
}

}  // namespace

TEST_CASE("generators and relations") {
  for (int m = 3; m <= 12; ++m) {
    CAPTURE(m);
    const Field f = make_field(m);
    const GroupElement L = generator(f, Generator::L), S = generator(f, Generator::S);
    const GroupElement F = generator(f, Generator::F), R = generator(f, Generator::R);
    const GroupElement I = GroupElement::identity(f);
    CHECK(L.det() == 1);
    CHECK(S.det() == 1);
    CHECK(F.det() == -1);
    CHECK(R.det() == 1);
    CHECK(S * S == I);
    CHECK(F * F == I);
    CHECK(power(R, m) == I);
    for (int k = 1; k < m; ++k) CHECK(power(R, k) != I);
    CHECK(R == L.inverse() * S);
    CHECK(F * S * F == S);
  }
}

TEST_CASE("A_j = S R^-j and the flip relation") {
  for (int m = 3; m <= 10; ++m) {
    const Field f = make_field(m);
    const GroupElement S = generator(f, Generator::S), R = generator(f, Generator::R);
    const GroupElement F = generator(f, Generator::F);
    for (int j = 1; j < m; ++j) {
      CHECK(a_digit(f, j) == S * power(R.inverse(), j));
      CHECK(F * a_digit(f, j) == a_digit(f, m - j) * F);
    }
  }
}

TEST_CASE("sign normalization and determinant check") {
  const Field f = make_field(5);
  const AlgebraicNumber lam = AlgebraicNumber::lambda(f), one(f, 1L), zero(f);
  const GroupElement g(-lam, lam, -one - lam * Rational(2), one * Rational(2) + lam);
  CHECK(g.a() == lam);
  CHECK(g.b() == -lam);
  CHECK(g.det() == 1);
  CHECK_THROWS_AS(GroupElement(one * Rational(2), zero, zero, one), DomainError);
  CHECK_THROWS_AS(GroupElement(one * Rational(1, 2), zero, zero, one * Rational(2)), DomainError);
}

TEST_CASE("Moebius action matches floating point") {
  Gen g(21);
  for (int m : {3, 5, 7}) {
    const Field f = make_field(m);
    for (int it = 0; it < 50; ++it) {
      const GroupElement h = product(f, g.digits(m, g.uniform(1, 5)));
      const AlgebraicNumber x = g.interior_point(f);
      const Eigen::Matrix2d M = h.to_matrix();
      const double xd = x.to_double();
      const double expect = (M(0, 0) * xd + M(0, 1)) / (M(1, 0) * xd + M(1, 1));
      CHECK(moebius_apply(h, x).to_double() == doctest::Approx(expect).epsilon(1e-12));
    }
  }
  const Field f = make_field(3);
  CHECK(moebius_apply(generator(f, Generator::S), ProjectivePoint(AlgebraicNumber(f))).is_infinite());
  CHECK_THROWS_AS(moebius_apply(generator(f, Generator::S), AlgebraicNumber(f)), DomainError);
}

TEST_CASE("interval images respect orientation") {
  const Field f = make_field(3);
  const ClosedInterval unit = unit_interval(f);
  const GroupElement flip(AlgebraicNumber(f, -1L), AlgebraicNumber(f, 1L), AlgebraicNumber(f), AlgebraicNumber(f, 1L));
  const ClosedInterval im = interval_image(flip, unit);  // x -> 1 - x
  CHECK(im.lo == AlgebraicNumber(f));
  CHECK(im.hi == AlgebraicNumber(f, 1L));
  const ClosedInterval third{AlgebraicNumber(f, Rational(1, 3)), AlgebraicNumber(f, Rational(1, 2))};
  const ClosedInterval im2 = interval_image(flip, third);
  CHECK(im2.lo == AlgebraicNumber(f, Rational(1, 2)));
  CHECK(im2.hi == AlgebraicNumber(f, Rational(2, 3)));
  const ClosedInterval straddle{AlgebraicNumber(f, -1L), AlgebraicNumber(f, 1L)};
  CHECK_THROWS_AS(interval_image(generator(f, Generator::S), straddle), DomainError);
}

TEST_CASE("spectral norm from the Frobenius norm") {
  Gen g(22);
  for (int m : {3, 4, 5, 8}) {
    const Field f = make_field(m);
    for (int it = 0; it < 40; ++it) {
      const GroupElement h = product(f, g.digits(m, g.uniform(1, 6)));
      Eigen::JacobiSVD<Eigen::Matrix2d> svd(h.to_matrix());
      CHECK(spectral_norm(h) == doctest::Approx(svd.singularValues()(0)).epsilon(1e-12));
    }
  }
}

TEST_CASE("hyperbolic displacement") {
  const Field f = make_field(3);
  CHECK(hyperbolic_displacement(GroupElement::identity(f)) == doctest::Approx(0.0));
  CHECK(hyperbolic_displacement(generator(f, Generator::S)) == doctest::Approx(0.0));
  // diag-like element: (2 1; 1 1) has trace 3 and d(i, g i) = 2 log(spectral norm).
  const GroupElement h = a_digit(f, 1) * a_digit(f, 2);
  CHECK(hyperbolic_displacement(h) == doctest::Approx(2.0 * std::log(spectral_norm(h))).epsilon(1e-12));
  CHECK(hyperbolic_displacement(h.to_matrix()) == doctest::Approx(hyperbolic_displacement(h)).epsilon(1e-12));
}

TEST_CASE("SO(2,1) embedding is a homomorphism") {
  Gen g(23);
  for (int m : {3, 4, 5, 7}) {
    const Field f = make_field(m);
    for (int it = 0; it < 30; ++it) {
      const GroupElement x = product(f, g.digits(m, g.uniform(1, 4)));
      const GroupElement y = product(f, g.digits(m, g.uniform(1, 4)));
      CHECK(equal_up_to_sign(so21_embed(x * y), mul3(so21_embed(x), so21_embed(y))));
    }
  }
  const Field f = make_field(3);
  CHECK_THROWS_AS(so21_embed(generator(f, Generator::F)), DomainError);
}

TEST_CASE("spectral radius squares under the embedding") {
  Gen g(24);
  for (int m : {3, 4, 5, 6}) {
    const Field f = make_field(m);
    int tested = 0;
    while (tested < 25) {
      const GroupElement h = product(f, g.digits(m, g.uniform(2, 6)));
      const double tr = std::fabs(h.to_matrix().trace());
      if (tr <= 2.0 + 1e-9) continue;  // elliptic or parabolic
      ++tested;
      const double rho = (tr + std::sqrt(tr * tr - 4)) / 2;
      const Eigen::VectorXcd ev = Eigen::EigenSolver<Eigen::Matrix3d>(so21_embed_numeric(h)).eigenvalues();
      double rho3 = 0;
      for (int i = 0; i < 3; ++i) rho3 = std::max(rho3, std::abs(ev(i)));
      CHECK(rho3 == doctest::Approx(rho * rho).epsilon(1e-9));
    }
  }
}

TEST_CASE("cylinder length and the 1/(8||A||) bound") {
  Gen g(25);
  for (int m : {3, 4, 5}) {
    const Field f = make_field(m);
    for (int it = 0; it < 60; ++it) {
      const std::vector<int> d = g.digits(m, g.uniform(1, 10));
      const Cylinder c = cylinder(f, d);
      CHECK(c.length == c.interval.length());
      CHECK(c.length.sign() > 0);
      const AlgebraicNumber bound = (infinity_norm(so21_embed(c.a_product)) * Rational(8)).inverse();
      CHECK(bound < c.length);
    }
  }
}

TEST_CASE("cylinders of a level tile the unit interval") {
  for (int m : {3, 4, 5}) {
    const Field f = make_field(m);
    std::vector<ClosedInterval> cyl;
    for (int a = 1; a < m; ++a)
      for (int b = 1; b < m; ++b) {
        const std::vector<int> d{a, b};
        cyl.push_back(cylinder(f, d).interval);
      }
    CHECK(cyl.front().lo.is_zero());
    CHECK(cyl.back().hi == unit_interval(f).hi);
    for (size_t i = 1; i < cyl.size(); ++i) CHECK(cyl[i - 1].hi == cyl[i].lo);
  }
}
