#include "heckecf/hecke.hpp"

#include <cmath>
#include <sstream>

#include "heckecf/interval.hpp"

namespace heckecf {

GroupElement::GroupElement(AlgebraicNumber a, AlgebraicNumber b, AlgebraicNumber c, AlgebraicNumber d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)), det_(0) {
  const AlgebraicNumber det = a_ * d_ - b_ * c_;
  const AlgebraicNumber one(det.field(), 1L);
  if (det == one)
    det_ = 1;
  else if (det == -one)
    det_ = -1;
  else
    throw DomainError("group element must have determinant +-1, got " + det.to_string());
  if (!(a_.is_integral() && b_.is_integral() && c_.is_integral() && d_.is_integral()))
    throw DomainError("group element entries must lie in Z[lambda]");

  const AlgebraicNumber* first = &a_;
  for (const AlgebraicNumber* e : {&a_, &b_, &c_, &d_}) {
    if (!e->is_zero()) {
      first = e;
      break;
    }
  }
  if (first->sign() < 0) {
    a_ = -a_;
    b_ = -b_;
    c_ = -c_;
    d_ = -d_;
  }
}

GroupElement GroupElement::identity(const Field& field) {
  return GroupElement(AlgebraicNumber(field, 1L), AlgebraicNumber(field), AlgebraicNumber(field),
                      AlgebraicNumber(field, 1L));
}

GroupElement GroupElement::operator*(const GroupElement& r) const {
  return GroupElement(a_ * r.a_ + b_ * r.c_, a_ * r.b_ + b_ * r.d_, c_ * r.a_ + d_ * r.c_, c_ * r.b_ + d_ * r.d_);
}

GroupElement GroupElement::inverse() const {
  // (a b; c d)^-1 = det * (d -b; -c a), and the projective class ignores det.
  return GroupElement(d_, -b_, -c_, a_);
}

GroupElement GroupElement::transpose() const { return GroupElement(a_, c_, b_, d_); }

GroupElement GroupElement::lifted_to(const Field& target) const {
  return GroupElement(lift(a_, target), lift(b_, target), lift(c_, target), lift(d_, target));
}

Eigen::Matrix2d GroupElement::to_matrix() const {
  Eigen::Matrix2d m;
  m << a_.to_double(), b_.to_double(), c_.to_double(), d_.to_double();
  return m;
}

std::string GroupElement::to_string() const {
  return "[[" + a_.to_string() + ", " + b_.to_string() + "], [" + c_.to_string() + ", " + d_.to_string() + "]]";
}

bool operator==(const GroupElement& x, const GroupElement& y) {
  return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_;
}

GroupElement generator(const Field& field, Generator name) {
  const AlgebraicNumber zero(field), one(field, 1L);
  const AlgebraicNumber lam = AlgebraicNumber::lambda(field);
  switch (name) {
    case Generator::L:
      return GroupElement(one, zero, lam, one);
    case Generator::S:
      return GroupElement(zero, -one, one, zero);
    case Generator::F:
      return GroupElement(zero, one, one, zero);
    case Generator::R:
      return GroupElement(zero, -one, one, lam);
  }
  throw DomainError("unknown generator");
}

Generator parse_generator(std::string_view name) {
  if (name == "L") return Generator::L;
  if (name == "S") return Generator::S;
  if (name == "F") return Generator::F;
  if (name == "R") return Generator::R;
  throw DomainError("unknown generator \"" + std::string(name) + "\" (expected L, S, F or R)");
}

GroupElement a_digit(const Field& field, int j) {
  const int m = field->m();
  if (j < 1 || j > m - 1)
    throw DomainError("digit " + std::to_string(j) + " out of range 1.." + std::to_string(m - 1));
  const GroupElement r_inv = generator(field, Generator::R).inverse();
  GroupElement g = generator(field, Generator::S);
  for (int i = 0; i < j; ++i) g = g * r_inv;
  return g;
}

// ---------------------------------------------------------------------------

ProjectivePoint::ProjectivePoint(AlgebraicNumber value) : num_(std::move(value)), den_(num_.field(), 1L) {}

ProjectivePoint::ProjectivePoint(AlgebraicNumber num, AlgebraicNumber den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) {
    if (num_.is_zero()) throw DomainError("projective point with both coordinates zero");
    num_ = AlgebraicNumber(num_.field(), 1L);
  } else {
    num_ /= den_;
    den_ = AlgebraicNumber(num_.field(), 1L);
  }
}

ProjectivePoint ProjectivePoint::infinity(const Field& field) {
  return ProjectivePoint(AlgebraicNumber(field, 1L), AlgebraicNumber(field));
}

const AlgebraicNumber& ProjectivePoint::value() const {
  if (is_infinite()) throw DomainError("point at infinity has no finite value");
  return num_;
}

std::string ProjectivePoint::to_string() const { return is_infinite() ? "inf" : num_.to_string(); }

int compare(const ProjectivePoint& x, const ProjectivePoint& y) {
  if (x.is_infinite()) return y.is_infinite() ? 0 : 1;
  if (y.is_infinite()) return -1;
  return compare(x.value(), y.value());
}

ClosedInterval unit_interval(const Field& field) {
  return {AlgebraicNumber(field), AlgebraicNumber::lambda(field).inverse()};
}

BoundaryInterval half_line(const Field& field) {
  return {ProjectivePoint(AlgebraicNumber(field)), ProjectivePoint::infinity(field)};
}

ProjectivePoint moebius_apply(const GroupElement& g, const ProjectivePoint& p) {
  return ProjectivePoint(g.a() * p.num() + g.b() * p.den(), g.c() * p.num() + g.d() * p.den());
}

AlgebraicNumber moebius_apply(const GroupElement& g, const AlgebraicNumber& x) {
  AlgebraicNumber den = g.c() * x + g.d();
  if (den.is_zero()) throw DomainError("point " + x.to_string() + " is the pole of " + g.to_string());
  return (g.a() * x + g.b()) / den;
}

BoundaryInterval interval_image(const GroupElement& g, const BoundaryInterval& iv) {
  if (!g.c().is_zero()) {
    const ProjectivePoint pole(-g.d(), g.c());
    if (compare(iv.lo, pole) < 0 && compare(pole, iv.hi) < 0)
      throw DomainError("pole " + pole.to_string() + " lies inside the interval");
  }
  ProjectivePoint p = moebius_apply(g, iv.lo);
  ProjectivePoint q = moebius_apply(g, iv.hi);
  // Away from its pole a Moebius map is increasing iff its determinant is positive.
  if (g.det() > 0) return {std::move(p), std::move(q)};
  return {std::move(q), std::move(p)};
}

ClosedInterval interval_image(const GroupElement& g, const ClosedInterval& iv) {
  AlgebraicNumber den_lo = g.c() * iv.lo + g.d();
  AlgebraicNumber den_hi = g.c() * iv.hi + g.d();
  const int s_lo = den_lo.sign(), s_hi = den_hi.sign();
  if (s_lo == 0 || s_hi == 0 || s_lo != s_hi) throw DomainError("pole of " + g.to_string() + " lies in the interval");
  AlgebraicNumber p = (g.a() * iv.lo + g.b()) / den_lo;
  AlgebraicNumber q = (g.a() * iv.hi + g.b()) / den_hi;
  if (g.det() > 0) return {std::move(p), std::move(q)};
  return {std::move(q), std::move(p)};
}

AlgebraicNumber frobenius_sq(const GroupElement& g) {
  return g.a() * g.a() + g.b() * g.b() + g.c() * g.c() + g.d() * g.d();
}

double spectral_norm_from_frobenius_sq(double t) {
  const double half = t / 2.0;
  const double disc = half * half - 1.0;
  return std::sqrt(half + std::sqrt(disc > 0.0 ? disc : 0.0));
}

double spectral_norm(const GroupElement& g) { return spectral_norm_from_frobenius_sq(frobenius_sq(g).to_double()); }

double hyperbolic_displacement(const GroupElement& g, int digits) {
  const unsigned bits = static_cast<unsigned>(digits * 3.33) + 32;
  const Interval a = Interval::of(bits, g.a()), b = Interval::of(bits, g.b());
  const Interval c = Interval::of(bits, g.c()), d = Interval::of(bits, g.d());
  // z = g(i): Re z = (ac + bd)/(c^2 + d^2), Im z = 1/(c^2 + d^2) for either determinant.
  const Interval q = c * c + d * d;
  const Interval re = (a * c + b * d) / q;
  const Interval im = Interval(bits, 1.0) / q;
  const Interval one(bits, 1.0);
  const Interval dist_sq = re * re + (im - one) * (im - one);
  return acosh(one + dist_sq / (Interval(bits, 2.0) * im)).mid();
}

double hyperbolic_displacement(const Eigen::Matrix2d& g) {
  const double a = g(0, 0), b = g(0, 1), c = g(1, 0), d = g(1, 1);
  const double q = c * c + d * d;
  const double re = (a * c + b * d) / q;
  const double im = 1.0 / q;
  const double dist_sq = re * re + (im - 1.0) * (im - 1.0);
  return std::acosh(1.0 + dist_sq / (2.0 * im));
}

ExactMatrix3 so21_embed(const GroupElement& g) {
  if (g.det() != 1) throw DomainError("so21_embed requires determinant +1");
  const AlgebraicNumber &a = g.a(), &b = g.b(), &c = g.c(), &d = g.d();
  const Rational half(1, 2);
  const AlgebraicNumber a2 = a * a, b2 = b * b, c2 = c * c, d2 = d * d;
  return ExactMatrix3{{
      {a * d + b * c, a * c - b * d, a * c + b * d},
      {a * b - c * d, (a2 - b2 - c2 + d2) * half, (a2 + b2 - c2 - d2) * half},
      {a * b + c * d, (a2 - b2 + c2 - d2) * half, (a2 + b2 + c2 + d2) * half},
  }};
}

Eigen::Matrix3d so21_embed_numeric(const GroupElement& g) {
  const ExactMatrix3 e = so21_embed(g);
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = e[i][j].to_double();
  return m;
}

AlgebraicNumber infinity_norm(const ExactMatrix3& m) {
  AlgebraicNumber best = abs(m[0][0]) + abs(m[0][1]) + abs(m[0][2]);
  for (int i = 1; i < 3; ++i) best = max(best, abs(m[i][0]) + abs(m[i][1]) + abs(m[i][2]));
  return best;
}

Cylinder cylinder(const Field& field, std::span<const int> digits) {
  if (digits.empty()) throw DomainError("cylinder: the digit word must be nonempty");
  GroupElement a = a_digit(field, digits[0]);
  for (size_t i = 1; i < digits.size(); ++i) a = a * a_digit(field, digits[i]);
  const GroupElement l = generator(field, Generator::L);
  const GroupElement b = l * a * l.inverse();
  const AlgebraicNumber lam = AlgebraicNumber::lambda(field);
  AlgebraicNumber length = ((lam * a.a() + a.c()) * (lam * a.b() + a.d())).inverse();
  return {interval_image(b, unit_interval(field)), std::move(length), std::move(a)};
}

}  // namespace heckecf
