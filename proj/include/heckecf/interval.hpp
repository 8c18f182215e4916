#pragma once

#include <mpfr.h>

#include <string>

#include "heckecf/field.hpp"

namespace heckecf {

/// Closed interval with MPFR endpoints and outward rounding. Every operation
/// returns an enclosure of the exact real result.
class Interval {
 public:
  explicit Interval(unsigned precision_bits = 128);
  Interval(unsigned precision_bits, double value);
  Interval(unsigned precision_bits, const Rational& value);
  Interval(unsigned precision_bits, const Rational& lo, const Rational& hi);
  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  /// Enclosure of an element of Q(lambda).
  static Interval of(unsigned precision_bits, const AlgebraicNumber& a);

  unsigned precision() const { return static_cast<unsigned>(mpfr_get_prec(lo_)); }

  double lower() const;
  double upper() const;
  double mid() const;
  /// Upper bound on the width.
  double width() const;

  bool contains(double v) const;
  bool contains_zero() const;
  /// +1 / -1 when the interval is strictly positive / negative, 0 when undecided.
  int certain_sign() const;
  /// Every point of *this is <= every point of other.
  bool certainly_le(const Interval& other) const;
  /// Every point of *this is > every point of other.
  bool certainly_gt(const Interval& other) const;
  /// Degenerate intervals at the endpoints.
  Interval lower_point() const;
  Interval upper_point() const;

  Interval operator-() const;
  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  /// Throws DomainError if b contains zero.
  friend Interval operator/(const Interval& a, const Interval& b);

  friend Interval sqrt(const Interval& a);
  friend Interval log(const Interval& a);
  friend Interval exp(const Interval& a);
  friend Interval acosh(const Interval& a);
  friend Interval hull(const Interval& a, const Interval& b);

  /// Decimal rendering of the midpoint with `digits` significant digits.
  std::string mid_string(int digits) const;
  std::string lower_string(int digits) const;
  std::string upper_string(int digits) const;

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

}  // namespace heckecf
