#pragma once

#include <gmpxx.h>

#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace heckecf {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised when an operation's mathematical precondition fails (division by
/// zero, mixed fields, point outside a domain, invalid tree, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a requested computation exceeds its combinatorial budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RationalInterval {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
};

/// The real field Q(lambda) with lambda = 2cos(pi/m).
///
/// Holds the minimal polynomial of lambda and a rational isolating interval
/// for it. The isolating interval is refined lazily by bisection; refinement
/// is the only mutable state and is guarded by a mutex, so a FieldSpec may be
/// shared freely between threads.
class FieldSpec {
 public:
  int m() const { return m_; }
  int degree() const { return static_cast<int>(minpoly_.size()) - 1; }

  /// Coefficients of the monic minimal polynomial, constant term first.
  const std::vector<Integer>& minpoly() const { return minpoly_; }

  /// Rational enclosure of lambda of width at most 2^-bits.
  RationalInterval lambda_enclosure(unsigned bits) const;

  std::string minpoly_string() const;

 private:
  friend std::shared_ptr<const FieldSpec> make_field(int m);
  FieldSpec(int m, std::vector<Integer> minpoly, Rational lo, Rational hi);

  int m_;
  std::vector<Integer> minpoly_;

  mutable std::mutex mutex_;
  mutable Rational lo_;
  mutable Rational hi_;
  mutable unsigned bits_ = 0;
};

using Field = std::shared_ptr<const FieldSpec>;

/// Returns the (cached) field for the given m. Throws DomainError for m < 3.
Field make_field(int m);

/// Monic polynomial with integer coefficients vanishing exactly at
/// 2cos(2*pi*k/n) for gcd(k, n) = 1. Constant term first.
std::vector<Integer> cosine_minimal_polynomial(int n);

/// Exact element of Q(lambda) in the power basis 1, lambda, ..., lambda^(d-1).
class AlgebraicNumber {
 public:
  explicit AlgebraicNumber(Field field);
  AlgebraicNumber(Field field, const Rational& value);
  AlgebraicNumber(Field field, long value);
  AlgebraicNumber(Field field, std::vector<Rational> coeffs);

  static AlgebraicNumber lambda(Field field);

  const Field& field() const { return field_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const;
  /// True if every coefficient is an integer, i.e. the element lies in Z[lambda].
  bool is_integral() const;
  /// Only valid when is_rational().
  const Rational& rational_value() const;

  AlgebraicNumber operator-() const;
  AlgebraicNumber& operator+=(const AlgebraicNumber& rhs);
  AlgebraicNumber& operator-=(const AlgebraicNumber& rhs);
  AlgebraicNumber& operator*=(const AlgebraicNumber& rhs);
  AlgebraicNumber& operator/=(const AlgebraicNumber& rhs);
  AlgebraicNumber inverse() const;

  friend AlgebraicNumber operator+(AlgebraicNumber a, const AlgebraicNumber& b) { return a += b; }
  friend AlgebraicNumber operator-(AlgebraicNumber a, const AlgebraicNumber& b) { return a -= b; }
  friend AlgebraicNumber operator*(AlgebraicNumber a, const AlgebraicNumber& b) { return a *= b; }
  friend AlgebraicNumber operator/(AlgebraicNumber a, const AlgebraicNumber& b) { return a /= b; }

  AlgebraicNumber operator*(const Rational& r) const;

  friend bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b);
  friend bool operator!=(const AlgebraicNumber& a, const AlgebraicNumber& b) { return !(a == b); }

  /// Exact sign: 0 iff the coefficient vector vanishes, otherwise decided by
  /// refining the enclosure of lambda until the evaluated enclosure excludes 0.
  int sign() const;

  /// Enclosure of the real value given an enclosure of lambda of width 2^-bits.
  RationalInterval enclosure(unsigned bits) const;

  /// Enclosure whose width is below 2^-bits relative to the magnitude of the
  /// value (absolute for zero).
  RationalInterval tight_enclosure(unsigned bits) const;

  double to_double() const;

  /// Largest bit size among the coefficient numerators and denominators.
  size_t height_bits() const;

  /// Human-readable form, e.g. "-1/5 + 2/5*L".
  std::string to_string() const;

 private:
  void check_same_field(const AlgebraicNumber& other) const;

  Field field_;
  std::vector<Rational> coeffs_;
};

int compare(const AlgebraicNumber& a, const AlgebraicNumber& b);
inline bool operator<(const AlgebraicNumber& a, const AlgebraicNumber& b) { return compare(a, b) < 0; }
inline bool operator<=(const AlgebraicNumber& a, const AlgebraicNumber& b) { return compare(a, b) <= 0; }
inline bool operator>(const AlgebraicNumber& a, const AlgebraicNumber& b) { return compare(a, b) > 0; }
inline bool operator>=(const AlgebraicNumber& a, const AlgebraicNumber& b) { return compare(a, b) >= 0; }

const AlgebraicNumber& min(const AlgebraicNumber& a, const AlgebraicNumber& b);
const AlgebraicNumber& max(const AlgebraicNumber& a, const AlgebraicNumber& b);
AlgebraicNumber abs(const AlgebraicNumber& a);

struct DecimalApprox {
  std::string text;    ///< midpoint rounded to the requested number of places
  Rational lo;         ///< certified lower bound
  Rational hi;         ///< certified upper bound
};

/// Decimal approximation whose certified enclosure is narrower than 10^-digits.
DecimalApprox to_float(const AlgebraicNumber& a, int digits);

/// Rounds q to `places` digits after the decimal point.
std::string format_decimal(const Rational& q, int places);

/// Re-expresses a rational element in another field. Throws DomainError if
/// `a` is irrational in its own field and the fields differ.
AlgebraicNumber lift(const AlgebraicNumber& a, const Field& target);

/// Parses arithmetic expressions over Q(lambda): integers, "p/q", the symbol
/// L (or l) for lambda, + - * / ^ and parentheses. Example: "(-1+2*L)/5".
AlgebraicNumber parse_algebraic(const Field& field, std::string_view text);

}  // namespace heckecf
