// Hand-rolled generators and small independent oracles shared by the tests.
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "heckecf/attractor.hpp"

namespace testsupport {

using heckecf::AlgebraicNumber;
using heckecf::Field;
using heckecf::Rational;
using heckecf::Word;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool coin() { return uniform(0, 1) == 1; }

  std::vector<int> digits(int m, int len) {
    std::vector<int> d;
    for (int i = 0; i < len; ++i) d.push_back(uniform(1, m - 1));
    return d;
  }

  /// Raw letter sequence (kFlip for f), normalized.
  Word word(int m, int max_len) {
    std::vector<int> raw;
    const int len = uniform(0, max_len);
    for (int i = 0; i < len; ++i) raw.push_back(uniform(0, 3) == 0 ? heckecf::kFlip : uniform(1, m - 1));
    return heckecf::normal_form(m, raw);
  }

  /// Rational strictly between lo and hi, at a random fraction t = p/q of the way, q <= max_den.
  Rational rational_between(const Rational& lo, const Rational& hi, int max_den = 1000) {
    for (;;) {
      const int q = uniform(2, max_den);
      const Rational t(uniform(1, q - 1), q);
      Rational r = lo + (hi - lo) * t;
      r.canonicalize();
      if (lo < r && r < hi) return r;
    }
  }

  /// Element with small random coefficients.
  AlgebraicNumber element(const Field& f, int height = 9) {
    std::vector<Rational> c;
    for (int i = 0; i < f->degree(); ++i) {
      Rational r(uniform(-height, height), uniform(1, height));
      r.canonicalize();
      c.push_back(r);
    }
    return AlgebraicNumber(f, c);
  }

  /// Rational point strictly inside (0, 1/lambda), as an element of f.
  AlgebraicNumber interior_point(const Field& f) {
    const double top = 1.0 / (2.0 * std::cos(std::numbers::pi / f->m()));
    const Rational hi(static_cast<long>(std::floor(top * 1e6)), 1000000);
    return AlgebraicNumber(f, rational_between(Rational(0), hi));
  }

  /// Rational point with denominator dividing 10^6 strictly inside a random
  /// component of u. Keeps exact arithmetic on the point cheap.
  AlgebraicNumber cover_point(const heckecf::IntervalUnion& u) {
    const heckecf::ClosedInterval& c = u.parts()[static_cast<size_t>(uniform(0, static_cast<int>(u.size()) - 1))];
    const double lo = c.lo.to_double(), hi = c.hi.to_double();
    const long a = static_cast<long>(std::ceil(lo * 1e6)) + 1, b = static_cast<long>(std::floor(hi * 1e6)) - 1;
    Rational r(uniform(0, static_cast<int>(b - a)) + a, 1000000);
    r.canonicalize();
    return AlgebraicNumber(c.lo.field(), r);
  }

 private:
  std::mt19937_64 rng_;
};

inline double lambda_of(int m) { return 2.0 * std::cos(std::numbers::pi / m); }

/// Classical question-mark function at a rational in [0, 1] via its continued
/// fraction: ?([0; a1, a2, ...]) = 2 sum_k (-1)^(k+1) 2^-(a1+...+ak).
inline Rational question_mark(Rational x) {
  x.canonicalize();
  if (x == 1) return Rational(1);
  Rational sum = 0;
  long partial = 0;
  int sign = 1;
  heckecf::Integer p = x.get_num(), q = x.get_den();
  // x = p/q < 1; first partial quotient of 1/x.
  while (p != 0) {
    const heckecf::Integer a = q / p;
    const heckecf::Integer r = q % p;
    partial += a.get_si();
    heckecf::Integer pow2 = 1;
    pow2 <<= static_cast<unsigned long>(partial);
    sum += Rational(sign * 2, 1) / Rational(pow2);
    sign = -sign;
    q = p;
    p = r;
  }
  sum.canonicalize();
  return sum;
}

}  // namespace testsupport
