#include "heckecf/field.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace heckecf {
namespace {

using Poly = std::vector<Integer>;  // constant term first

void trim(Poly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

// Exact division by a monic divisor; throws if the remainder is nonzero.
Poly poly_divide_exact(Poly num, const Poly& den) {
  const size_t dd = den.size() - 1;
  if (num.size() - 1 < dd) throw std::logic_error("polynomial division: degree too small");
  Poly q(num.size() - dd, 0);
  for (size_t k = num.size() - 1; k + 1 > dd; --k) {
    const Integer c = num[k];
    q[k - dd] = c;
    for (size_t i = 0; i <= dd; ++i) num[k - dd + i] -= c * den[i];
    if (k == dd) break;
  }
  for (size_t i = 0; i < dd; ++i)
    if (num[i] != 0) throw std::logic_error("polynomial division: nonzero remainder");
  trim(q);
  return q;
}

// u_k(x) = U_k(x/2): u_0 = 1, u_1 = x, u_{k+1} = x u_k - u_{k-1}.
Poly rescaled_chebyshev_u(int k) {
  if (k < 0) return Poly{0};
  Poly prev{1};
  if (k == 0) return prev;
  Poly cur{0, 1};
  for (int i = 1; i < k; ++i) {
    Poly next = poly_mul(Poly{0, 1}, cur);
    next = poly_add(next, poly_mul(Poly{-1}, prev));
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

// Monic polynomial with simple roots 2cos(2*pi*k/n), k = 0..floor(n/2).
Poly all_cosines_polynomial(int n) {
  if (n % 2 == 1) {
    const int h = (n - 1) / 2;
    return poly_mul(Poly{-2, 1}, poly_add(rescaled_chebyshev_u(h), rescaled_chebyshev_u(h - 1)));
  }
  return poly_mul(Poly{-4, 0, 1}, rescaled_chebyshev_u(n / 2 - 1));
}

int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

template <typename T>
T eval_poly(const Poly& p, const T& x) {
  T acc = 0;
  for (size_t i = p.size(); i-- > 0;) acc = acc * x + static_cast<T>(p[i].get_d());
  return acc;
}

Rational eval_poly_rational(const Poly& p, const Rational& x) {
  Rational acc = 0;
  for (size_t i = p.size(); i-- > 0;) {
    acc *= x;
    acc += Rational(p[i]);
  }
  return acc;
}

Rational pow2_neg(unsigned bits) {
  Integer den = 1;
  den <<= bits;
  return Rational(Integer(1), den);
}

Rational from_double(double v) {
  Rational r(v);
  r.canonicalize();
  return r;
}

// ---- rational polynomial helpers for inversion -----------------------------

using QPoly = std::vector<Rational>;

void trim(QPoly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

bool is_zero_poly(const QPoly& p) { return p.size() == 1 && p[0] == 0; }

// Polynomial long division over Q.
void qpoly_divmod(const QPoly& num, const QPoly& den, QPoly& quot, QPoly& rem) {
  rem = num;
  trim(rem);
  const size_t dd = den.size() - 1;
  if (rem.size() - 1 < dd || is_zero_poly(rem)) {
    quot = QPoly{0};
    return;
  }
  quot.assign(rem.size() - dd, 0);
  const Rational lead = den.back();
  for (size_t k = rem.size() - 1; k + 1 > dd; --k) {
    if (rem[k] == 0) {
      if (k == dd) break;
      continue;
    }
    Rational c = rem[k] / lead;
    quot[k - dd] = c;
    for (size_t i = 0; i <= dd; ++i) rem[k - dd + i] -= c * den[i];
    if (k == dd) break;
  }
  rem.resize(std::max<size_t>(dd, 1));
  trim(rem);
  trim(quot);
}

QPoly qpoly_mul(const QPoly& a, const QPoly& b) {
  QPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

QPoly qpoly_sub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

std::mutex& field_cache_mutex() {
  static std::mutex mu;
  return mu;
}

std::map<int, Field>& field_cache() {
  static std::map<int, Field> cache;
  return cache;
}

}  // namespace

std::vector<Integer> cosine_minimal_polynomial(int n) {
  if (n < 1) throw DomainError("cosine_minimal_polynomial: n must be positive");
  static std::mutex mu;
  static std::map<int, Poly> memo;
  {
    std::lock_guard lock(mu);
    if (auto it = memo.find(n); it != memo.end()) return it->second;
  }
  Poly p = all_cosines_polynomial(n);
  for (int d = 1; d < n; ++d)
    if (n % d == 0) p = poly_divide_exact(p, cosine_minimal_polynomial(d));
  std::lock_guard lock(mu);
  memo.emplace(n, p);
  return p;
}

FieldSpec::FieldSpec(int m, std::vector<Integer> minpoly, Rational lo, Rational hi)
    : m_(m), minpoly_(std::move(minpoly)), lo_(std::move(lo)), hi_(std::move(hi)) {}

Field make_field(int m) {
  if (m < 3) throw DomainError("make_field: m must be at least 3");
  std::lock_guard lock(field_cache_mutex());
  auto& cache = field_cache();
  if (auto it = cache.find(m); it != cache.end()) return it->second;

  Poly minpoly = cosine_minimal_polynomial(2 * m);
  const int degree = static_cast<int>(minpoly.size()) - 1;
  if (degree != euler_phi(2 * m) / 2)
    throw std::logic_error("make_field: minimal polynomial has unexpected degree");

  const long double lambda = 2.0L * std::cos(std::numbers::pi_v<long double> / m);
  Rational lo, hi;
  if (degree == 1) {
    lo = hi = Rational(-minpoly[0]);
  } else {
    const long double residual = eval_poly<long double>(minpoly, lambda);
    if (std::fabs(static_cast<double>(residual)) > 1e-6)
      throw std::logic_error("make_field: 2cos(pi/m) is not a root of the constructed polynomial");
    const Rational centre = from_double(static_cast<double>(lambda));
    const Rational eps = pow2_neg(32);
    lo = centre - eps;
    hi = centre + eps;
    if (sgn(eval_poly_rational(minpoly, lo)) * sgn(eval_poly_rational(minpoly, hi)) >= 0)
      throw std::logic_error("make_field: failed to isolate lambda");
  }
  auto field = Field(new FieldSpec(m, std::move(minpoly), lo, hi));
  cache.emplace(m, field);
  return field;
}

RationalInterval FieldSpec::lambda_enclosure(unsigned bits) const {
  std::lock_guard lock(mutex_);
  if (lo_ == hi_ || bits <= bits_) return {lo_, hi_};
  const Rational target = pow2_neg(bits);
  const int sign_lo = sgn(eval_poly_rational(minpoly_, lo_));
  while (hi_ - lo_ > target) {
    Rational mid = (lo_ + hi_) / 2;
    const int s = sgn(eval_poly_rational(minpoly_, mid));
    if (s == 0) {  // lambda is rational only for m = 3, handled above
      lo_ = hi_ = mid;
      break;
    }
    if (s == sign_lo)
      lo_ = std::move(mid);
    else
      hi_ = std::move(mid);
  }
  bits_ = bits;
  return {lo_, hi_};
}

std::string FieldSpec::minpoly_string() const {
  std::ostringstream out;
  bool first = true;
  for (size_t i = minpoly_.size(); i-- > 0;) {
    const Integer& c = minpoly_[i];
    if (c == 0) continue;
    Integer mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    if (i == 0 || mag != 1) out << mag.get_str();
    if (i >= 1) out << "x";
    if (i >= 2) out << "^" << i;
    first = false;
  }
  return out.str();
}

// ---------------------------------------------------------------------------

AlgebraicNumber::AlgebraicNumber(Field field)
    : field_(std::move(field)), coeffs_(static_cast<size_t>(field_->degree()), Rational(0)) {}

AlgebraicNumber::AlgebraicNumber(Field field, const Rational& value) : AlgebraicNumber(std::move(field)) {
  coeffs_[0] = value;
  coeffs_[0].canonicalize();
}

AlgebraicNumber::AlgebraicNumber(Field field, long value) : AlgebraicNumber(std::move(field)) {
  coeffs_[0] = value;
}

AlgebraicNumber::AlgebraicNumber(Field field, std::vector<Rational> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  const auto& mp = field_->minpoly();
  const size_t d = static_cast<size_t>(field_->degree());
  for (auto& c : coeffs_) c.canonicalize();
  for (size_t k = coeffs_.size(); k-- > d;) {
    const Rational c = coeffs_[k];
    if (c == 0) continue;
    for (size_t i = 0; i <= d; ++i) coeffs_[k - d + i] -= c * Rational(mp[i]);
  }
  coeffs_.resize(d, Rational(0));
}

AlgebraicNumber AlgebraicNumber::lambda(Field field) {
  std::vector<Rational> c{0, 1};
  return AlgebraicNumber(std::move(field), std::move(c));
}

bool AlgebraicNumber::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

bool AlgebraicNumber::is_rational() const {
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Rational& c) { return c == 0; });
}

bool AlgebraicNumber::is_integral() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.get_den() == 1; });
}

const Rational& AlgebraicNumber::rational_value() const {
  if (!is_rational()) throw DomainError("rational_value: element is irrational");
  return coeffs_[0];
}

void AlgebraicNumber::check_same_field(const AlgebraicNumber& other) const {
  if (field_ != other.field_ && field_->m() != other.field_->m())
    throw DomainError("arithmetic on elements of different fields (m=" + std::to_string(field_->m()) +
                      " vs m=" + std::to_string(other.field_->m()) + ")");
}

AlgebraicNumber AlgebraicNumber::operator-() const {
  AlgebraicNumber r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

AlgebraicNumber& AlgebraicNumber::operator+=(const AlgebraicNumber& rhs) {
  check_same_field(rhs);
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

AlgebraicNumber& AlgebraicNumber::operator-=(const AlgebraicNumber& rhs) {
  check_same_field(rhs);
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

AlgebraicNumber& AlgebraicNumber::operator*=(const AlgebraicNumber& rhs) {
  check_same_field(rhs);
  const size_t d = coeffs_.size();
  if (d == 1) {
    coeffs_[0] *= rhs.coeffs_[0];
    return *this;
  }
  std::vector<Rational> prod(2 * d - 1, Rational(0));
  for (size_t i = 0; i < d; ++i) {
    if (coeffs_[i] == 0) continue;
    for (size_t j = 0; j < d; ++j)
      if (rhs.coeffs_[j] != 0) prod[i + j] += coeffs_[i] * rhs.coeffs_[j];
  }
  *this = AlgebraicNumber(field_, std::move(prod));
  return *this;
}

AlgebraicNumber AlgebraicNumber::inverse() const {
  if (is_zero()) throw DomainError("division by zero in Q(lambda)");
  const size_t d = coeffs_.size();
  if (d == 1) return AlgebraicNumber(field_, Rational(1) / coeffs_[0]);

  // Extended Euclid: find u with u * a = 1 mod minpoly.
  QPoly r0(field_->minpoly().begin(), field_->minpoly().end());
  QPoly r1(coeffs_);
  trim(r1);
  QPoly s0{0}, s1{1};
  while (!(r1.size() == 1)) {
    QPoly q, r;
    qpoly_divmod(r0, r1, q, r);
    QPoly s = qpoly_sub(s0, qpoly_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
    if (is_zero_poly(r1)) throw std::logic_error("inverse: minimal polynomial is reducible");
  }
  const Rational c = r1[0];
  for (auto& x : s1) x /= c;
  return AlgebraicNumber(field_, std::move(s1));
}

AlgebraicNumber& AlgebraicNumber::operator/=(const AlgebraicNumber& rhs) {
  check_same_field(rhs);
  if (rhs.is_rational()) {
    if (rhs.coeffs_[0] == 0) throw DomainError("division by zero in Q(lambda)");
    for (auto& c : coeffs_) c /= rhs.coeffs_[0];
    return *this;
  }
  return *this *= rhs.inverse();
}

AlgebraicNumber AlgebraicNumber::operator*(const Rational& r) const {
  AlgebraicNumber out = *this;
  for (auto& c : out.coeffs_) c *= r;
  return out;
}

bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  return a.field_->m() == b.field_->m() && a.coeffs_ == b.coeffs_;
}

RationalInterval AlgebraicNumber::enclosure(unsigned bits) const {
  if (is_rational()) return {coeffs_[0], coeffs_[0]};
  const RationalInterval lam = field_->lambda_enclosure(bits);
  // lambda >= 1 > 0, so powers are monotone on the enclosure.
  Rational lo = coeffs_[0], hi = coeffs_[0];
  Rational plo = 1, phi = 1;
  for (size_t i = 1; i < coeffs_.size(); ++i) {
    plo *= lam.lo;
    phi *= lam.hi;
    const Rational& c = coeffs_[i];
    if (c > 0) {
      lo += c * plo;
      hi += c * phi;
    } else if (c < 0) {
      lo += c * phi;
      hi += c * plo;
    }
  }
  return {lo, hi};
}

size_t AlgebraicNumber::height_bits() const {
  size_t h = 0;
  for (const auto& c : coeffs_) {
    h = std::max(h, mpz_sizeinbase(c.get_num_mpz_t(), 2));
    h = std::max(h, mpz_sizeinbase(c.get_den_mpz_t(), 2));
  }
  return h;
}

int AlgebraicNumber::sign() const {
  if (is_rational()) return sgn(coeffs_[0]);
  // Nonzero elements are bounded away from zero, so refinement terminates.
  unsigned bits = 64 + static_cast<unsigned>(height_bits());
  for (;;) {
    const RationalInterval e = enclosure(bits);
    if (sgn(e.lo) > 0) return 1;
    if (sgn(e.hi) < 0) return -1;
    bits *= 2;
  }
}

RationalInterval AlgebraicNumber::tight_enclosure(unsigned bits) const {
  if (is_zero()) return {Rational(0), Rational(0)};
  if (is_rational()) return {coeffs_[0], coeffs_[0]};
  unsigned b = bits + 64 + static_cast<unsigned>(height_bits());
  for (;;) {
    RationalInterval e = enclosure(b);
    if (!e.contains_zero()) {
      Rational mag = std::min(abs(e.lo), abs(e.hi));
      if (e.width() <= mag * pow2_neg(bits)) return e;
    }
    b *= 2;
  }
}

double AlgebraicNumber::to_double() const {
  const RationalInterval e = tight_enclosure(60);
  return Rational((e.lo + e.hi) / 2).get_d();
}

std::string AlgebraicNumber::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first)
      out << (c < 0 ? "-" : "");
    else
      out << (c < 0 ? " - " : " + ");
    if (i == 0)
      out << mag.get_str();
    else {
      if (mag != 1) out << mag.get_str() << "*";
      out << "L";
      if (i > 1) out << "^" << i;
    }
    first = false;
  }
  return first ? std::string("0") : out.str();
}

int compare(const AlgebraicNumber& a, const AlgebraicNumber& b) { return (a - b).sign(); }

const AlgebraicNumber& min(const AlgebraicNumber& a, const AlgebraicNumber& b) { return b < a ? b : a; }
const AlgebraicNumber& max(const AlgebraicNumber& a, const AlgebraicNumber& b) { return a < b ? b : a; }
AlgebraicNumber abs(const AlgebraicNumber& a) { return a.sign() < 0 ? -a : a; }

std::string format_decimal(const Rational& q, int places) {
  Integer scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  Rational scaled = abs(q) * Rational(scale) + Rational(1, 2);
  Integer n = scaled.get_num() / scaled.get_den();  // floor, nonnegative
  std::string digits = n.get_str();
  if (places > 0) {
    if (digits.size() <= static_cast<size_t>(places))
      digits.insert(0, static_cast<size_t>(places) + 1 - digits.size(), '0');
    digits.insert(digits.size() - static_cast<size_t>(places), ".");
  }
  const bool negative = q < 0 && n != 0;
  return negative ? "-" + digits : digits;
}

DecimalApprox to_float(const AlgebraicNumber& a, int digits) {
  if (digits < 1) throw DomainError("to_float: digits must be at least 1");
  Integer scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const Rational target(Integer(1), scale);
  unsigned bits = static_cast<unsigned>(std::ceil(digits * 3.33)) + 8 + static_cast<unsigned>(a.height_bits());
  RationalInterval e = a.enclosure(bits);
  while (e.width() >= target) {
    bits *= 2;
    e = a.enclosure(bits);
  }
  return {format_decimal((e.lo + e.hi) / 2, digits), e.lo, e.hi};
}

AlgebraicNumber lift(const AlgebraicNumber& a, const Field& target) {
  if (a.field()->m() == target->m()) return a;
  if (!a.is_rational())
    throw DomainError("cannot move an irrational element of Q(lambda_" + std::to_string(a.field()->m()) +
                      ") into Q(lambda_" + std::to_string(target->m()) + ")");
  return AlgebraicNumber(target, a.rational_value());
}

// ---- expression parser -----------------------------------------------------

namespace {

class ExpressionParser {
 public:
  ExpressionParser(const Field& field, std::string_view text) : field_(field), text_(text) {}

  AlgebraicNumber parse() {
    AlgebraicNumber v = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw DomainError("cannot parse algebraic number \"" + std::string(text_) + "\": " + what + " at offset " +
                      std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  AlgebraicNumber expr() {
    AlgebraicNumber v = term();
    for (;;) {
      const char c = peek();
      if (c == '+') {
        ++pos_;
        v += term();
      } else if (c == '-') {
        ++pos_;
        v -= term();
      } else {
        return v;
      }
    }
  }

  AlgebraicNumber term() {
    AlgebraicNumber v = unary();
    for (;;) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        v *= unary();
      } else if (c == '/') {
        ++pos_;
        v /= unary();
      } else if (c == 'L' || c == 'l' || c == '(') {
        v *= power();  // implicit multiplication, e.g. 2L
      } else {
        return v;
      }
    }
  }

  AlgebraicNumber unary() {
    const char c = peek();
    if (c == '-') {
      ++pos_;
      return -unary();
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  AlgebraicNumber power() {
    AlgebraicNumber base = primary();
    if (peek() == '^') {
      ++pos_;
      bool negative = false;
      if (peek() == '-') {
        negative = true;
        ++pos_;
      }
      skip_space();
      const size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      const int e = std::stoi(std::string(text_.substr(start, pos_ - start)));
      AlgebraicNumber r(field_, 1L);
      for (int i = 0; i < e; ++i) r *= base;
      return negative ? r.inverse() : r;
    }
    return base;
  }

  AlgebraicNumber primary() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      AlgebraicNumber v = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return v;
    }
    if (c == 'L' || c == 'l') {
      ++pos_;
      return AlgebraicNumber::lambda(field_);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return AlgebraicNumber(field_, Rational(Integer(std::string(text_.substr(start, pos_ - start)))));
    }
    fail(c == '\0' ? "unexpected end of input" : "unexpected character");
  }

  const Field& field_;
  std::string_view text_;
  size_t pos_ = 0;
};

}  // namespace

AlgebraicNumber parse_algebraic(const Field& field, std::string_view text) {
  return ExpressionParser(field, text).parse();
}

}  // namespace heckecf
