#include "heckecf/minkowski.hpp"

#include <cmath>

namespace heckecf {
namespace {

Rational power_inverse(int base, int exponent) {
  Integer den = 1;
  for (int i = 0; i < exponent; ++i) den *= base;
  return Rational(Integer(1), den);
}

struct FullBranchData {
  std::vector<GroupElement> inverse;   // index j = 1..m-1; index 0 unused
  std::vector<AlgebraicNumber> right;  // right endpoint of B_j[0, 1/lambda], j = 1..m-2
};

FullBranchData full_branch_data(const Field& field) {
  const int m = field->m();
  FullBranchData data;
  const AlgebraicNumber top = AlgebraicNumber::lambda(field).inverse();
  data.inverse.push_back(GroupElement::identity(field));
  data.right.push_back(AlgebraicNumber(field));
  for (int j = 1; j < m; ++j) {
    const GroupElement b = embed_b(field, Word{{j}, false});
    data.inverse.push_back(b.inverse());
    data.right.push_back(moebius_apply(b, top));
  }
  return data;
}

void check_point(const Field& field, const AlgebraicNumber& x) {
  if (x.field()->m() != field->m()) throw DomainError("point belongs to a different field");
  if (x.sign() < 0 || x > AlgebraicNumber::lambda(field).inverse())
    throw DomainError("point " + x.to_string() + " lies outside [0, 1/lambda]");
}

}  // namespace

DigitStream minkowski_digits(const Field& field, const AlgebraicNumber& x0, int n) {
  if (n < 0) throw DomainError("digit count must be nonnegative");
  check_point(field, x0);
  const int m = field->m();
  const FullBranchData data = full_branch_data(field);
  const AlgebraicNumber top = AlgebraicNumber::lambda(field).inverse();
  DigitStream out;
  AlgebraicNumber x = x0;
  while (static_cast<int>(out.digits.size()) < n) {
    if (x.is_zero() || x == top) {
      out.exact_tail = true;
      out.digits.resize(static_cast<size_t>(n), x.is_zero() ? 1 : m - 1);
      break;
    }
    int j = m - 1;
    for (int k = 1; k <= m - 2; ++k) {
      if (x <= data.right[static_cast<size_t>(k)]) {
        j = k;
        break;
      }
    }
    out.digits.push_back(j);
    x = moebius_apply(data.inverse[static_cast<size_t>(j)], x);
  }
  return out;
}

Rational minkowski_evaluate(const Field& field, const AlgebraicNumber& x, int n) {
  const int m = field->m();
  const DigitStream ds = minkowski_digits(field, x, n);
  Rational q = 0;
  Rational scale(1, m - 1);
  for (int d : ds.digits) {
    q += (d - 1) * scale;
    scale /= (m - 1);
  }
  return q;
}

ClosedInterval minkowski_invert(const Field& field, const Rational& y0, int n) {
  if (y0 < 0 || y0 > 1) throw DomainError("minkowski_invert needs 0 <= y <= 1");
  if (n < 0) throw DomainError("depth must be nonnegative");
  if (n == 0) return unit_interval(field);
  const int m = field->m();
  std::vector<int> digits;
  Rational y = y0;
  for (int k = 0; k < n; ++k) {
    const Rational t = y * (m - 1);
    Integer e = t.get_num() / t.get_den();
    if (e > m - 2) e = m - 2;
    digits.push_back(static_cast<int>(e.get_si()) + 1);
    y = t - Rational(e);
  }
  return cylinder(field, digits).interval;
}

Rational conjugacy_residual(const Field& field, const Word& w, const AlgebraicNumber& x, int n) {
  check_point(field, x);
  const AlgebraicNumber bx = moebius_apply(embed_b(field, w), x);
  const Rational lhs = minkowski_evaluate(field, bx, n);
  const Rational rhs = embed_c(field->m(), w)(minkowski_evaluate(field, x, n + w.level()));
  return abs(lhs - rhs);
}

HoelderData hoelder(const Field& field, unsigned precision_bits) {
  const int m = field->m();
  const unsigned bits = precision_bits + 32;
  AlgebraicNumber t = frobenius_sq(a_digit(field, m / 2));
  const Interval tt = Interval::of(bits, t);
  const Interval two(bits, 2.0), four(bits, 4.0);
  Interval rho_sq = (tt + sqrt(tt * tt - four)) / two;
  Interval rho = sqrt(rho_sq);
  Interval alpha = log(Interval(bits, static_cast<double>(m - 1))) / (two * log(rho));
  return {m, std::move(t), std::move(rho_sq), std::move(rho), std::move(alpha)};
}

namespace {

struct JsrSearch {
  const std::vector<Eigen::Matrix2d>* gens;
  int n_max;
  std::vector<double> max_rho;   // per length
  std::vector<double> max_norm;  // per length

  void visit(const Eigen::Matrix2d& p, int len) {
    const double tr = std::fabs(p.trace());
    const double rho = tr > 2.0 ? (tr + std::sqrt(tr * tr - 4.0)) / 2.0 : 1.0;
    const double norm = spectral_norm_from_frobenius_sq(p.squaredNorm());
    auto& r = max_rho[static_cast<size_t>(len)];
    auto& s = max_norm[static_cast<size_t>(len)];
    if (rho > r) r = rho;
    if (norm > s) s = norm;
    if (len == n_max) return;
    for (const Eigen::Matrix2d& g : *gens) visit(p * g, len + 1);
  }
};

}  // namespace

JsrBounds jsr_bruteforce(const Field& field, int n_max, int max_length, unsigned long long budget) {
  if (n_max < 1) throw DomainError("n_max must be at least 1");
  if (n_max > max_length)
    throw BudgetError("n_max " + std::to_string(n_max) + " exceeds the cap " + std::to_string(max_length));
  const int m = field->m();
  unsigned long long count = 0, layer = 1;
  for (int n = 1; n <= n_max; ++n) {
    layer *= static_cast<unsigned long long>(m - 1);
    count += layer;
    if (count > budget) throw BudgetError("jsr_bruteforce: " + std::to_string(count) + "+ products exceed the budget");
  }
  std::vector<Eigen::Matrix2d> gens;
  for (int j = 1; j < m; ++j) gens.push_back(a_digit(field, j).to_matrix());
  JsrSearch search{&gens, n_max, std::vector<double>(static_cast<size_t>(n_max) + 1, 0.0),
                   std::vector<double>(static_cast<size_t>(n_max) + 1, 0.0)};
  for (const Eigen::Matrix2d& g : gens) search.visit(g, 1);

  JsrBounds b{0.0, INFINITY, 1, 1, count};
  for (int n = 1; n <= n_max; ++n) {
    const double lo = std::pow(search.max_rho[static_cast<size_t>(n)], 1.0 / n);
    const double hi = std::pow(search.max_norm[static_cast<size_t>(n)], 1.0 / n);
    if (lo > b.lower) {
      b.lower = lo;
      b.lower_length = n;
    }
    if (hi < b.upper) {
      b.upper = hi;
      b.upper_length = n;
    }
  }
  return b;
}

std::vector<WitnessRow> optimality_witness(const Field& field, int n) {
  if (n < 1) throw DomainError("optimality_witness needs n >= 1");
  const int m = field->m();
  const int h = m / 2;
  const double alpha = hoelder(field).alpha.mid();
  std::vector<WitnessRow> rows;
  std::vector<int> word;
  for (int k = 1; k <= n; ++k) {
    word.push_back(m - h);
    word.push_back(h);
    Cylinder c = cylinder(field, word);
    const Rational inc = power_inverse(m - 1, 2 * k);
    const double log_len = log(Interval::of(256, c.length)).mid();
    const double log_inc = log(Interval(256, inc)).mid();
    rows.push_back({k, c.interval, c.length, inc, std::exp(log_inc - alpha * log_len),
                    std::exp(log_inc - (alpha + 0.05) * log_len)});
  }
  return rows;
}

}  // namespace heckecf
