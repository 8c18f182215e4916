#include "heckecf/measures.hpp"

#include <cmath>
#include <limits>
#include <mutex>

#include <mpfr.h>

namespace heckecf {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// L^-1(c) = c / (1 - lambda c); the right end 1/lambda goes to infinity.
double to_infinite(const AlgebraicNumber& c) {
  const AlgebraicNumber lam = AlgebraicNumber::lambda(c.field());
  const AlgebraicNumber den = AlgebraicNumber(c.field(), 1L) - lam * c;
  if (den.is_zero()) return kInf;
  return (c / den).to_double();
}

double moebius(const Eigen::Matrix2d& g, double x) { return (g(0, 0) * x + g(0, 1)) / (g(1, 0) * x + g(1, 1)); }

double moebius_derivative(const Eigen::Matrix2d& g, double x) {
  const double den = g(1, 0) * x + g(1, 1);
  return std::fabs(g.determinant()) / (den * den);
}

Eigen::Matrix2d moebius_inverse(const Eigen::Matrix2d& g) {
  Eigen::Matrix2d r;
  r << g(1, 1), -g(0, 1), -g(1, 0), g(0, 0);
  return r;
}

long double to_long_double(const AlgebraicNumber& v) {
  const RationalInterval e = v.tight_enclosure(96);
  const Rational mid = (e.lo + e.hi) / 2;
  mpfr_t t;
  mpfr_init2(t, 80);
  mpfr_set_q(t, mid.get_mpq_t(), MPFR_RNDN);
  const long double r = mpfr_get_ld(t, MPFR_RNDN);
  mpfr_clear(t);
  return r;
}

Eigen::Matrix<long double, 2, 2> to_long_double(const GroupElement& g) {
  Eigen::Matrix<long double, 2, 2> r;
  r << to_long_double(g.a()), to_long_double(g.b()), to_long_double(g.c()), to_long_double(g.d());
  return r;
}

double eta_unit(double lam, double x, double y) {
  const double q = 1.0 - lam * x - lam * y + (lam * lam + 1.0) * x * y;
  return 1.0 / (q * q);
}

}  // namespace

const char* to_string(Picture p) { return p == Picture::Unit ? "unit" : "infinite"; }

Picture parse_picture(std::string_view s) {
  if (s == "unit") return Picture::Unit;
  if (s == "infinite") return Picture::Infinite;
  throw DomainError("unknown picture \"" + std::string(s) + "\" (expected unit or infinite)");
}

DensityContext::DensityContext(DecoratedTree tree, Picture picture, int max_level)
    : tree_(std::move(tree)), picture_(picture), mutex_(std::make_shared<std::mutex>()) {
  attractor_ = std::make_shared<AttractorResult>(attractor_cover(tree_, max_level));
  deep_ = std::make_shared<AttractorResult>(*attractor_);
  farey_ = std::make_shared<FareyMap>(tree_);
  dual_ = std::make_shared<DualMap>(tree_, *attractor_);
  const Field& field = tree_.field();
  lambda_ = AlgebraicNumber::lambda(field).to_double();
  lambda_ld_ = to_long_double(AlgebraicNumber::lambda(field));
  for (const FareyBranch& br : farey_->branches()) {
    const Word& s = tree_.leaves()[br.leaf];
    const Word ss = sharp(tree_.m(), s);
    NumericBranch nb;
    nb.leaf = br.leaf;
    if (picture_ == Picture::Unit) {
      nb.forward = br.element.to_matrix();
      nb.dual = embed_b(field, ss).to_matrix();
      nb.dual_ld = to_long_double(embed_b(field, ss));
      nb.lo = br.domain.lo.to_double();
      nb.hi = br.domain.hi.to_double();
    } else {
      nb.forward = embed_a(field, s).to_matrix();
      nb.dual = embed_a(field, ss).to_matrix();
      nb.dual_ld = to_long_double(embed_a(field, ss));
      nb.lo = to_infinite(br.domain.lo);
      nb.hi = to_infinite(br.domain.hi);
    }
    branches_.push_back(nb);
  }
}

IntervalUnion DensityContext::cover(int level) const {
  std::lock_guard<std::mutex> lock(*mutex_);
  return cover_at(*deep_, level);
}

double eta_density(const DensityContext& ctx, double x, double y) {
  if (ctx.picture() == Picture::Unit) return eta_unit(ctx.lambda(), x, y);
  const double q = 1.0 + x * y;
  return 1.0 / (q * q);
}

double nu_density(const DensityContext& ctx, double y) {
  if (ctx.picture() == Picture::Unit) return 1.0 / ((1.0 - ctx.lambda() * y) * y);
  return 1.0 / y;
}

DensityValue mu_density(const DensityContext& ctx, double x, int level) {
  const IntervalUnion c0 = ctx.cover(level);
  const IntervalUnion c1 = ctx.cover(level + 1);
  const double lam = ctx.lambda();
  double value = 0.0;
  if (ctx.picture() == Picture::Unit) {
    const double a = 1.0 - lam * x;
    const double b = lam - (lam * lam + 1.0) * x;
    for (const ClosedInterval& iv : c0.parts()) {
      const double c = iv.lo.to_double(), d = iv.hi.to_double();
      value += (d - c) / ((a - b * c) * (a - b * d));
    }
  } else {
    for (const ClosedInterval& iv : c0.parts()) {
      const double c = to_infinite(iv.lo), d = to_infinite(iv.hi);
      if (std::isinf(d))
        value += 1.0 / (x * (1.0 + x * c));
      else
        value += (d - c) / ((1.0 + x * c) * (1.0 + x * d));
    }
  }

  double error = 0.0;
  if (!(c0 == c1)) {
    const Field& field = ctx.tree().field();
    const double gap = (c0.total_length(field) - c1.total_length(field)).to_double();
    const double xu = ctx.picture() == Picture::Unit ? x : x / (lam * x + 1.0);
    double sup = 0.0;
    for (const ClosedInterval& iv : c0.parts()) {
      sup = std::max(sup, eta_unit(lam, xu, iv.lo.to_double()));
      sup = std::max(sup, eta_unit(lam, xu, iv.hi.to_double()));
    }
    error = gap * sup;
    if (ctx.picture() == Picture::Infinite) error /= (lam * x + 1.0) * (lam * x + 1.0);
  }
  return {value, error};
}

double transfer_residual(const DensityContext& ctx, Side side, double point, const std::function<double(double)>& h,
                         int level) {
  if (!h && side == Side::Dual) {
    // nu has a pole at the end of the cover; images of points near it lose
    // digits to cancellation in double.
    const long double lam = ctx.lambda_ld();
    const bool unit = ctx.picture() == Picture::Unit;
    const auto nu = [lam, unit](long double y) { return unit ? 1.0L / ((1.0L - lam * y) * y) : 1.0L / y; };
    const long double y = point;
    long double sum = 0.0L;
    for (const NumericBranch& br : ctx.numeric_branches()) {
      const auto& g = br.dual_ld;
      const long double den = g(1, 0) * y + g(1, 1);
      sum += nu((g(0, 0) * y + g(0, 1)) / den) * std::fabs(g.determinant()) / (den * den);
    }
    return static_cast<double>(std::fabs(sum - nu(y)));
  }
  std::function<double(double)> dens = h;
  if (!dens) dens = [&ctx, level](double x) { return mu_density(ctx, x, level).value; };
  double sum = 0.0;
  for (const NumericBranch& br : ctx.numeric_branches()) {
    const Eigen::Matrix2d& g = side == Side::Forward ? br.forward : br.dual;
    sum += dens(moebius(g, point)) * moebius_derivative(g, point);
  }
  return std::fabs(sum - dens(point));
}

double eta_invariance_residual(const DensityContext& ctx, double x, double y) {
  const auto& brs = ctx.numeric_branches();
  const NumericBranch* br = &brs.back();
  for (const NumericBranch& b : brs) {
    if (x <= b.hi) {
      br = &b;
      break;
    }
  }
  const Eigen::Matrix2d inv = moebius_inverse(br->forward);
  const double x1 = moebius(inv, x);
  const double y1 = moebius(br->dual, y);
  const double jac = moebius_derivative(inv, x) * moebius_derivative(br->dual, y);
  const double e0 = eta_density(ctx, x, y);
  return std::fabs(eta_density(ctx, x1, y1) * jac - e0) / e0;
}

ExtensionPoint natural_extension_step(const DensityContext& ctx, const ExtensionPoint& p, Direction d) {
  const auto& dual = ctx.dual().branches();
  if (d == Direction::Forward) {
    FareyEval ev = ctx.farey().evaluate(p.x);
    return {std::move(ev.value), moebius_apply(dual[ev.leaf].element, p.y)};
  }
  const size_t i = ctx.dual().branch_index(p.y);
  for (const FareyBranch& br : ctx.farey().branches()) {
    if (br.leaf == i) return {moebius_apply(br.element, p.x), moebius_apply(dual[i].element.inverse(), p.y)};
  }
  throw DomainError("no forward branch for leaf " + std::to_string(i));
}

// ---------------------------------------------------------------------------

namespace {

struct IntervalMatrix {
  Interval a, b, c, d;
};

IntervalMatrix interval_matrix(const GroupElement& g, unsigned bits) {
  return {Interval::of(bits, g.a()), Interval::of(bits, g.b()), Interval::of(bits, g.c()), Interval::of(bits, g.d())};
}

Interval apply_point(const IntervalMatrix& g, const Interval& x) { return (g.a * x + g.b) / (g.c * x + g.d); }

// Moebius maps are monotone away from their pole, so the image of an interval
// is the hull of the endpoint images.
Interval apply(const IntervalMatrix& g, const Interval& x) {
  return hull(apply_point(g, x.lower_point()), apply_point(g, x.upper_point()));
}

OrbitResult orbit_exact(const DensityContext& ctx, const AlgebraicNumber& x0, const AlgebraicNumber& y0, size_t count,
                        const OrbitOptions& options) {
  const Field& fx = x0.field();
  const Field& fy = y0.field();
  const auto& branches = ctx.farey().branches();
  const auto& dual = ctx.dual().branches();
  std::vector<GroupElement> inv;
  std::vector<AlgebraicNumber> right;
  for (const FareyBranch& br : branches) {
    inv.push_back(br.element.inverse().lifted_to(fx));
    right.push_back(lift(br.domain.hi, fx));
  }
  std::vector<GroupElement> dual_lifted;
  for (const DualBranch& br : dual) dual_lifted.push_back(br.element.lifted_to(fy));

  const AlgebraicNumber top = lift(unit_interval(ctx.tree().field()).hi, fx);
  if (x0.sign() < 0 || x0 > top) throw DomainError("seed x lies outside [0, 1/lambda]");

  OrbitResult out;
  out.points.reserve(count);
  AlgebraicNumber x = x0, y = y0;
  for (size_t k = 0; k < count; ++k) {
    size_t pos = branches.size() - 1;
    for (size_t i = 0; i < branches.size(); ++i) {
      if (x <= right[i]) {
        pos = i;
        break;
      }
    }
    const size_t leaf = branches[pos].leaf;
    out.points.push_back({x.to_double(), y.to_double(), leaf});
    if (options.keep_exact) out.exact_y.push_back(y);
    if (k + 1 == count) break;
    x = moebius_apply(inv[pos], x);
    y = moebius_apply(dual_lifted[leaf], y);
  }
  return out;
}

OrbitResult orbit_interval(const DensityContext& ctx, const AlgebraicNumber& x0, const AlgebraicNumber& y0,
                           size_t count, const OrbitOptions& options) {
  const unsigned bits = options.precision_bits;
  const auto& branches = ctx.farey().branches();
  const auto& dual = ctx.dual().branches();
  std::vector<IntervalMatrix> inv;
  std::vector<Interval> right;
  for (const FareyBranch& br : branches) {
    inv.push_back(interval_matrix(br.element.inverse(), bits));
    right.push_back(Interval::of(bits, br.domain.hi));
  }
  std::vector<IntervalMatrix> dm;
  for (const DualBranch& br : dual) dm.push_back(interval_matrix(br.element, bits));

  OrbitResult out;
  out.points.reserve(count);
  Interval x = Interval::of(bits, x0), y = Interval::of(bits, y0);
  for (size_t k = 0; k < count; ++k) {
    std::optional<size_t> pos;
    for (size_t i = 0; i + 1 < branches.size(); ++i) {
      if (x.certainly_le(right[i])) {
        pos = i;
        break;
      }
      if (!x.certainly_gt(right[i])) break;
      if (i + 2 == branches.size()) pos = i + 1;
    }
    if (!pos) {
      out.exhausted_at = k;
      return out;
    }
    const size_t leaf = branches[*pos].leaf;
    out.points.push_back({x.mid(), y.mid(), leaf});
    if (k + 1 == count) break;
    try {
      x = apply(inv[*pos], x);
      y = apply(dm[leaf], y);
    } catch (const DomainError&) {
      out.exhausted_at = k + 1;
      return out;
    }
  }
  return out;
}

}  // namespace

OrbitResult orbit(const DensityContext& ctx, const AlgebraicNumber& x0, const AlgebraicNumber& y0, size_t count,
                  const OrbitOptions& options) {
  if (count == 0) return {};
  if (options.mode == OrbitMode::Exact) return orbit_exact(ctx, x0, y0, count, options);
  return orbit_interval(ctx, x0, y0, count, options);
}

// ---------------------------------------------------------------------------

namespace {

void poincare_visit(const std::vector<Eigen::Matrix2d>& gens, const Eigen::Matrix2d& p, int len, int n,
                    std::vector<double>& per_length) {
  per_length[static_cast<size_t>(len)] += std::exp(-hyperbolic_displacement(p));
  if (len == n) return;
  for (const Eigen::Matrix2d& g : gens) poincare_visit(gens, p * g, len + 1, n, per_length);
}

}  // namespace

std::vector<double> poincare_partial_sums(const DecoratedTree& tree, int n, unsigned long long budget) {
  if (n < 0) throw DomainError("word length must be nonnegative");
  unsigned long long count = 1, layer = 1;
  for (int k = 1; k <= n; ++k) {
    layer *= tree.size();
    count += layer;
    if (count > budget)
      throw BudgetError("poincare: word budget exceeded, more than " + std::to_string(budget) + " words up to length " + std::to_string(n));
  }
  std::vector<Eigen::Matrix2d> gens;
  for (const Word& w : tree.leaves()) gens.push_back(embed_a(tree.field(), w).to_matrix());
  std::vector<double> per_length(static_cast<size_t>(n) + 1, 0.0);
  poincare_visit(gens, Eigen::Matrix2d::Identity(), 0, n, per_length);
  std::vector<double> sums;
  double acc = 0.0;
  for (double v : per_length) sums.push_back(acc += v);
  return sums;
}

}  // namespace heckecf
