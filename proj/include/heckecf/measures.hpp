#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "heckecf/attractor.hpp"
#include "heckecf/interval.hpp"

namespace heckecf {

/// Unit: x in [0, 1/lambda], branches B_s. Infinite: x in [0, inf], branches
/// A_s; the two are related by x_unit = L(x_inf), y_unit = L(y_inf).
enum class Picture { Unit, Infinite };
const char* to_string(Picture p);
Picture parse_picture(std::string_view s);

/// Branch data in floating point for one picture.
struct NumericBranch {
  size_t leaf;
  Eigen::Matrix2d forward;  ///< B_{s_leaf} or A_{s_leaf}
  Eigen::Matrix2d dual;     ///< B_{sharp s_leaf} or A_{sharp s_leaf}
  Eigen::Matrix<long double, 2, 2> dual_ld;  ///< dual, rounded to long double
  double lo, hi;            ///< forward domain; hi may be +inf
};

class DensityContext {
 public:
  DensityContext(DecoratedTree tree, Picture picture, int max_level = kDefaultMaxLevel);

  const DecoratedTree& tree() const { return tree_; }
  Picture picture() const { return picture_; }
  const AttractorResult& attractor() const { return *attractor_; }
  const FareyMap& farey() const { return *farey_; }
  const DualMap& dual() const { return *dual_; }
  /// Sorted left to right, in the context's picture.
  const std::vector<NumericBranch>& numeric_branches() const { return branches_; }
  double lambda() const { return lambda_; }
  long double lambda_ld() const { return lambda_ld_; }

  /// Unit-picture cover at the given level (iterating further when needed).
  IntervalUnion cover(int level) const;

 private:
  DecoratedTree tree_;
  Picture picture_;
  std::shared_ptr<AttractorResult> attractor_;
  std::shared_ptr<FareyMap> farey_;
  std::shared_ptr<DualMap> dual_;
  std::vector<NumericBranch> branches_;
  double lambda_;
  long double lambda_ld_;
  std::shared_ptr<std::mutex> mutex_;
  std::shared_ptr<AttractorResult> deep_;
};

/// Unit: (1 - lx - ly + (l^2+1)xy)^-2. Infinite: (1 + xy)^-2.
double eta_density(const DensityContext& ctx, double x, double y);
/// Unit: 1/((1 - l y) y). Infinite: 1/y.
double nu_density(const DensityContext& ctx, double y);

struct DensityValue {
  double value;
  double error_bound;
};

/// Integral of eta(x, .) over the level cover (mapped into the context's
/// picture). error_bound = (|cover_level| - |cover_level+1|) * sup of the
/// integrand over cover_level, measured in the unit picture and zero once the
/// cover is an exact fixed point. This is a one-level estimate, not a bound:
/// near a parabolic point the true distance to the limit can be much larger.
DensityValue mu_density(const DensityContext& ctx, double x, int level = kDefaultMaxLevel);

enum class Side { Forward, Dual };

/// |sum_i h(g_i(p)) |g_i'(p)| - h(p)| over the branches g_i of the chosen
/// side. Default h: mu_density at `level` (forward) or nu_density (dual, in
/// long double).
double transfer_residual(const DensityContext& ctx, Side side, double point,
                         const std::function<double(double)>& h = {}, int level = kDefaultMaxLevel);

/// Relative defect |eta(F_e(x, y)) J - eta(x, y)| / eta(x, y) of the forward
/// natural-extension map, with J its Jacobian.
double eta_invariance_residual(const DensityContext& ctx, double x, double y);

/// Exact point of U x V in the unit picture.
struct ExtensionPoint {
  AlgebraicNumber x;
  AlgebraicNumber y;
};

enum class Direction { Forward, Backward };

/// Forward: (F(x), B_{sharp s_i(x)}(y)). Backward: (B_{s_i(y)}(x), F_sharp(y)).
ExtensionPoint natural_extension_step(const DensityContext& ctx, const ExtensionPoint& p, Direction d);

enum class OrbitMode { Exact, Interval };

struct OrbitOptions {
  OrbitMode mode = OrbitMode::Exact;
  unsigned precision_bits = 256;
  bool keep_exact = false;  ///< exact mode: retain exact y values
};

struct OrbitPoint {
  double x;
  double y;
  size_t leaf;  ///< branch index i(x) used to leave this point
};

struct OrbitResult {
  std::vector<OrbitPoint> points;
  /// Interval mode: step at which a branch could not be decided.
  std::optional<size_t> exhausted_at;
  std::vector<AlgebraicNumber> exact_y;
};

/// Forward orbit of (x0, y0) in the unit picture; points[0] is the seed.
/// x0 may live in a different field than the tree when the tree's matrices
/// are rational. Interval mode stops at precision exhaustion and reports the
/// step; exact mode never does.
OrbitResult orbit(const DensityContext& ctx, const AlgebraicNumber& x0, const AlgebraicNumber& y0, size_t count,
                  const OrbitOptions& options = {});

/// S_0..S_n with S_k = sum over leaf words v of length <= k of exp(-d(i, A_v i)).
/// Throws BudgetError when the number of words exceeds budget.
std::vector<double> poincare_partial_sums(const DecoratedTree& tree, int n,
                                          unsigned long long budget = 50'000'000ULL);

}  // namespace heckecf
