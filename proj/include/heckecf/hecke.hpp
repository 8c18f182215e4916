#pragma once

#include <Eigen/Dense>

#include <array>
#include <span>
#include <string>

#include "heckecf/field.hpp"

namespace heckecf {

/// Element of the extended Hecke group: a 2x2 matrix over Z[lambda] with
/// determinant +1 or -1, stored as the unique representative of its projective
/// class whose first nonzero entry (row-major) is positive.
class GroupElement {
 public:
  /// Throws DomainError unless ad - bc = +-1 exactly.
  GroupElement(AlgebraicNumber a, AlgebraicNumber b, AlgebraicNumber c, AlgebraicNumber d);

  static GroupElement identity(const Field& field);

  const AlgebraicNumber& a() const { return a_; }
  const AlgebraicNumber& b() const { return b_; }
  const AlgebraicNumber& c() const { return c_; }
  const AlgebraicNumber& d() const { return d_; }
  int det() const { return det_; }
  const Field& field() const { return a_.field(); }

  GroupElement operator*(const GroupElement& rhs) const;
  GroupElement inverse() const;
  GroupElement transpose() const;

  /// Same matrix over another field; requires rational entries unless the
  /// fields coincide.
  GroupElement lifted_to(const Field& target) const;

  /// Entries as doubles, row-major.
  Eigen::Matrix2d to_matrix() const;

  std::string to_string() const;

  friend bool operator==(const GroupElement& x, const GroupElement& y);
  friend bool operator!=(const GroupElement& x, const GroupElement& y) { return !(x == y); }

 private:
  AlgebraicNumber a_, b_, c_, d_;
  int det_;
};

enum class Generator { L, S, F, R };

GroupElement generator(const Field& field, Generator name);
/// Parses "L", "S", "F" or "R".
Generator parse_generator(std::string_view name);

/// A_j = S R^{-j} for j in 1..m-1.
GroupElement a_digit(const Field& field, int j);

/// Point of the projective line: num/den, canonicalized to den = 1 (finite) or
/// num = 1, den = 0 (infinity).
class ProjectivePoint {
 public:
  explicit ProjectivePoint(AlgebraicNumber value);
  ProjectivePoint(AlgebraicNumber num, AlgebraicNumber den);
  static ProjectivePoint infinity(const Field& field);

  bool is_infinite() const { return den_.is_zero(); }
  /// Finite value; throws DomainError at infinity.
  const AlgebraicNumber& value() const;
  const AlgebraicNumber& num() const { return num_; }
  const AlgebraicNumber& den() const { return den_; }

  std::string to_string() const;

  friend bool operator==(const ProjectivePoint& x, const ProjectivePoint& y) {
    return x.num_ == y.num_ && x.den_ == y.den_;
  }

 private:
  AlgebraicNumber num_, den_;
};

/// Compares points of [0, infinity] in the real order (infinity is largest).
int compare(const ProjectivePoint& x, const ProjectivePoint& y);

/// Finite closed interval [lo, hi] with exact endpoints.
struct ClosedInterval {
  AlgebraicNumber lo;
  AlgebraicNumber hi;

  AlgebraicNumber length() const { return hi - lo; }
  bool is_point() const { return lo == hi; }
  bool contains(const AlgebraicNumber& x) const { return lo <= x && x <= hi; }
  friend bool operator==(const ClosedInterval& x, const ClosedInterval& y) { return x.lo == y.lo && x.hi == y.hi; }
};

/// Closed interval of the boundary whose endpoints may include infinity.
struct BoundaryInterval {
  ProjectivePoint lo;
  ProjectivePoint hi;

  bool is_finite() const { return !lo.is_infinite() && !hi.is_infinite(); }
  ClosedInterval finite() const { return {lo.value(), hi.value()}; }
};

/// [0, 1/lambda].
ClosedInterval unit_interval(const Field& field);
/// [0, infinity].
BoundaryInterval half_line(const Field& field);

ProjectivePoint moebius_apply(const GroupElement& g, const ProjectivePoint& p);
/// Finite image of a finite point; throws DomainError at a pole.
AlgebraicNumber moebius_apply(const GroupElement& g, const AlgebraicNumber& x);

/// Image of an interval; endpoints are swapped when g reverses orientation.
/// Throws DomainError if the pole of g lies in the interior of iv.
BoundaryInterval interval_image(const GroupElement& g, const BoundaryInterval& iv);
ClosedInterval interval_image(const GroupElement& g, const ClosedInterval& iv);

/// t = a^2 + b^2 + c^2 + d^2. Since the singular values are s and 1/s,
/// ||g||_2^2 = (t + sqrt(t^2 - 4)) / 2.
AlgebraicNumber frobenius_sq(const GroupElement& g);
double spectral_norm(const GroupElement& g);
/// Spectral norm of a numeric 2x2 matrix of determinant +-1 from its Frobenius norm.
double spectral_norm_from_frobenius_sq(double t);

/// Hyperbolic distance d(i, g(i)) in the upper half-plane, evaluated as
/// arcosh(1 + |z - i|^2 / (2 Im z)) with z = g(i) (anti-holomorphic action
/// for det = -1). Computed with verified intervals good to `digits` digits.
double hyperbolic_displacement(const GroupElement& g, int digits = 17);
/// Same formula on a numeric matrix of determinant +-1.
double hyperbolic_displacement(const Eigen::Matrix2d& g);

using ExactMatrix3 = std::array<std::array<AlgebraicNumber, 3>, 3>;

/// The embedding of PSL_2(R) into SO(2,1); det(g) must be +1.
ExactMatrix3 so21_embed(const GroupElement& g);
Eigen::Matrix3d so21_embed_numeric(const GroupElement& g);
/// Maximal absolute row sum, exactly.
AlgebraicNumber infinity_norm(const ExactMatrix3& m);

struct Cylinder {
  ClosedInterval interval;   ///< B_{j0}...B_{j(n-1)}[0, 1/lambda]
  AlgebraicNumber length;    ///< ((lambda a + c)(lambda b + d))^-1
  GroupElement a_product;    ///< A_{j0}...A_{j(n-1)} = (a b; c d)
};

/// Cylinder of a nonempty digit word over 1..m-1.
Cylinder cylinder(const Field& field, std::span<const int> digits);

}  // namespace heckecf
