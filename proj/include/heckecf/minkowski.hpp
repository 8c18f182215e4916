#pragma once

#include <string>
#include <vector>

#include "heckecf/interval.hpp"
#include "heckecf/symbolic.hpp"

namespace heckecf {

struct DigitStream {
  std::vector<int> digits;
  /// The point reached an endpoint fixed by B_1 or B_{m-1}, so the expansion
  /// continues with a constant digit.
  bool exact_tail = false;
};

/// First n digits of x under the full-branch map {1..m-1}; lower branch at ties.
DigitStream minkowski_digits(const Field& field, const AlgebraicNumber& x, int n);

/// Truncated value sum_{k<n} (d_k - 1)(m-1)^-(k+1); within (m-1)^-n of M(x).
Rational minkowski_evaluate(const Field& field, const AlgebraicNumber& x, int n);

/// Bracket B_{j_0}...B_{j_{n-1}}[0, 1/lambda] driven by the base-(m-1) digits
/// of y (terminating expansions preferred, y = 1 maps to all m-1).
ClosedInterval minkowski_invert(const Field& field, const Rational& y, int n);

/// |M_n(B_w x) - C_w(M_{n+level(w)}(x))|.
Rational conjugacy_residual(const Field& field, const Word& w, const AlgebraicNumber& x, int n);

struct HoelderData {
  int m;
  AlgebraicNumber t;  ///< Frobenius norm squared of A_{floor(m/2)}
  Interval rho_sq;    ///< (t + sqrt(t^2 - 4))/2
  Interval rho;
  Interval alpha;     ///< log(m-1) / (2 log rho)
};

/// Enclosures of width below 2^-precision_bits (roughly).
HoelderData hoelder(const Field& field, unsigned precision_bits = 128);

struct JsrBounds {
  double lower;
  double upper;
  int lower_length;  ///< product length attaining the lower bound
  int upper_length;  ///< product length attaining the upper bound
  unsigned long long products;
};

/// Brute force over all products of A_1..A_{m-1} of length <= n_max.
/// Throws BudgetError if n_max > max_length or the product count exceeds budget.
JsrBounds jsr_bruteforce(const Field& field, int n_max, int max_length = 10,
                         unsigned long long budget = 200'000'000ULL);

struct WitnessRow {
  int k;
  ClosedInterval cylinder;   ///< cylinder of (m - floor(m/2), floor(m/2))^k
  AlgebraicNumber length;
  Rational m_increment;      ///< (m-1)^-2k
  double ratio_alpha;        ///< m_increment / length^alpha
  double ratio_alpha_plus;   ///< m_increment / length^(alpha + 0.05)
};

std::vector<WitnessRow> optimality_witness(const Field& field, int n);

}  // namespace heckecf
