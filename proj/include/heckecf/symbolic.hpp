#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "heckecf/hecke.hpp"

namespace heckecf {

/// Token value used for the flip letter f in raw (unnormalized) sequences.
inline constexpr int kFlip = 0;

/// Element of the monoid over {1..m-1, f} in normal form: digits followed by
/// at most one trailing f.
struct Word {
  std::vector<int> digits;
  bool fflag = false;

  int level() const { return static_cast<int>(digits.size()); }
  bool empty() const { return digits.empty() && !fflag; }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& x, const Word& y) {
    if (auto c = x.digits <=> y.digits; c != 0) return c;
    return x.fflag <=> y.fflag;
  }
};

/// Applies fj -> (m-j)f until no f precedes a digit; two f's cancel.
Word normal_form(int m, std::span<const int> raw);

/// Parses "12f", "f2", ... Digits are single characters unless the text
/// contains '.', in which case tokens are '.'-separated ("10.3f", "f.2").
Word parse_word(int m, std::string_view text);
std::string to_string(int m, const Word& w);

/// Raw letters of w (digits, then kFlip if flagged).
std::vector<int> letters(const Word& w);

Word concat(int m, const Word& v, const Word& w);
/// Reverses the word, maps j to m-j, keeps f, and normalizes.
Word sharp(int m, const Word& w);
/// Maps every digit j to m-j and keeps the decoration (conjugation by f).
Word flip_digits(int m, const Word& w);

/// x -> a x + b.
struct AffineMap {
  Rational a = 1;
  Rational b = 0;

  Rational operator()(const Rational& x) const { return a * x + b; }
  /// Composition: (f * g)(x) = f(g(x)).
  friend AffineMap operator*(const AffineMap& f, const AffineMap& g) { return {f.a * g.a, f.a * g.b + f.b}; }
  friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

/// A_j for j = 1..m-1, cached per field. Index 0 holds A_f = F.
const std::vector<GroupElement>& a_matrices(const Field& field);

GroupElement embed_a(const Field& field, const Word& w);
/// B_w = L A_w L^-1.
GroupElement embed_b(const Field& field, const Word& w);
/// C_j(x) = (x + j - 1)/(m - 1), C_f(x) = 1 - x.
AffineMap embed_c(int m, const Word& w);

/// Validated decorated tree: the undecorated leaves form a complete
/// (m-1)-ary tree that is not reduced to the root.
class DecoratedTree {
 public:
  /// Throws DomainError naming the violated condition.
  static DecoratedTree validate(int m, std::vector<Word> leaves);

  int m() const { return m_; }
  const Field& field() const { return field_; }
  const std::vector<Word>& leaves() const { return leaves_; }
  size_t size() const { return leaves_.size(); }

  /// Leaves sharp(s_i), in the same order.
  std::vector<Word> sharp_leaves() const;

  std::string to_string() const;

 private:
  DecoratedTree(int m, Field field, std::vector<Word> leaves)
      : m_(m), field_(std::move(field)), leaves_(std::move(leaves)) {}

  int m_;
  Field field_;
  std::vector<Word> leaves_;
};

/// Comma-separated leaves, e.g. "1,2f" or "111,112,12,21,221,222".
DecoratedTree parse_tree(int m, std::string_view text);

/// Sum over leaves of (m-1)^-level, exactly.
Rational completeness_sum(int m, std::span<const Word> leaves);

struct FareyBranch {
  size_t leaf;            ///< index into tree.leaves()
  GroupElement element;   ///< B_{s_leaf}
  ClosedInterval domain;  ///< B_{s_leaf}[0, 1/lambda]
};

struct FareyEval {
  size_t branch;  ///< position in the left-to-right branch list
  size_t leaf;
  AlgebraicNumber value;
};

/// The piecewise-Moebius map whose inverse branches are the B_{s_i}.
class FareyMap {
 public:
  explicit FareyMap(const DecoratedTree& tree);

  const DecoratedTree& tree() const { return tree_; }
  /// Sorted left to right by domain.
  const std::vector<FareyBranch>& branches() const { return branches_; }

  /// Branch containing x, the leftmost one at shared endpoints.
  size_t branch_index(const AlgebraicNumber& x) const;
  /// F(x) with the same convention. Throws DomainError outside [0, 1/lambda].
  FareyEval evaluate(const AlgebraicNumber& x) const;

 private:
  DecoratedTree tree_;
  std::vector<FareyBranch> branches_;
};

/// Leaves are the n-fold products of the original leaves, in lexicographic
/// order of the factor indices.
DecoratedTree tree_power(const DecoratedTree& tree, int n);

/// m = 3 leaves {1^n} and {1^q 2f : 0 <= q < n}.
DecoratedTree jump_tree(int n);

enum class SelfdualEvidence { SelfdualByLeafInvariance, SelfdualByFlip, Unknown };
SelfdualEvidence selfdual_sufficient(const DecoratedTree& tree);
const char* to_string(SelfdualEvidence e);

}  // namespace heckecf
