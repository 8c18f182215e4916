#pragma once

#include <optional>
#include <vector>

#include "heckecf/symbolic.hpp"

namespace heckecf {

/// Finite union of closed intervals, sorted, with overlapping or touching
/// intervals merged. Point intervals are allowed.
class IntervalUnion {
 public:
  IntervalUnion() = default;
  explicit IntervalUnion(std::vector<ClosedInterval> parts);  ///< normalizes

  const std::vector<ClosedInterval>& parts() const { return parts_; }
  size_t size() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }
  size_t point_count() const;

  AlgebraicNumber total_length(const Field& field) const;
  bool contains(const AlgebraicNumber& x) const;
  /// Every interval of *this lies inside some interval of other.
  bool subset_of(const IntervalUnion& other) const;
  /// Some component equals iv exactly.
  bool has_component(const ClosedInterval& iv) const;
  ClosedInterval hull() const;

  friend bool operator==(const IntervalUnion& x, const IntervalUnion& y) { return x.parts_ == y.parts_; }

 private:
  std::vector<ClosedInterval> parts_;
};

/// Total length of x ∩ y.
AlgebraicNumber intersection_length(const Field& field, const IntervalUnion& x, const IntervalUnion& y);

IntervalUnion image(const GroupElement& g, const IntervalUnion& u);

/// Union over maps and intervals of g[iv], merged.
IntervalUnion hutchinson_step(std::span<const GroupElement> maps, const IntervalUnion& u);

/// The dual IFS {B_{sharp s_i}} in leaf order.
std::vector<GroupElement> dual_ifs(const DecoratedTree& tree);

enum class AttractorStatus { ExactFixedPoint, CoverOnly };
const char* to_string(AttractorStatus s);

struct AttractorResult {
  DecoratedTree tree;
  AttractorStatus status;
  IntervalUnion cover;  ///< covers.at(level)
  int level;            ///< first level whose cover is fixed, or max_level
  std::vector<IntervalUnion> covers;  ///< covers[k] = level-k iterate from [0, 1/lambda]
  std::vector<std::pair<int, size_t>> component_history;
};

inline constexpr int kDefaultMaxLevel = 8;

/// Iterates the dual Hutchinson operator from [0, 1/lambda]. Stops when two
/// consecutive covers agree exactly, otherwise after max_level steps.
AttractorResult attractor_cover(const DecoratedTree& tree, int max_level = kDefaultMaxLevel);

/// Cover at the given level, extending the iteration when needed.
const IntervalUnion& cover_at(AttractorResult& result, int level);

enum class CensusHint { FinitelyManyIntervals, CountableMix, Fractal };
const char* to_string(CensusHint h);

/// Finite-level evidence only.
struct Census {
  std::vector<std::pair<int, size_t>> counts;
  std::vector<std::pair<int, size_t>> point_counts;
  bool stabilized;
  CensusHint hint;
};

Census component_census(const AttractorResult& result);

struct DualBranch {
  size_t leaf;
  Word word;                ///< sharp(s_leaf)
  GroupElement element;     ///< B_{sharp s_leaf}
  ClosedInterval domain;    ///< image of the cover hull
  IntervalUnion domain_union;  ///< image of the cover itself
};

class DualMap {
 public:
  DualMap(const DecoratedTree& tree, const AttractorResult& result);

  const std::vector<DualBranch>& branches() const { return branches_; }
  const IntervalUnion& cover() const { return cover_; }

  /// Minimum leaf index whose domain contains y. Throws DomainError if none.
  size_t branch_index(const AlgebraicNumber& y) const;
  /// F_sharp(y).
  AlgebraicNumber evaluate(const AlgebraicNumber& y) const;

 private:
  std::vector<DualBranch> branches_;
  IntervalUnion cover_;
};

/// Sum over pairs i < j of |B_{sharp s_i}[C] ∩ B_{sharp s_j}[C]| with C the
/// level cover.
AlgebraicNumber overlap_measure(const DecoratedTree& tree, int level);
AlgebraicNumber overlap_measure(const DecoratedTree& tree, AttractorResult& result, int level);

/// Dual branches renamed D_1..D_q by increasing D_i(1/(2 lambda)).
std::vector<GroupElement> renamed_dual_branches(const DecoratedTree& tree);

/// All level-n cylinders D_{w_0}...D_{w_{n-1}}[0, 1/lambda], indexed by
/// words over 1..q in lexicographic order.
std::vector<ClosedInterval> level_cylinders(const DecoratedTree& tree, int level);

/// True iff the cylinder of v (renamed alphabet, length = level) is disjoint
/// from every other cylinder of the same level.
bool components_disjointness(const DecoratedTree& tree, std::span<const int> v, int level);
/// Same check against precomputed level_cylinders.
bool components_disjointness(std::span<const ClosedInterval> cylinders, size_t q, std::span<const int> v);

}  // namespace heckecf
