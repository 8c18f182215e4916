#include "heckecf/attractor.hpp"

#include <algorithm>

namespace heckecf {

IntervalUnion::IntervalUnion(std::vector<ClosedInterval> parts) {
  std::sort(parts.begin(), parts.end(), [](const ClosedInterval& x, const ClosedInterval& y) {
    const int c = compare(x.lo, y.lo);
    if (c != 0) return c < 0;
    return x.hi < y.hi;
  });
  for (ClosedInterval& iv : parts) {
    if (!parts_.empty() && iv.lo <= parts_.back().hi) {
      if (iv.hi > parts_.back().hi) parts_.back().hi = std::move(iv.hi);
    } else {
      parts_.push_back(std::move(iv));
    }
  }
}

size_t IntervalUnion::point_count() const {
  return static_cast<size_t>(std::count_if(parts_.begin(), parts_.end(), [](const ClosedInterval& iv) { return iv.is_point(); }));
}

AlgebraicNumber IntervalUnion::total_length(const Field& field) const {
  AlgebraicNumber sum(field);
  for (const ClosedInterval& iv : parts_) sum += iv.length();
  return sum;
}

namespace {

// Index of the last part whose lo is <= x, or -1.
long locate(const std::vector<ClosedInterval>& parts, const AlgebraicNumber& x) {
  long lo = 0, hi = static_cast<long>(parts.size()) - 1, found = -1;
  while (lo <= hi) {
    const long mid = (lo + hi) / 2;
    if (parts[static_cast<size_t>(mid)].lo <= x) {
      found = mid;
      lo = mid + 1;
    } else {
      hi = mid - 1;
    }
  }
  return found;
}

}  // namespace

bool IntervalUnion::contains(const AlgebraicNumber& x) const {
  const long i = locate(parts_, x);
  return i >= 0 && x <= parts_[static_cast<size_t>(i)].hi;
}

bool IntervalUnion::subset_of(const IntervalUnion& other) const {
  for (const ClosedInterval& iv : parts_) {
    const long i = locate(other.parts_, iv.lo);
    if (i < 0 || iv.hi > other.parts_[static_cast<size_t>(i)].hi) return false;
  }
  return true;
}

bool IntervalUnion::has_component(const ClosedInterval& iv) const {
  const long i = locate(parts_, iv.lo);
  return i >= 0 && parts_[static_cast<size_t>(i)] == iv;
}

ClosedInterval IntervalUnion::hull() const {
  if (parts_.empty()) throw DomainError("hull of an empty union");
  return {parts_.front().lo, parts_.back().hi};
}

AlgebraicNumber intersection_length(const Field& field, const IntervalUnion& x, const IntervalUnion& y) {
  AlgebraicNumber sum(field);
  size_t i = 0, j = 0;
  const auto& a = x.parts();
  const auto& b = y.parts();
  while (i < a.size() && j < b.size()) {
    const AlgebraicNumber& lo = max(a[i].lo, b[j].lo);
    const AlgebraicNumber& hi = min(a[i].hi, b[j].hi);
    if (lo < hi) sum += hi - lo;
    if (a[i].hi < b[j].hi)
      ++i;
    else
      ++j;
  }
  return sum;
}

IntervalUnion image(const GroupElement& g, const IntervalUnion& u) {
  std::vector<ClosedInterval> parts;
  parts.reserve(u.size());
  for (const ClosedInterval& iv : u.parts()) parts.push_back(interval_image(g, iv));
  return IntervalUnion(std::move(parts));
}

IntervalUnion hutchinson_step(std::span<const GroupElement> maps, const IntervalUnion& u) {
  std::vector<ClosedInterval> parts;
  parts.reserve(maps.size() * u.size());
  for (const GroupElement& g : maps)
    for (const ClosedInterval& iv : u.parts()) parts.push_back(interval_image(g, iv));
  return IntervalUnion(std::move(parts));
}

std::vector<GroupElement> dual_ifs(const DecoratedTree& tree) {
  std::vector<GroupElement> maps;
  for (const Word& w : tree.sharp_leaves()) maps.push_back(embed_b(tree.field(), w));
  return maps;
}

const char* to_string(AttractorStatus s) {
  return s == AttractorStatus::ExactFixedPoint ? "ExactFixedPoint" : "CoverOnly";
}

namespace {

// One more level; returns false once the iteration has reached a fixed point.
bool extend(AttractorResult& r, const std::vector<GroupElement>& maps) {
  if (r.status == AttractorStatus::ExactFixedPoint) return false;
  IntervalUnion next = hutchinson_step(maps, r.covers.back());
  const int k = static_cast<int>(r.covers.size());
  if (next == r.covers.back()) {
    r.status = AttractorStatus::ExactFixedPoint;
    r.level = k - 1;
    r.cover = r.covers.back();
    return false;
  }
  r.component_history.emplace_back(k, next.size());
  r.covers.push_back(std::move(next));
  r.level = k;
  r.cover = r.covers.back();
  return true;
}

}  // namespace

AttractorResult attractor_cover(const DecoratedTree& tree, int max_level) {
  if (max_level < 0) throw DomainError("max_level must be nonnegative");
  IntervalUnion start({unit_interval(tree.field())});
  AttractorResult r{tree, AttractorStatus::CoverOnly, start, 0, {start}, {{0, 1}}};
  const std::vector<GroupElement> maps = dual_ifs(tree);
  for (int k = 1; k <= max_level; ++k)
    if (!extend(r, maps)) break;
  if (r.status == AttractorStatus::CoverOnly && max_level > 0) {
    // Detect a fixed point reached exactly at max_level.
    IntervalUnion next = hutchinson_step(maps, r.covers.back());
    if (next == r.covers.back()) r.status = AttractorStatus::ExactFixedPoint;
  }
  return r;
}

const IntervalUnion& cover_at(AttractorResult& result, int level) {
  if (level < 0) throw DomainError("level must be nonnegative");
  if (level < static_cast<int>(result.covers.size())) return result.covers[static_cast<size_t>(level)];
  const std::vector<GroupElement> maps = dual_ifs(result.tree);
  while (static_cast<int>(result.covers.size()) <= level)
    if (!extend(result, maps)) return result.cover;
  return result.covers[static_cast<size_t>(level)];
}

const char* to_string(CensusHint h) {
  switch (h) {
    case CensusHint::FinitelyManyIntervals:
      return "FinitelyManyIntervals";
    case CensusHint::CountableMix:
      return "CountableMix";
    case CensusHint::Fractal:
      return "Fractal";
  }
  return "CountableMix";
}

Census component_census(const AttractorResult& result) {
  Census c;
  c.counts = result.component_history;
  for (size_t k = 0; k < result.covers.size(); ++k)
    c.point_counts.emplace_back(static_cast<int>(k), result.covers[k].point_count());
  const size_t n = c.counts.size();
  c.stabilized = result.status == AttractorStatus::ExactFixedPoint ||
                 (n >= 3 && c.counts[n - 1].second == c.counts[n - 2].second &&
                  c.counts[n - 2].second == c.counts[n - 3].second);
  if (c.stabilized) {
    c.hint = CensusHint::FinitelyManyIntervals;
  } else {
    // Geometric growth of the component count points to a Cantor-like part;
    // slower growth to countably many components accumulating somewhere.
    bool geometric = n >= 3;
    for (size_t k = n >= 3 ? n - 2 : n; k < n; ++k)
      if (static_cast<double>(c.counts[k].second) < 1.5 * static_cast<double>(c.counts[k - 1].second)) geometric = false;
    c.hint = geometric ? CensusHint::Fractal : CensusHint::CountableMix;
  }
  return c;
}

// ---------------------------------------------------------------------------

DualMap::DualMap(const DecoratedTree& tree, const AttractorResult& result) : cover_(result.cover) {
  if (tree.m() != result.tree.m() || tree.leaves() != result.tree.leaves())
    throw DomainError("attractor result belongs to a different tree");
  const ClosedInterval hull = cover_.hull();
  const std::vector<Word> sharp_leaves = tree.sharp_leaves();
  for (size_t i = 0; i < tree.size(); ++i) {
    GroupElement b = embed_b(tree.field(), sharp_leaves[i]);
    ClosedInterval dom = interval_image(b, hull);
    IntervalUnion dom_union = image(b, cover_);
    branches_.push_back({i, sharp_leaves[i], std::move(b), std::move(dom), std::move(dom_union)});
  }
}

size_t DualMap::branch_index(const AlgebraicNumber& y) const {
  for (size_t i = 0; i < branches_.size(); ++i)
    if (branches_[i].domain_union.contains(y)) return i;
  throw DomainError("point " + y.to_string() + " lies in no dual branch domain");
}

AlgebraicNumber DualMap::evaluate(const AlgebraicNumber& y) const {
  return moebius_apply(branches_[branch_index(y)].element.inverse(), y);
}

AlgebraicNumber overlap_measure(const DecoratedTree& tree, AttractorResult& result, int level) {
  const IntervalUnion& cover = cover_at(result, level);
  std::vector<IntervalUnion> images;
  for (const GroupElement& g : dual_ifs(tree)) images.push_back(image(g, cover));
  AlgebraicNumber sum(tree.field());
  for (size_t i = 0; i < images.size(); ++i)
    for (size_t j = i + 1; j < images.size(); ++j) sum += intersection_length(tree.field(), images[i], images[j]);
  return sum;
}

AlgebraicNumber overlap_measure(const DecoratedTree& tree, int level) {
  AttractorResult r = attractor_cover(tree, level);
  return overlap_measure(tree, r, level);
}

std::vector<GroupElement> renamed_dual_branches(const DecoratedTree& tree) {
  std::vector<GroupElement> maps = dual_ifs(tree);
  const AlgebraicNumber mid = AlgebraicNumber::lambda(tree.field()).inverse() * Rational(1, 2);
  std::vector<std::pair<AlgebraicNumber, size_t>> keys;
  for (size_t i = 0; i < maps.size(); ++i) keys.emplace_back(moebius_apply(maps[i], mid), i);
  std::sort(keys.begin(), keys.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<GroupElement> out;
  for (const auto& k : keys) out.push_back(maps[k.second]);
  return out;
}

std::vector<ClosedInterval> level_cylinders(const DecoratedTree& tree, int level) {
  if (level < 0) throw DomainError("level must be nonnegative");
  const std::vector<GroupElement> d = renamed_dual_branches(tree);
  std::vector<ClosedInterval> cyl{unit_interval(tree.field())};
  for (int n = 0; n < level; ++n) {
    std::vector<ClosedInterval> next;
    next.reserve(cyl.size() * d.size());
    for (const GroupElement& g : d)
      for (const ClosedInterval& iv : cyl) next.push_back(interval_image(g, iv));
    cyl = std::move(next);
  }
  return cyl;
}

bool components_disjointness(std::span<const ClosedInterval> cylinders, size_t q, std::span<const int> v) {
  size_t idx = 0;
  for (int j : v) {
    if (j < 1 || static_cast<size_t>(j) > q) throw DomainError("letter " + std::to_string(j) + " outside 1..q");
    idx = idx * q + static_cast<size_t>(j - 1);
  }
  if (idx >= cylinders.size()) throw DomainError("word length does not match the cylinder level");
  const ClosedInterval& c = cylinders[idx];
  for (size_t k = 0; k < cylinders.size(); ++k) {
    if (k == idx) continue;
    const ClosedInterval& o = cylinders[k];
    if (!(c.hi < o.lo || o.hi < c.lo)) return false;
  }
  return true;
}

bool components_disjointness(const DecoratedTree& tree, std::span<const int> v, int level) {
  if (static_cast<int>(v.size()) != level) throw DomainError("word length must equal the level");
  const std::vector<ClosedInterval> cyl = level_cylinders(tree, level);
  return components_disjointness(cyl, tree.size(), v);
}

}  // namespace heckecf
