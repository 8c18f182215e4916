#include "heckecf/symbolic.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <mutex>
#include <set>

namespace heckecf {
namespace {

void check_digit(int m, int j) {
  if (j < 1 || j > m - 1)
    throw DomainError("digit " + std::to_string(j) + " out of range 1.." + std::to_string(m - 1));
}

std::vector<int> parse_letters(int m, std::string_view text) {
  std::vector<int> raw;
  const bool dotted = text.find('.') != std::string_view::npos;
  if (!dotted) {
    for (char ch : text) {
      if (ch == 'f' || ch == 'F') {
        raw.push_back(kFlip);
      } else if (ch >= '1' && ch <= '9') {
        raw.push_back(ch - '0');
      } else {
        throw DomainError(std::string("unexpected character '") + ch + "' in word \"" + std::string(text) + "\"");
      }
    }
  } else {
    size_t pos = 0;
    while (pos <= text.size()) {
      const size_t next = std::min(text.find('.', pos), text.size());
      std::string_view tok = text.substr(pos, next - pos);
      if (tok.empty()) throw DomainError("empty token in word \"" + std::string(text) + "\"");
      size_t i = 0;
      while (i < tok.size() && tok[i] >= '0' && tok[i] <= '9') ++i;
      if (i > 0) {
        int j = 0;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + i, j);
        if (ec != std::errc()) throw DomainError("bad digit token \"" + std::string(tok) + "\"");
        raw.push_back(j);
      }
      for (; i < tok.size(); ++i) {
        if (tok[i] != 'f' && tok[i] != 'F')
          throw DomainError("bad token \"" + std::string(tok) + "\" in word \"" + std::string(text) + "\"");
        raw.push_back(kFlip);
      }
      pos = next + 1;
    }
  }
  for (int t : raw)
    if (t != kFlip) check_digit(m, t);
  return raw;
}

}  // namespace

Word normal_form(int m, std::span<const int> raw) {
  Word w;
  bool flipped = false;
  for (int t : raw) {
    if (t == kFlip) {
      flipped = !flipped;
      continue;
    }
    check_digit(m, t);
    w.digits.push_back(flipped ? m - t : t);
  }
  w.fflag = flipped;
  return w;
}

Word parse_word(int m, std::string_view text) {
  const std::vector<int> raw = parse_letters(m, text);
  return normal_form(m, raw);
}

std::string to_string(int m, const Word& w) {
  std::string s;
  const bool dotted = m > 10;
  for (size_t i = 0; i < w.digits.size(); ++i) {
    if (dotted && i > 0) s += '.';
    s += std::to_string(w.digits[i]);
  }
  if (w.fflag) s += 'f';
  return s;
}

std::vector<int> letters(const Word& w) {
  std::vector<int> raw = w.digits;
  if (w.fflag) raw.push_back(kFlip);
  return raw;
}

Word concat(int m, const Word& v, const Word& w) {
  std::vector<int> raw = letters(v);
  const std::vector<int> tail = letters(w);
  raw.insert(raw.end(), tail.begin(), tail.end());
  return normal_form(m, raw);
}

Word sharp(int m, const Word& w) {
  std::vector<int> raw = letters(w);
  std::reverse(raw.begin(), raw.end());
  for (int& t : raw)
    if (t != kFlip) t = m - t;
  return normal_form(m, raw);
}

Word flip_digits(int m, const Word& w) {
  Word r = w;
  for (int& j : r.digits) j = m - j;
  return r;
}

const std::vector<GroupElement>& a_matrices(const Field& field) {
  static std::mutex mutex;
  static std::map<int, std::vector<GroupElement>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(field->m());
  if (it != cache.end()) return it->second;
  std::vector<GroupElement> mats;
  mats.push_back(generator(field, Generator::F));
  for (int j = 1; j < field->m(); ++j) mats.push_back(a_digit(field, j));
  return cache.emplace(field->m(), std::move(mats)).first->second;
}

GroupElement embed_a(const Field& field, const Word& w) {
  const auto& mats = a_matrices(field);
  GroupElement g = GroupElement::identity(field);
  for (int j : w.digits) {
    check_digit(field->m(), j);
    g = g * mats[j];
  }
  if (w.fflag) g = g * mats[0];
  return g;
}

GroupElement embed_b(const Field& field, const Word& w) {
  const GroupElement l = generator(field, Generator::L);
  return l * embed_a(field, w) * l.inverse();
}

AffineMap embed_c(int m, const Word& w) {
  AffineMap g;
  const Rational scale(1, m - 1);
  for (int j : w.digits) {
    check_digit(m, j);
    g = g * AffineMap{scale, Rational(j - 1) * scale};
  }
  if (w.fflag) g = g * AffineMap{-1, 1};
  return g;
}

// ---------------------------------------------------------------------------

Rational completeness_sum(int m, std::span<const Word> leaves) {
  Rational sum = 0;
  for (const Word& w : leaves) {
    Integer den = 1;
    for (int i = 0; i < w.level(); ++i) den *= (m - 1);
    sum += Rational(Integer(1), den);
  }
  return sum;
}

DecoratedTree DecoratedTree::validate(int m, std::vector<Word> leaves) {
  Field field = make_field(m);
  if (leaves.empty()) throw DomainError("invalid tree: no leaves");
  bool deep = false;
  for (const Word& w : leaves) {
    for (int j : w.digits) check_digit(m, j);
    if (w.level() >= 1) deep = true;
  }
  if (!deep) throw DomainError("invalid tree: reduced to the root");
  for (size_t i = 0; i < leaves.size(); ++i) {
    for (size_t k = 0; k < leaves.size(); ++k) {
      if (i == k) continue;
      const auto& a = leaves[i].digits;
      const auto& b = leaves[k].digits;
      if (a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin()))
        throw DomainError("invalid tree: leaf " + heckecf::to_string(m, leaves[i]) + " is a prefix of leaf " +
                          heckecf::to_string(m, leaves[k]));
    }
  }
  const Rational sum = completeness_sum(m, leaves);
  if (sum != 1) throw DomainError("invalid tree: completeness sum is " + sum.get_str() + ", not 1");
  return DecoratedTree(m, std::move(field), std::move(leaves));
}

std::vector<Word> DecoratedTree::sharp_leaves() const {
  std::vector<Word> out;
  out.reserve(leaves_.size());
  for (const Word& w : leaves_) out.push_back(sharp(m_, w));
  return out;
}

std::string DecoratedTree::to_string() const {
  std::string s;
  for (size_t i = 0; i < leaves_.size(); ++i) {
    if (i) s += ',';
    s += heckecf::to_string(m_, leaves_[i]);
  }
  return s;
}

DecoratedTree parse_tree(int m, std::string_view text) {
  if (m < 3) throw DomainError("m must be at least 3");
  std::vector<Word> leaves;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t next = std::min(text.find(',', pos), text.size());
    std::string_view tok = text.substr(pos, next - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (tok.empty()) throw DomainError("empty leaf in tree literal \"" + std::string(text) + "\"");
    leaves.push_back(parse_word(m, tok));
    pos = next + 1;
  }
  return DecoratedTree::validate(m, std::move(leaves));
}

// ---------------------------------------------------------------------------

FareyMap::FareyMap(const DecoratedTree& tree) : tree_(tree) {
  const Field& field = tree.field();
  const ClosedInterval u = unit_interval(field);
  for (size_t i = 0; i < tree.size(); ++i) {
    GroupElement b = embed_b(field, tree.leaves()[i]);
    ClosedInterval dom = interval_image(b, u);
    branches_.push_back({i, std::move(b), std::move(dom)});
  }
  std::sort(branches_.begin(), branches_.end(),
            [](const FareyBranch& x, const FareyBranch& y) { return x.domain.lo < y.domain.lo; });
}

size_t FareyMap::branch_index(const AlgebraicNumber& x) const {
  const Field& field = tree_.field();
  if (x.sign() < 0 || x > AlgebraicNumber::lambda(field).inverse())
    throw DomainError("point " + x.to_string() + " lies outside [0, 1/lambda]");
  for (size_t i = 0; i < branches_.size(); ++i)
    if (x <= branches_[i].domain.hi) return i;
  return branches_.size() - 1;
}

FareyEval FareyMap::evaluate(const AlgebraicNumber& x) const {
  const size_t i = branch_index(x);
  const FareyBranch& br = branches_[i];
  return {i, br.leaf, moebius_apply(br.element.inverse(), x)};
}

DecoratedTree tree_power(const DecoratedTree& tree, int n) {
  if (n < 1) throw DomainError("tree_power requires n >= 1");
  const int m = tree.m();
  std::vector<Word> current = tree.leaves();
  for (int k = 1; k < n; ++k) {
    std::vector<Word> next;
    next.reserve(current.size() * tree.size());
    for (const Word& v : current)
      for (const Word& w : tree.leaves()) next.push_back(concat(m, v, w));
    current = std::move(next);
  }
  return DecoratedTree::validate(m, std::move(current));
}

DecoratedTree jump_tree(int n) {
  if (n < 1) throw DomainError("jump_tree requires n >= 1");
  std::vector<Word> leaves;
  leaves.push_back(Word{std::vector<int>(static_cast<size_t>(n), 1), false});
  for (int q = 0; q < n; ++q) {
    Word w{std::vector<int>(static_cast<size_t>(q), 1), true};
    w.digits.push_back(2);
    leaves.push_back(std::move(w));
  }
  return DecoratedTree::validate(3, std::move(leaves));
}

SelfdualEvidence selfdual_sufficient(const DecoratedTree& tree) {
  const int m = tree.m();
  const std::set<Word> leaves(tree.leaves().begin(), tree.leaves().end());
  std::set<Word> sharped;
  std::set<Word> flipped;
  for (const Word& w : tree.leaves()) {
    sharped.insert(sharp(m, w));
    flipped.insert(flip_digits(m, w));
  }
  if (sharped == leaves) return SelfdualEvidence::SelfdualByLeafInvariance;
  if (sharped == flipped) return SelfdualEvidence::SelfdualByFlip;
  return SelfdualEvidence::Unknown;
}

const char* to_string(SelfdualEvidence e) {
  switch (e) {
    case SelfdualEvidence::SelfdualByLeafInvariance:
      return "SelfdualByLeafInvariance";
    case SelfdualEvidence::SelfdualByFlip:
      return "SelfdualByFlip";
    case SelfdualEvidence::Unknown:
      return "Unknown";
  }
  return "Unknown";
}

}  // namespace heckecf
