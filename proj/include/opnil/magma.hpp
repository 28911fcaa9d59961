#ifndef OPNIL_MAGMA_HPP
#define OPNIL_MAGMA_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "opnil/element.hpp"
#include "opnil/tree_monomial.hpp"

namespace opnil {

// Multilinear monomial of the free k-ary magma: a planar k-ary tree whose
// leaves carry distinct variable labels. In the commutative flavor the
// children of every node are put into a canonical order (by shape word, then
// by minimum label), so equal classes compare equal. Encoding is preorder:
// 0 marks an internal node, a positive value is a leaf label.
class LabeledTree {
public:
  LabeledTree(int k, bool commutative, std::vector<int> enc)
      : k_(k), commutative_(commutative), enc_(std::move(enc)) {}

  static LabeledTree leaf(int k, bool commutative, int label) {
    if (label <= 0) fail(ErrorKind::Input, "leaf labels are positive");
    return LabeledTree(k, commutative, {label});
  }

  static LabeledTree node(std::vector<LabeledTree> children) {
    if (children.empty()) fail(ErrorKind::Arity, "node requires children");
    int k = children.front().k_;
    bool comm = children.front().commutative_;
    if (children.size() != static_cast<std::size_t>(k))
      fail(ErrorKind::Arity, "node expects exactly k children");
    for (const auto& c : children)
      if (c.k_ != k || c.commutative_ != comm)
        fail(ErrorKind::Arity, "children disagree on magma flavor");
    if (comm) {
      std::sort(children.begin(), children.end(),
                [](const LabeledTree& a, const LabeledTree& b) {
                  auto sa = a.shape_word(), sb = b.shape_word();
                  if (sa != sb) return sa < sb;
                  return a.min_label() < b.min_label();
                });
    }
    std::vector<int> enc{0};
    for (const auto& c : children) enc.insert(enc.end(), c.enc_.begin(), c.enc_.end());
    return LabeledTree(k, comm, std::move(enc));
  }

  int k() const { return k_; }
  bool commutative() const { return commutative_; }
  const std::vector<int>& encoding() const { return enc_; }

  std::size_t arity() const {
    std::size_t n = 0;
    for (int v : enc_) n += (v > 0);
    return n;
  }

  bool is_leaf() const { return enc_.size() == 1; }

  std::vector<std::uint8_t> shape_word() const {
    std::vector<std::uint8_t> s;
    s.reserve(enc_.size());
    for (int v : enc_)
      s.push_back(v == 0 ? TreeMonomial::kInternal : TreeMonomial::kLeaf);
    return s;
  }

  int min_label() const {
    int m = 0;
    for (int v : enc_)
      if (v > 0 && (m == 0 || v < m)) m = v;
    return m;
  }

  std::vector<int> labels_in_order() const {
    std::vector<int> out;
    for (int v : enc_)
      if (v > 0) out.push_back(v);
    return out;
  }

  std::size_t subtree_end(std::size_t pos) const {
    long need = 1;
    for (std::size_t i = pos; i < enc_.size(); ++i) {
      need -= 1;
      if (enc_[i] == 0) need += k_;
      if (need == 0) return i + 1;
    }
    fail(ErrorKind::Parse, "corrupt labeled encoding");
  }

  std::vector<LabeledTree> children() const {
    if (is_leaf()) return {};
    std::vector<LabeledTree> out;
    std::size_t p = 1;
    for (int c = 0; c < k_; ++c) {
      std::size_t e = subtree_end(p);
      out.emplace_back(k_, commutative_,
                       std::vector<int>(enc_.begin() + p, enc_.begin() + e));
      p = e;
    }
    return out;
  }

  // label l -> image[l-1]; the commutative canonical order is rebuilt.
  LabeledTree relabel(const std::vector<int>& image) const {
    if (is_leaf()) return leaf(k_, commutative_, image.at(enc_[0] - 1));
    std::vector<LabeledTree> kids;
    for (const auto& c : children()) kids.push_back(c.relabel(image));
    return node(std::move(kids));
  }

  // Bridge from a nonsymmetric monomial: assign labels to leaves in order.
  static LabeledTree from_monomial(const TreeMonomial& m, const std::vector<int>& labels,
                                   bool commutative) {
    if (labels.size() != m.arity())
      fail(ErrorKind::Arity, "label count must equal leaf count");
    std::size_t next = 0;
    auto walk = [&](auto&& self, std::size_t pos) -> std::pair<LabeledTree, std::size_t> {
      if (m.shape()[pos] == TreeMonomial::kLeaf)
        return {leaf(m.k(), commutative, labels[next++]), pos + 1};
      std::vector<LabeledTree> kids;
      std::size_t p = pos + 1;
      for (int c = 0; c < m.k(); ++c) {
        auto [child, np] = self(self, p);
        kids.push_back(std::move(child));
        p = np;
      }
      return {node(std::move(kids)), p};
    };
    return walk(walk, 0).first;
  }

  auto operator<=>(const LabeledTree& o) const {
    if (auto c = k_ <=> o.k_; c != 0) return c;
    if (auto c = commutative_ <=> o.commutative_; c != 0) return c;
    return enc_ <=> o.enc_;
  }
  bool operator==(const LabeledTree& o) const = default;

  std::string str() const {
    std::string out;
    auto walk = [&](auto&& self, std::size_t pos) -> std::size_t {
      if (enc_[pos] > 0) {
        out += "a" + std::to_string(enc_[pos]);
        return pos + 1;
      }
      out += commutative_ ? "{" : "(";
      std::size_t p = pos + 1;
      for (int c = 0; c < k_; ++c) {
        if (c) out += " ";
        p = self(self, p);
      }
      out += commutative_ ? "}" : ")";
      return p;
    };
    walk(walk, 0);
    return out;
  }

private:
  int k_;
  bool commutative_;
  std::vector<int> enc_;
};

// Finite formal linear combination of labeled magma monomials sharing
// (k, arity, flavor), exact rational coefficients, zero never stored.
class MagmaElement {
public:
  using TermMap = std::map<LabeledTree, Rational>;

  MagmaElement(int k, std::size_t arity, bool commutative)
      : k_(k), arity_(arity), commutative_(commutative) {}

  static MagmaElement zero(int k, std::size_t arity, bool commutative) {
    return MagmaElement(k, arity, commutative);
  }
  static MagmaElement monomial(const LabeledTree& t, Rational coeff = 1) {
    MagmaElement e(t.k(), t.arity(), t.commutative());
    e.add_term(t, std::move(coeff));
    return e;
  }

  int k() const { return k_; }
  std::size_t arity() const { return arity_; }
  bool commutative() const { return commutative_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  Rational coefficient(const LabeledTree& t) const {
    auto it = terms_.find(t);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const LabeledTree& t, const Rational& c) {
    if (opnil::is_zero(c)) return;
    if (t.k() != k_ || t.arity() != arity_ || t.commutative() != commutative_)
      fail(ErrorKind::Arity, "magma element terms must share (k, arity, flavor)");
    auto [it, inserted] = terms_.emplace(t, c);
    if (!inserted) {
      it->second += c;
      if (opnil::is_zero(it->second)) terms_.erase(it);
    }
  }

  MagmaElement& operator+=(const MagmaElement& o) {
    check(o);
    for (const auto& [t, c] : o.terms_) add_term(t, c);
    return *this;
  }
  MagmaElement& operator-=(const MagmaElement& o) {
    check(o);
    for (const auto& [t, c] : o.terms_) add_term(t, -c);
    return *this;
  }
  MagmaElement& operator*=(const Rational& s) {
    if (opnil::is_zero(s)) terms_.clear();
    else
      for (auto& [t, c] : terms_) c *= s;
    return *this;
  }
  friend MagmaElement operator+(MagmaElement a, const MagmaElement& b) { return a += b; }
  friend MagmaElement operator-(MagmaElement a, const MagmaElement& b) { return a -= b; }
  friend MagmaElement operator*(const Rational& s, MagmaElement a) { return a *= s; }

  MagmaElement relabel(const std::vector<int>& image) const {
    MagmaElement out(k_, arity_, commutative_);
    for (const auto& [t, c] : terms_) out.add_term(t.relabel(image), c);
    return out;
  }

  bool operator==(const MagmaElement& o) const {
    return k_ == o.k_ && arity_ == o.arity_ && commutative_ == o.commutative_ &&
           terms_ == o.terms_;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [t, c] : terms_) {
      Rational a = abs(c);
      if (first) {
        if (sgn(c) < 0) out += "-";
        first = false;
      } else {
        out += sgn(c) < 0 ? " - " : " + ";
      }
      if (a != 1) out += to_string(a) + "*";
      out += t.str();
    }
    return out;
  }

private:
  void check(const MagmaElement& o) const {
    if (o.k_ != k_ || o.arity_ != arity_ || o.commutative_ != commutative_)
      fail(ErrorKind::Arity, "magma element arithmetic requires matching (k, arity, flavor)");
  }

  int k_;
  std::size_t arity_;
  bool commutative_;
  TermMap terms_;
};

// (2n-3)!! = 1*3*...*(2n-3), the commutative binary multilinear dimension.
inline Integer double_factorial_odd(std::size_t n) {
  Integer r = 1;
  if (n < 2) return r;
  for (std::size_t f = 1; f <= 2 * n - 3; f += 2) r *= f;
  return r;
}

inline Integer factorial(std::size_t n) {
  Integer r = 1;
  for (std::size_t i = 2; i <= n; ++i) r *= i;
  return r;
}

// Multilinear dimension of the free k-ary magma at arity n, without
// materializing the basis. Commutative counting splits off the block holding
// the least label.
inline Integer count_labeled(int k, std::size_t n, bool commutative) {
  require_arity_compatible(k, n);
  if (!commutative) return fuss_catalan(k, (n - 1) / (k - 1)) * factorial(n);
  static std::map<std::tuple<int, std::size_t, std::size_t>, Integer> cache;
  // blocks(j, m): ways to split an m-set into j unordered blocks, each
  // carrying one commutative monomial.
  auto blocks = [&](auto&& self, int j, std::size_t m) -> Integer {
    auto count_one = [&](std::size_t s) -> Integer { return count_labeled(k, s, true); };
    if (j == 1) return arity_compatible(k, m) ? count_one(m) : Integer(0);
    auto key = std::make_tuple(k, static_cast<std::size_t>(j), m);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    Integer total = 0;
    for (std::size_t s = 1; s + (j - 1) <= m; s += (k - 1)) {
      if (!arity_compatible(k, s)) continue;
      total += binomial(m - 1, s - 1) * count_one(s) * self(self, j - 1, m - s);
    }
    cache[key] = total;
    return total;
  };
  if (n == 1) return 1;
  return blocks(blocks, k, n);
}

namespace detail {

// All multilinear commutative monomials on the given label set.
inline std::vector<LabeledTree> commutative_monomials_on(int k, const std::vector<int>& labels) {
  if (labels.size() == 1) return {LabeledTree::leaf(k, true, labels[0])};
  std::vector<LabeledTree> out;
  if (!arity_compatible(k, labels.size())) return out;

  // Partitions of the label set into k blocks of compatible sizes, blocks
  // ordered by their minima so each unordered partition appears once.
  std::vector<std::vector<int>> blocks(static_cast<std::size_t>(k));
  auto assemble = [&](auto&& self, std::size_t bi) -> void {
    if (bi == blocks.size()) {
      std::vector<std::vector<LabeledTree>> options;
      for (const auto& b : blocks) {
        options.push_back(commutative_monomials_on(k, b));
        if (options.back().empty()) return;
      }
      std::vector<std::size_t> pick(options.size(), 0);
      while (true) {
        std::vector<LabeledTree> kids;
        for (std::size_t i = 0; i < options.size(); ++i) kids.push_back(options[i][pick[i]]);
        out.push_back(LabeledTree::node(std::move(kids)));
        std::size_t i = 0;
        for (; i < pick.size(); ++i) {
          if (++pick[i] < options[i].size()) break;
          pick[i] = 0;
        }
        if (i == pick.size()) break;
      }
      return;
    }
    // Remaining labels not yet placed, in ascending order.
    std::vector<int> rest;
    {
      std::vector<int> used;
      for (std::size_t i = 0; i < bi; ++i)
        used.insert(used.end(), blocks[i].begin(), blocks[i].end());
      std::sort(used.begin(), used.end());
      for (int l : labels)
        if (!std::binary_search(used.begin(), used.end(), l)) rest.push_back(l);
      std::sort(rest.begin(), rest.end());
    }
    std::size_t blocks_left = blocks.size() - bi - 1;
    // This block takes the smallest remaining label plus a subset of the rest.
    int anchor = rest.front();
    std::vector<int> pool(rest.begin() + 1, rest.end());
    for (std::size_t extra = 0; extra + 1 + blocks_left <= rest.size(); ++extra) {
      if (blocks_left == 0 && extra + 1 != rest.size()) continue; // blocks must exhaust labels
      if (!arity_compatible(k, extra + 1)) continue;
      std::vector<int> chosen;
      auto choose = [&](auto&& cself, std::size_t from, std::size_t need) -> void {
        if (need == 0) {
          blocks[bi].clear();
          blocks[bi].push_back(anchor);
          blocks[bi].insert(blocks[bi].end(), chosen.begin(), chosen.end());
          self(self, bi + 1);
          return;
        }
        for (std::size_t i = from; i + need <= pool.size(); ++i) {
          chosen.push_back(pool[i]);
          cself(cself, i + 1, need - 1);
          chosen.pop_back();
        }
      };
      choose(choose, 0, extra);
    }
  };
  assemble(assemble, 0);
  return out;
}

} // namespace detail

// Basis of the multilinear component of the free magma on labels 1..n.
inline std::vector<LabeledTree> enumerate_labeled(int k, std::size_t n, bool commutative) {
  require_arity_compatible(k, n);
  if (commutative) {
    std::vector<int> labels(n);
    std::iota(labels.begin(), labels.end(), 1);
    return detail::commutative_monomials_on(k, labels);
  }
  std::vector<LabeledTree> out;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  for (const TreeMonomial& shape : detail::monomials_unsorted(k, n)) {
    std::vector<int> p = perm;
    do {
      out.push_back(LabeledTree::from_monomial(shape, p, false));
    } while (std::next_permutation(p.begin(), p.end()));
  }
  return out;
}

} // namespace opnil

#endif
