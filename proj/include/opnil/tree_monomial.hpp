#ifndef OPNIL_TREE_MONOMIAL_HPP
#define OPNIL_TREE_MONOMIAL_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "opnil/errors.hpp"
#include "opnil/rational.hpp"

namespace opnil {

// A monomial of the free nonsymmetric operad on one k-ary generator: a planar
// rooted tree whose internal nodes all have exactly k children. Leaves are
// implicit and read a1..an left to right; only the shape is stored, as the
// preorder word over {internal, leaf} (the Lukasiewicz encoding). Equality of
// monomials is equality of (k, shape).
class TreeMonomial {
public:
  static constexpr std::uint8_t kInternal = 1;
  static constexpr std::uint8_t kLeaf = 0;

  TreeMonomial() : k_(2), shape_{kLeaf} {}

  TreeMonomial(int k, std::vector<std::uint8_t> shape)
      : k_(static_cast<std::uint8_t>(k)), shape_(std::move(shape)) {
    if (k < 2 || k > 255) fail(ErrorKind::Arity, "operation arity k must be >= 2");
    validate();
  }

  static TreeMonomial leaf(int k) {
    return TreeMonomial(k, {kLeaf});
  }

  // Root node with the given children, in order.
  static TreeMonomial node(const std::vector<TreeMonomial>& children) {
    if (children.empty()) fail(ErrorKind::Arity, "node requires children");
    int k = children.front().k();
    if (static_cast<std::size_t>(k) != children.size())
      fail(ErrorKind::Arity, "node expects exactly k = " + std::to_string(k) +
                                 " children, got " + std::to_string(children.size()));
    std::vector<std::uint8_t> shape;
    shape.push_back(kInternal);
    for (const TreeMonomial& c : children) {
      if (c.k() != k) fail(ErrorKind::Arity, "children disagree on operation arity k");
      shape.insert(shape.end(), c.shape_.begin(), c.shape_.end());
    }
    return TreeMonomial(k, std::move(shape));
  }

  int k() const { return k_; }
  const std::vector<std::uint8_t>& shape() const { return shape_; }

  std::size_t internal_nodes() const {
    std::size_t m = 0;
    for (auto s : shape_) m += (s == kInternal);
    return m;
  }

  // Leaf count.
  std::size_t arity() const { return shape_.size() - internal_nodes(); }

  bool is_leaf() const { return shape_.size() == 1; }

  // End (one past) of the subtree whose root sits at position pos.
  std::size_t subtree_end(std::size_t pos) const {
    long need = 1;
    std::size_t i = pos;
    for (; i < shape_.size(); ++i) {
      need -= 1;
      if (shape_[i] == kInternal) need += k_;
      if (need == 0) return i + 1;
    }
    fail(ErrorKind::Parse, "corrupt shape encoding");
  }

  TreeMonomial subtree(std::size_t pos) const {
    std::size_t end = subtree_end(pos);
    return TreeMonomial(k_, std::vector<std::uint8_t>(shape_.begin() + pos,
                                                      shape_.begin() + end));
  }

  // Position (in the preorder word) of the i-th leaf, 1-based.
  std::size_t leaf_position(std::size_t i) const {
    std::size_t seen = 0;
    for (std::size_t p = 0; p < shape_.size(); ++p) {
      if (shape_[p] == kLeaf && ++seen == i) return p;
    }
    fail(ErrorKind::Arity, "leaf index " + std::to_string(i) + " out of range 1.." +
                               std::to_string(arity()));
  }

  // Operadic partial composition: graft `inner` at leaf i (1-based); the
  // implicit labels renumber themselves.
  TreeMonomial compose(std::size_t i, const TreeMonomial& inner) const {
    if (inner.k() != k_) fail(ErrorKind::Arity, "compose: operands disagree on k");
    std::size_t pos = leaf_position(i);
    std::vector<std::uint8_t> out;
    out.reserve(shape_.size() + inner.shape_.size() - 1);
    out.insert(out.end(), shape_.begin(), shape_.begin() + pos);
    out.insert(out.end(), inner.shape_.begin(), inner.shape_.end());
    out.insert(out.end(), shape_.begin() + pos + 1, shape_.end());
    return TreeMonomial(k_, std::move(out));
  }

  // Root-to-leaf child-index words (letters 1..k), one per leaf.
  std::vector<std::vector<std::uint8_t>> path_sequence() const {
    std::vector<std::vector<std::uint8_t>> words;
    words.reserve(arity());
    std::vector<std::uint8_t> prefix;
    auto walk = [&](auto&& self, std::size_t pos) -> std::size_t {
      if (shape_[pos] == kLeaf) {
        words.push_back(prefix);
        return pos + 1;
      }
      std::size_t p = pos + 1;
      for (std::uint8_t c = 1; c <= k_; ++c) {
        prefix.push_back(c);
        p = self(self, p);
        prefix.pop_back();
      }
      return p;
    };
    walk(walk, 0);
    return words;
  }

  bool operator==(const TreeMonomial& o) const {
    return k_ == o.k_ && shape_ == o.shape_;
  }
  // Canonical (order-independent) tie for containers: plain encoding compare.
  auto operator<=>(const TreeMonomial& o) const {
    if (auto c = k_ <=> o.k_; c != 0) return c;
    return shape_ <=> o.shape_;
  }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull ^ k_;
    for (auto s : shape_) {
      h ^= s;
      h *= 1099511628211ull;
    }
    return h;
  }

private:
  void validate() const {
    long need = 1;
    for (std::size_t i = 0; i < shape_.size(); ++i) {
      if (need <= 0) fail(ErrorKind::Parse, "shape continues past a complete tree");
      need -= 1;
      if (shape_[i] == kInternal) need += k_;
      else if (shape_[i] != kLeaf) fail(ErrorKind::Parse, "bad shape symbol");
    }
    if (need != 0) fail(ErrorKind::Parse, "truncated shape encoding");
  }

  std::uint8_t k_;
  std::vector<std::uint8_t> shape_;
};

struct TreeMonomialHash {
  std::size_t operator()(const TreeMonomial& m) const { return m.hash(); }
};

// n and k are compatible when n = (k-1)m + 1 for some m >= 0.
inline bool arity_compatible(int k, std::size_t n) {
  return n >= 1 && (n - 1) % (k - 1) == 0;
}

inline void require_arity_compatible(int k, std::size_t n) {
  if (!arity_compatible(k, n))
    fail(ErrorKind::Arity, "leaf count " + std::to_string(n) +
                               " violates n == 1 (mod k-1) for k = " + std::to_string(k));
}

// Number of planar k-ary trees with m internal nodes: (1/((k-1)m+1)) C(km, m).
inline Integer fuss_catalan(int k, unsigned long m) {
  Integer b = binomial(static_cast<unsigned long>(k) * m, m);
  Integer r = b / ((static_cast<unsigned long>(k) - 1) * m + 1);
  return r;
}

namespace detail {

inline const std::vector<TreeMonomial>& monomials_unsorted(int k, std::size_t n) {
  static std::map<std::pair<int, std::size_t>, std::vector<TreeMonomial>> cache;
  auto it = cache.find({k, n});
  if (it != cache.end()) return it->second;

  std::vector<TreeMonomial> out;
  if (n == 1) {
    out.push_back(TreeMonomial::leaf(k));
  } else {
    // Root with k children of arities n1..nk, each compatible, summing to n.
    std::vector<std::size_t> parts(static_cast<std::size_t>(k));
    std::vector<TreeMonomial> chosen;
    auto rec = [&](auto&& self, std::size_t slot, std::size_t remaining) -> void {
      if (slot + 1 == static_cast<std::size_t>(k)) {
        if (!arity_compatible(k, remaining)) return;
        for (const TreeMonomial& last : monomials_unsorted(k, remaining)) {
          chosen.push_back(last);
          out.push_back(TreeMonomial::node(chosen));
          chosen.pop_back();
        }
        return;
      }
      std::size_t slots_left = static_cast<std::size_t>(k) - slot - 1;
      for (std::size_t ni = 1; ni + slots_left <= remaining; ni += (k - 1)) {
        for (const TreeMonomial& sub : monomials_unsorted(k, ni)) {
          chosen.push_back(sub);
          self(self, slot + 1, remaining - ni);
          chosen.pop_back();
        }
      }
    };
    rec(rec, 0, n);
  }
  auto [pos, _] = cache.emplace(std::make_pair(k, n), std::move(out));
  return pos->second;
}

} // namespace detail

} // namespace opnil

#endif
