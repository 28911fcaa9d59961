#ifndef OPNIL_OCCURRENCE_HPP
#define OPNIL_OCCURRENCE_HPP

#include <optional>
#include <vector>

#include "opnil/element.hpp"
#include "opnil/tree_monomial.hpp"

namespace opnil {

// An embedding of a pattern monomial as a connected planar subtree of a host:
// the pattern's internal nodes map onto host internal nodes starting at
// `root_pos` (preorder index into the host shape), and each pattern leaf
// captures the host subtree hanging there. Substituting the captured subtrees
// back into the pattern and splicing at root_pos reproduces the host.
struct Occurrence {
  std::size_t root_pos = 0;
  std::vector<TreeMonomial> captured; // one per pattern leaf, left to right
};

// Deterministic structural match of `pattern` at host position `pos`; at most
// one embedding can root at a given node.
inline std::optional<Occurrence> match_at(const TreeMonomial& pattern,
                                          const TreeMonomial& host, std::size_t pos) {
  if (pattern.k() != host.k()) fail(ErrorKind::Arity, "occurrence search: k mismatch");
  Occurrence occ;
  occ.root_pos = pos;
  const auto& p = pattern.shape();
  const auto& h = host.shape();
  std::size_t hp = pos;
  for (std::size_t pp = 0; pp < p.size(); ++pp) {
    if (p[pp] == TreeMonomial::kLeaf) {
      occ.captured.push_back(host.subtree(hp));
      hp = host.subtree_end(hp);
    } else {
      if (hp >= h.size() || h[hp] != TreeMonomial::kInternal) return std::nullopt;
      ++hp;
    }
  }
  return occ;
}

// All embeddings, ordered by root position (preorder).
inline std::vector<Occurrence> find_occurrences(const TreeMonomial& pattern,
                                                const TreeMonomial& host) {
  if (pattern.arity() > host.arity()) return {};
  std::vector<Occurrence> out;
  bool pattern_rooted_at_node = !pattern.is_leaf();
  for (std::size_t pos = 0; pos < host.shape().size(); ++pos) {
    if (pattern_rooted_at_node && host.shape()[pos] != TreeMonomial::kInternal) continue;
    if (auto occ = match_at(pattern, host, pos)) out.push_back(std::move(*occ));
  }
  return out;
}

inline bool divides(const TreeMonomial& pattern, const TreeMonomial& host) {
  if (pattern.arity() > host.arity()) return false;
  for (std::size_t pos = 0; pos < host.shape().size(); ++pos) {
    if (!pattern.is_leaf() && host.shape()[pos] != TreeMonomial::kInternal) continue;
    if (match_at(pattern, host, pos)) return true;
  }
  return false;
}

// The monomial pattern(subs): each leaf of `pattern` replaced by the
// corresponding subtree, by one-pass shape concatenation.
inline TreeMonomial substitute(const TreeMonomial& pattern,
                               const std::vector<TreeMonomial>& subs) {
  if (subs.size() != pattern.arity())
    fail(ErrorKind::Arity, "substitute: filler count must equal pattern arity");
  std::vector<std::uint8_t> shape;
  std::size_t next = 0;
  for (auto s : pattern.shape()) {
    if (s == TreeMonomial::kInternal) {
      shape.push_back(TreeMonomial::kInternal);
    } else {
      const auto& sub = subs[next++].shape();
      shape.insert(shape.end(), sub.begin(), sub.end());
    }
  }
  return TreeMonomial(pattern.k(), std::move(shape));
}

// Host with the subtree [pos, subtree_end) replaced by `replacement`.
inline TreeMonomial splice(const TreeMonomial& host, std::size_t pos,
                           const TreeMonomial& replacement) {
  std::size_t end = host.subtree_end(pos);
  std::vector<std::uint8_t> shape;
  shape.reserve(host.shape().size() - (end - pos) + replacement.shape().size());
  shape.insert(shape.end(), host.shape().begin(), host.shape().begin() + pos);
  shape.insert(shape.end(), replacement.shape().begin(), replacement.shape().end());
  shape.insert(shape.end(), host.shape().begin() + end, host.shape().end());
  return TreeMonomial(host.k(), std::move(shape));
}

// Reconstruction check: the defining invariant of an occurrence.
inline bool occurrence_reproduces_host(const TreeMonomial& pattern,
                                       const TreeMonomial& host, const Occurrence& occ) {
  TreeMonomial image = substitute(pattern, occ.captured);
  return splice(host, occ.root_pos, image) == host;
}

// One rewriting step of the host monomial at the given occurrence of `lhs`:
// the result is sum_t coeff_t * host[lhs(captured) -> t(captured)].
inline OperadElement rewrite_at(const TreeMonomial& host, const Occurrence& occ,
                                const OperadElement& rhs) {
  OperadElement out = OperadElement::zero(host.k(), host.arity());
  for (const auto& [t, c] : rhs.terms()) {
    out.add_term(splice(host, occ.root_pos, substitute(t, occ.captured)), c);
  }
  return out;
}

} // namespace opnil

#endif
