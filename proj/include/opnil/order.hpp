#ifndef OPNIL_ORDER_HPP
#define OPNIL_ORDER_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "opnil/errors.hpp"
#include "opnil/tree_monomial.hpp"

namespace opnil {

enum class Cmp { Less = -1, Equal = 0, Greater = 1 };

// Convention for comparing a path word against a proper extension of itself.
enum class PrefixRule {
  PrefixIsSmaller, // shipped default: a word precedes its proper extensions
  PrefixIsLarger,
};

enum class LetterOrder { Ascending, Descending };

// The graded path-lexicographic family. Grading is by arity (only same-arity
// monomials are ever compared); within one arity the per-leaf root-to-leaf
// words are compared left to right, the first differing pair deciding by the
// letter order and the prefix rule.
struct OrderSpec {
  PrefixRule prefix = PrefixRule::PrefixIsSmaller;
  LetterOrder letters = LetterOrder::Ascending;

  bool operator==(const OrderSpec&) const = default;

  std::string name() const {
    std::string s = prefix == PrefixRule::PrefixIsSmaller ? "pathlex-prefix-small"
                                                          : "pathlex-prefix-large";
    s += letters == LetterOrder::Ascending ? "-asc" : "-desc";
    return s;
  }

  static OrderSpec from_name(const std::string& s) {
    for (OrderSpec o : {OrderSpec{PrefixRule::PrefixIsSmaller, LetterOrder::Ascending},
                        OrderSpec{PrefixRule::PrefixIsSmaller, LetterOrder::Descending},
                        OrderSpec{PrefixRule::PrefixIsLarger, LetterOrder::Ascending},
                        OrderSpec{PrefixRule::PrefixIsLarger, LetterOrder::Descending}}) {
      if (o.name() == s) return o;
    }
    if (s == "default") return OrderSpec{};
    fail(ErrorKind::Input, "unknown order variant '" + s + "'");
  }
};

// Realization of the comparison through the per-leaf path words.
struct PathSequence {
  std::vector<std::vector<std::uint8_t>> words;

  static PathSequence of(const TreeMonomial& m) { return {m.path_sequence()}; }
};

inline Cmp compare_words(const std::vector<std::uint8_t>& a,
                         const std::vector<std::uint8_t>& b, const OrderSpec& spec) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) {
      bool a_less = a[i] < b[i];
      if (spec.letters == LetterOrder::Descending) a_less = !a_less;
      return a_less ? Cmp::Less : Cmp::Greater;
    }
  }
  if (a.size() == b.size()) return Cmp::Equal;
  bool shorter_is_a = a.size() < b.size();
  bool shorter_less = spec.prefix == PrefixRule::PrefixIsSmaller;
  return (shorter_is_a == shorter_less) ? Cmp::Less : Cmp::Greater;
}

inline Cmp compare(const TreeMonomial& m1, const TreeMonomial& m2,
                   const OrderSpec& spec = OrderSpec{}) {
  if (m1.k() != m2.k() || m1.arity() != m2.arity())
    fail(ErrorKind::Arity, "compare: monomials must share (k, arity)");
  PathSequence p1 = PathSequence::of(m1);
  PathSequence p2 = PathSequence::of(m2);
  for (std::size_t i = 0; i < p1.words.size(); ++i) {
    Cmp c = compare_words(p1.words[i], p2.words[i], spec);
    if (c != Cmp::Equal) return c;
  }
  return Cmp::Equal;
}

// Same-arity path-lex comparison collapses to lexicographic comparison of the
// preorder shape word: at the first differing preorder position one tree has
// an internal node where the other has a leaf, which makes the corresponding
// leaf words a proper all-1s extension pair, so only the prefix rule decides.
// (The equivalence is exercised exhaustively by the test suite.)
inline bool less_fast(const TreeMonomial& a, const TreeMonomial& b,
                      const OrderSpec& spec = OrderSpec{}) {
  const auto& sa = a.shape();
  const auto& sb = b.shape();
  bool internal_wins = spec.prefix == PrefixRule::PrefixIsSmaller;
  std::size_t n = std::min(sa.size(), sb.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (sa[i] != sb[i]) {
      bool a_is_internal = sa[i] == TreeMonomial::kInternal;
      return a_is_internal != internal_wins;
    }
  }
  return sa.size() < sb.size(); // distinct arities: only hit by sort keys
}

struct OrderLess {
  OrderSpec spec;
  bool operator()(const TreeMonomial& a, const TreeMonomial& b) const {
    return less_fast(a, b, spec);
  }
};

struct OrderGreater {
  OrderSpec spec;
  bool operator()(const TreeMonomial& a, const TreeMonomial& b) const {
    return less_fast(b, a, spec);
  }
};

// All monomials of the given leaf count, sorted descending under spec.
inline std::vector<TreeMonomial> enumerate_monomials(int k, std::size_t n,
                                                     const OrderSpec& spec = OrderSpec{}) {
  if (k < 2) fail(ErrorKind::Arity, "operation arity k must be >= 2");
  require_arity_compatible(k, n);
  std::vector<TreeMonomial> out = detail::monomials_unsorted(k, n);
  std::sort(out.begin(), out.end(), OrderGreater{spec});
  return out;
}

} // namespace opnil

#endif
