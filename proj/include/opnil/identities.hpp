#ifndef OPNIL_IDENTITIES_HPP
#define OPNIL_IDENTITIES_HPP

#include <numeric>
#include <string>
#include <vector>

#include "opnil/element.hpp"
#include "opnil/magma.hpp"
#include "opnil/order.hpp"

namespace opnil {

// w_n^(k): the sum of all multilinear degree-n terms of one k-ary operation
// with arguments in the natural order, i.e. the sum of every planar k-ary
// tree monomial of arity n with coefficient 1.
inline OperadElement w_element(int k, std::size_t n) {
  require_arity_compatible(k, n);
  OperadElement e = OperadElement::zero(k, n);
  for (const TreeMonomial& m : detail::monomials_unsorted(k, n)) e.add_term(m, 1);
  return e;
}

// The inductive route: w_1 = a1 and w_n = sum over compositions
// (i_1,...,i_k) of n of (w_{i_1} ... w_{i_k}). Kept separate from
// w_element so the two constructions can be checked against each other.
inline OperadElement w_element_inductive(int k, std::size_t n) {
  require_arity_compatible(k, n);
  if (n == 1) return OperadElement::monomial(TreeMonomial::leaf(k));
  OperadElement out = OperadElement::zero(k, n);
  std::vector<OperadElement> factors;
  auto rec = [&](auto&& self, std::size_t slot, std::size_t remaining) -> void {
    if (slot + 1 == static_cast<std::size_t>(k)) {
      if (!arity_compatible(k, remaining)) return;
      factors.push_back(w_element_inductive(k, remaining));
      // Multilinear product: one tree per choice of a term from each factor.
      std::vector<TreeMonomial> chosen;
      auto expand = [&](auto&& eself, std::size_t fi) -> void {
        if (fi == factors.size()) {
          out.add_term(TreeMonomial::node(chosen), 1);
          return;
        }
        for (const auto& [m, c] : factors[fi].terms()) {
          chosen.push_back(m);
          eself(eself, fi + 1);
          chosen.pop_back();
        }
      };
      expand(expand, 0);
      factors.pop_back();
      return;
    }
    std::size_t slots_left = static_cast<std::size_t>(k) - slot - 1;
    for (std::size_t ni = 1; ni + slots_left <= remaining; ni += (k - 1)) {
      factors.push_back(w_element_inductive(k, ni));
      self(self, slot + 1, remaining - ni);
      factors.pop_back();
    }
  };
  rec(rec, 0, n);
  return out;
}

// t_n^(k): the sum of all multilinear degree-n terms of one totally
// commutative k-ary operation; one representative per commutative class.
inline MagmaElement t_element(int k, std::size_t n) {
  require_arity_compatible(k, n);
  MagmaElement e = MagmaElement::zero(k, n, true);
  for (const LabeledTree& t : enumerate_labeled(k, n, true)) e.add_term(t, 1);
  return e;
}

namespace detail {

inline MagmaElement t_on_labels(int k, const std::vector<int>& labels);

} // namespace detail

// The shuffle-split induction: t_1 = a1 and t_n = sum over partitions of the
// label set into k blocks (the first block holding the least label) of the
// product of smaller t's. Independent construction used for cross-checks.
inline MagmaElement t_element_inductive(int k, std::size_t n) {
  require_arity_compatible(k, n);
  std::vector<int> labels(n);
  std::iota(labels.begin(), labels.end(), 1);
  return detail::t_on_labels(k, labels);
}

namespace detail {

inline MagmaElement t_on_labels(int k, const std::vector<int>& labels) {
  MagmaElement out = MagmaElement::zero(k, labels.size(), true);
  if (labels.size() == 1) {
    out.add_term(LabeledTree::leaf(k, true, labels[0]), 1);
    return out;
  }
  // Enumerate min-ordered partitions, then distribute the product.
  std::vector<std::vector<int>> blocks(static_cast<std::size_t>(k));
  auto assemble = [&](auto&& self, std::size_t bi) -> void {
    if (bi == blocks.size()) {
      std::vector<MagmaElement> factors;
      for (const auto& b : blocks) factors.push_back(t_on_labels(k, b));
      std::vector<LabeledTree> chosen;
      auto expand = [&](auto&& eself, std::size_t fi) -> void {
        if (fi == factors.size()) {
          Rational coeff = 1;
          out.add_term(LabeledTree::node(chosen), coeff);
          return;
        }
        for (const auto& [t, c] : factors[fi].terms()) {
          chosen.push_back(t);
          eself(eself, fi + 1);
          chosen.pop_back();
        }
      };
      expand(expand, 0);
      return;
    }
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
    int anchor = rest.front();
    std::vector<int> pool(rest.begin() + 1, rest.end());
    std::vector<int> chosen;
    for (std::size_t extra = 0; extra + 1 + blocks_left <= rest.size(); ++extra) {
      if (blocks_left == 0 && extra + 1 != rest.size()) continue;
      if (!arity_compatible(k, extra + 1)) continue;
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

// The alternating zig-zag monomials (binary):
//   m_1 = a1, m_{2j} = m_{2j-1} a_{2j}, m_{2j+1} = a_1 m_{2j}.
inline TreeMonomial zigzag(std::size_t n) {
  if (n < 1) fail(ErrorKind::Input, "zigzag index starts at 1");
  TreeMonomial m = TreeMonomial::leaf(2);
  for (std::size_t i = 2; i <= n; ++i) {
    if (i % 2 == 0) m = TreeMonomial::node({m, TreeMonomial::leaf(2)});
    else m = TreeMonomial::node({TreeMonomial::leaf(2), m});
  }
  return m;
}

// Multilinearization of the m-Engel identity (((x y) y) ... y) = 0: the sum
// over all assignments of a2..a_{m+1} to the m right-hand slots. Commutative
// binary element of arity m + 1.
inline MagmaElement engel_element(std::size_t m) {
  if (m < 1) fail(ErrorKind::Input, "engel index starts at 1");
  std::size_t n = m + 1;
  MagmaElement out = MagmaElement::zero(2, n, true);
  std::vector<int> slots(m);
  std::iota(slots.begin(), slots.end(), 2);
  do {
    LabeledTree t = LabeledTree::leaf(2, true, 1);
    for (int s : slots) t = LabeledTree::node({t, LabeledTree::leaf(2, true, s)});
    out.add_term(t, 1);
  } while (std::next_permutation(slots.begin(), slots.end()));
  return out;
}

namespace detail {

inline LabeledTree nc2(const LabeledTree& a, const LabeledTree& b) {
  return LabeledTree::node({a, b});
}

} // namespace detail

// The binary noncommutative elements of the Yagzhev reformulation, all of
// arity 3 over ordered variables a1, a2, a3 (bullet: a*b = ab + ba; brace:
// {a,b} = ab - ba).
struct YagzhevElements {
  MagmaElement bullet_assoc;    // (a1*a2)*a3, the multilinearized first identity
  MagmaElement second_direct;   // direct multilinearization of the second identity
  MagmaElement braced_swap;     // {a1*a2, a3} - {a1*a3, a2}, the derived simplification
  MagmaElement phi;             // phi(a1, a2, a3) = a1*(a2 a3 + a3 a2) - (a2 a3 + a3 a2)*a1
};

inline YagzhevElements yagzhev_elements() {
  using detail::nc2;
  auto leaf = [](int l) { return LabeledTree::leaf(2, false, l); };
  auto bullet = [&](int x, int y) {
    MagmaElement e = MagmaElement::zero(2, 2, false);
    e.add_term(nc2(leaf(x), leaf(y)), 1);
    e.add_term(nc2(leaf(y), leaf(x)), 1);
    return e;
  };
  // u * leaf / brace of a 2-term piece with a leaf, expanded to arity 3
  auto combine = [&](const MagmaElement& inner, int outer, int sign_right,
                     MagmaElement& acc, const Rational& scale) {
    for (const auto& [t, c] : inner.terms()) {
      acc.add_term(nc2(t, leaf(outer)), scale * c);
      acc.add_term(nc2(leaf(outer), t), scale * c * sign_right);
    }
  };

  YagzhevElements out{MagmaElement::zero(2, 3, false), MagmaElement::zero(2, 3, false),
                      MagmaElement::zero(2, 3, false), MagmaElement::zero(2, 3, false)};

  // (a1*a2)*a3 = (a1*a2) a3 + a3 (a1*a2)
  combine(bullet(1, 2), 3, +1, out.bullet_assoc, 1);

  // (x y + y x) y = 2 (y y) x, multilinearized in y -> {a2, a3} with x = a1:
  // (a1*a2) a3 + (a1*a3) a2 - 2 (a2*a3) a1
  {
    MagmaElement b12 = bullet(1, 2), b13 = bullet(1, 3), b23 = bullet(2, 3);
    for (const auto& [t, c] : b12.terms()) out.second_direct.add_term(nc2(t, leaf(3)), c);
    for (const auto& [t, c] : b13.terms()) out.second_direct.add_term(nc2(t, leaf(2)), c);
    for (const auto& [t, c] : b23.terms()) out.second_direct.add_term(nc2(t, leaf(1)), -2 * c);
  }

  // {a1*a2, a3} - {a1*a3, a2}
  combine(bullet(1, 2), 3, -1, out.braced_swap, 1);
  combine(bullet(1, 3), 2, -1, out.braced_swap, -1);

  // phi(a1, a2, a3) = a1 (a2*a3) - (a2*a3) a1
  {
    MagmaElement b23 = bullet(2, 3);
    for (const auto& [t, c] : b23.terms()) {
      out.phi.add_term(nc2(leaf(1), t), c);
      out.phi.add_term(nc2(t, leaf(1)), -c);
    }
  }
  return out;
}

// phi with permuted arguments (x, y, z) |-> (a_{imgs[0]}, a_{imgs[1]}, a_{imgs[2]}).
inline MagmaElement phi_of(int x, int y, int z) {
  MagmaElement base = yagzhev_elements().phi;
  return base.relabel({x, y, z});
}

// --- identity names accepted by the CLI --------------------------------

struct IdentityName {
  enum class Family { W, T, Zigzag, Engel, Yag1, Yag2, Phi } family;
  int k = 2;
  std::size_t n = 0;
};

inline IdentityName parse_identity_name(const std::string& name) {
  using Family = IdentityName::Family;
  auto starts = [&](const char* p) { return name.rfind(p, 0) == 0; };
  auto tail_number = [&](std::size_t from, std::size_t to) -> std::size_t {
    if (from >= to) fail(ErrorKind::Input, "identity name '" + name + "' needs an index");
    for (std::size_t i = from; i < to; ++i)
      if (!std::isdigit(static_cast<unsigned char>(name[i])))
        fail(ErrorKind::Input, "bad index in identity name '" + name + "'");
    return std::stoul(name.substr(from, to - from));
  };
  if (name == "yag1") return {Family::Yag1};
  if (name == "yag2") return {Family::Yag2};
  if (name == "phi") return {Family::Phi};
  if (starts("zigzag")) return {Family::Zigzag, 2, tail_number(6, name.size())};
  if (starts("engel")) return {Family::Engel, 2, tail_number(5, name.size())};
  if (starts("w") || starts("t")) {
    Family fam = name[0] == 'w' ? Family::W : Family::T;
    std::size_t caret = name.find("^(");
    int k = 2;
    std::size_t n_end = name.size();
    if (caret != std::string::npos) {
      if (name.back() != ')') fail(ErrorKind::Input, "malformed identity name '" + name + "'");
      k = static_cast<int>(tail_number(caret + 2, name.size() - 1));
      n_end = caret;
    }
    std::size_t n = tail_number(1, n_end);
    if (k < 2) fail(ErrorKind::Input, "identity name '" + name + "': k must be >= 2");
    if (!arity_compatible(k, n))
      fail(ErrorKind::Arity, "identity " + name + ": n == 1 (mod k-1) violated");
    return {fam, k, n};
  }
  fail(ErrorKind::Input, "unknown identity name '" + name + "'");
}

} // namespace opnil

#endif
