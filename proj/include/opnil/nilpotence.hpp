#ifndef OPNIL_NILPOTENCE_HPP
#define OPNIL_NILPOTENCE_HPP

#include <optional>

#include "opnil/rewrite.hpp"

namespace opnil {

enum class MultiplicationSide { Left, Right };

// m-fold multiplication-operator probe. Left multiplications nest the moving
// argument in the last slot, so the m-fold probe is the right comb
// (a .. (a .. ( ... (a .. x)))); right multiplications mirror it.
inline TreeMonomial multiplication_probe(int k, std::size_t m, MultiplicationSide side) {
  TreeMonomial probe = TreeMonomial::leaf(k);
  for (std::size_t step = 0; step < m; ++step) {
    std::vector<TreeMonomial> children;
    if (side == MultiplicationSide::Left) {
      children.assign(k - 1, TreeMonomial::leaf(k));
      children.push_back(probe);
    } else {
      children.push_back(probe);
      children.insert(children.end(), k - 1, TreeMonomial::leaf(k));
    }
    probe = TreeMonomial::node(children);
  }
  return probe;
}

struct NilpotenceResult {
  std::optional<std::size_t> index; // smallest m with the m-fold probe reducing to 0
  std::size_t cap;                  // arity bound the search was allowed to use
  bool not_less = false;            // the (m-1)-fold probe does not reduce to 0
  bool provably_never = false;      // no probe of any size is reducible

  std::string describe() const {
    if (provably_never) return "NotNilpotent (no probe is ever reducible)";
    if (!index) return "NotNilpotentUpToCap(" + std::to_string(cap) + ")";
    return "index " + std::to_string(*index) + (not_less ? " (and not less)" : "");
  }
};

// A pattern embeds in a probe comb only if it is itself a probe comb of the
// same side: at every matched node the k-1 fixed slots of the comb hold bare
// leaves, forcing the pattern's corresponding children to be leaves too.
inline bool head_is_probe_comb(const TreeMonomial& lhs, MultiplicationSide side) {
  return lhs == multiplication_probe(lhs.k(), lhs.internal_nodes(), side);
}

// Smallest m such that the m-fold probe vanishes modulo the basis. Probe
// verdicts are exact while the probe arity stays within certified territory;
// past it the result reports the bound that was searched instead of
// guessing. On a globally complete basis with no comb-shaped head the probes
// stay irreducible forever, which is reported as such.
inline NilpotenceResult nilpotence_index(const GrobnerBasis& basis,
                                         MultiplicationSide side) {
  int k = basis.k();
  if (basis.certificate().complete) {
    bool some_comb_head = false;
    for (const RewriteRule& r : basis.rules())
      some_comb_head |= head_is_probe_comb(r.lhs, side);
    if (!some_comb_head) return {std::nullopt, basis.cap(), false, true};
  }
  // A complete basis certifies reductions at every arity; keep the search
  // finite anyway and report how far it went.
  std::size_t search_arity =
      basis.certificate().complete ? std::max(basis.cap(), 4 * basis.max_rule_arity())
                                   : basis.cap();
  Reducer red(basis);
  bool previous_nonzero = true; // the 0-fold probe is a bare leaf
  for (std::size_t m = 1;; ++m) {
    std::size_t probe_arity = (static_cast<std::size_t>(k) - 1) * m + 1;
    if (probe_arity > search_arity || !basis.certified_through(probe_arity))
      return {std::nullopt, search_arity, false, false};
    TreeMonomial probe = multiplication_probe(k, m, side);
    if (red.normal_form(probe).is_zero())
      return {m, search_arity, previous_nonzero, false};
    previous_nonzero = true;
  }
}

inline NilpotenceResult left_nilpotence_index(const GrobnerBasis& basis) {
  return nilpotence_index(basis, MultiplicationSide::Left);
}

inline NilpotenceResult right_nilpotence_index(const GrobnerBasis& basis) {
  return nilpotence_index(basis, MultiplicationSide::Right);
}

} // namespace opnil

#endif
