#ifndef OPNIL_SYMMETRIZATION_HPP
#define OPNIL_SYMMETRIZATION_HPP

#include <numeric>

#include "opnil/consequence.hpp"
#include "opnil/identities.hpp"

namespace opnil {

struct SymmetrizationReport {
  int k = 2;
  std::size_t d = 0;
  bool holds = false;
  Rational lambda = 0; // expansion of t_d == lambda * sum of permuted w_d
  std::size_t expansion_terms = 0;
  std::size_t symmetrized_w_terms = 0;
};

// Expands t_d^(k) under the fully symmetrized product and checks the result
// is a scalar multiple of the sum of all permutations of w_d^(k). The scalar
// is computed, not assumed.
inline SymmetrizationReport verify_symmetrization(int k, std::size_t d,
                                                  const OracleLimits& limits = OracleLimits{}) {
  require_arity_compatible(k, d);
  {
    Integer f = 1;
    for (std::size_t i = 2; i <= d; ++i) f *= i;
    Integer size = fuss_catalan(k, (d - 1) / (k - 1)) * f;
    if (size > Integer(static_cast<unsigned long>(limits.max_nonzeros)))
      fail(ErrorKind::Resource, "symmetrization check at (k=" + std::to_string(k) +
                                    ", d=" + std::to_string(d) + ") exceeds the bound of " +
                                    std::to_string(limits.max_nonzeros) + " entries");
  }

  MagmaElement expansion = expand_substitution(t_element(k, d), symmetrized_product_template(k));

  MagmaElement w_orbit = MagmaElement::zero(k, d, false);
  {
    MagmaElement w = as_ordered_magma(w_element(k, d));
    std::vector<int> perm(d);
    std::iota(perm.begin(), perm.end(), 1);
    do {
      w_orbit += w.relabel(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  SymmetrizationReport report;
  report.k = k;
  report.d = d;
  report.expansion_terms = expansion.term_count();
  report.symmetrized_w_terms = w_orbit.term_count();
  if (expansion.is_zero() || w_orbit.is_zero()) return report;

  const auto& [probe, probe_coeff] = *w_orbit.terms().begin();
  Rational lambda = expansion.coefficient(probe) / probe_coeff;
  report.lambda = lambda;
  report.holds = !is_zero(lambda) && expansion == lambda * w_orbit;
  return report;
}

struct YagzhevReport {
  bool phi_symmetric_in_last_two = false;  // with no relations at all
  bool phi_totally_commutative = false;    // modulo the multilinearized pair
  bool simplified_in_span = false;         // braced swap follows from the pair
  bool commutative_from_first_alone = false; // control; expected false
  std::size_t pair_rank = 0;
  std::size_t first_rank = 0;
  std::size_t dimension = 0;
  std::size_t generation_log_length = 0;
};

// Checks the operadic content of the Yagzhev reformulation: with the two
// multilinearized identities in force, phi is totally commutative, and the
// braced-swap simplification follows from the pair. A control run with only
// the first identity shows the second is genuinely needed.
inline YagzhevReport verify_yagzhev() {
  YagzhevElements els = yagzhev_elements();
  YagzhevReport report;

  report.phi_symmetric_in_last_two = (els.phi == els.phi.relabel({1, 3, 2}));

  ConsequenceSpace pair_span =
      consequence_space({els.bullet_assoc, els.second_direct}, 3, OracleMode::Symmetric);
  ConsequenceSpace first_span =
      consequence_space({els.bullet_assoc}, 3, OracleMode::Symmetric);
  report.pair_rank = pair_span.rank();
  report.first_rank = first_span.rank();
  report.dimension = pair_span.dimension();
  report.generation_log_length = pair_span.generation_log().size();

  auto commutative_modulo = [&](const ConsequenceSpace& span) {
    std::vector<int> perm{1, 2, 3};
    std::sort(perm.begin(), perm.end());
    do {
      MagmaElement diff = els.phi.relabel(perm) - els.phi;
      if (diff.is_zero()) continue;
      if (!span.member(diff)) return false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return true;
  };

  report.phi_totally_commutative = commutative_modulo(pair_span);
  report.simplified_in_span = pair_span.member(els.braced_swap);
  report.commutative_from_first_alone = commutative_modulo(first_span);
  return report;
}

} // namespace opnil

#endif
