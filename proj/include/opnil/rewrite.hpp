#ifndef OPNIL_REWRITE_HPP
#define OPNIL_REWRITE_HPP

#include <cassert>
#include <optional>
#include <unordered_map>
#include <vector>

#include "opnil/element.hpp"
#include "opnil/occurrence.hpp"
#include "opnil/order.hpp"
#include "opnil/syntax.hpp"

namespace opnil {

// Oriented relation lhs |-> rhs with lhs monic and every rhs monomial
// strictly below lhs under the basis order.
struct RewriteRule {
  TreeMonomial lhs;
  OperadElement rhs;

  std::size_t arity() const { return lhs.arity(); }
  bool operator==(const RewriteRule&) const = default;
};

// Complete: the rule set is the entire reduced basis of the ideal (every
// S-element up to the maximal possible overlap arity reduces to zero).
// Truncated: rules and reductions are exact for arities <= cap only.
struct Certificate {
  bool complete = false;
  std::size_t cap = 0;

  bool operator==(const Certificate&) const = default;
  std::string describe() const {
    return complete ? "Complete" : "TruncatedAt(" + std::to_string(cap) + ")";
  }
};

class GrobnerBasis {
public:
  GrobnerBasis(int k, OrderSpec order, std::size_t cap)
      : k_(k), order_(order), cap_(cap) {}

  int k() const { return k_; }
  const OrderSpec& order() const { return order_; }
  std::size_t cap() const { return cap_; }
  const Certificate& certificate() const { return cert_; }
  void set_certificate(Certificate c) { cert_ = c; }

  const std::vector<RewriteRule>& rules() const { return rules_; }

  std::vector<const RewriteRule*> rules_of_arity(std::size_t n) const {
    std::vector<const RewriteRule*> out;
    for (const auto& r : rules_)
      if (r.arity() == n) out.push_back(&r);
    return out;
  }

  std::size_t max_rule_arity() const {
    std::size_t m = 0;
    for (const auto& r : rules_) m = std::max(m, r.arity());
    return m;
  }

  void add_rule(RewriteRule rule) {
    if (rule.lhs.k() != k_) fail(ErrorKind::Arity, "rule k mismatch");
    if (!rule.rhs.is_zero()) {
      const TreeMonomial& lead = rule.rhs.leading_monomial(order_);
      if (!less_fast(lead, rule.lhs, order_))
        fail(ErrorKind::Input, "rule is not oriented: rhs is not below lhs");
    }
    rules_.push_back(std::move(rule));
    sort_rules();
  }

  // Whether no rule head embeds into m.
  bool is_normal_form(const TreeMonomial& m) const {
    for (const auto& r : rules_) {
      if (r.arity() > m.arity()) continue;
      if (opnil::divides(r.lhs, m)) return false;
    }
    return true;
  }

  // Reductions of arity-n inputs are exact iff every saturation level <= n
  // was processed, i.e. n <= cap (or the basis is globally complete).
  bool certified_through(std::size_t n) const { return cert_.complete || n <= cap_; }

private:
  // Canonical listing: ascending arity, descending head within an arity.
  void sort_rules() {
    std::sort(rules_.begin(), rules_.end(), [&](const RewriteRule& a, const RewriteRule& b) {
      if (a.arity() != b.arity()) return a.arity() < b.arity();
      return less_fast(b.lhs, a.lhs, order_);
    });
  }

  int k_;
  OrderSpec order_;
  std::size_t cap_;
  Certificate cert_;
  std::vector<RewriteRule> rules_;
};

// First reducible spot of a monomial: smallest preorder position, lowest rule
// index there. This fixed strategy keeps reduction deterministic even for
// rule sets that are not yet confluent.
struct Redex {
  std::size_t rule_index;
  Occurrence occ;
};

inline std::optional<Redex> first_redex(const GrobnerBasis& basis, const TreeMonomial& m) {
  const auto& rules = basis.rules();
  for (std::size_t pos = 0; pos < m.shape().size(); ++pos) {
    if (m.shape()[pos] != TreeMonomial::kInternal) continue;
    for (std::size_t ri = 0; ri < rules.size(); ++ri) {
      if (rules[ri].arity() > m.arity()) continue;
      if (auto occ = match_at(rules[ri].lhs, m, pos)) return Redex{ri, std::move(*occ)};
    }
  }
  return std::nullopt;
}

// Memoized normal forms against a fixed basis snapshot. Normal forms are
// computed monomial-wise over the rewrite DAG (iteratively, so deep chains
// cannot overflow the stack); distinct callers of one Reducer share results.
class Reducer {
public:
  explicit Reducer(const GrobnerBasis& basis) : basis_(basis) {}

  const GrobnerBasis& basis() const { return basis_; }

  const OperadElement& normal_form(const TreeMonomial& m) {
    auto it = memo_.find(m);
    if (it != memo_.end()) return it->second;

    struct Frame {
      TreeMonomial mono;
      std::optional<OperadElement> step;
    };
    std::vector<Frame> stack;
    stack.push_back({m, std::nullopt});
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (memo_.contains(f.mono)) {
        stack.pop_back();
        continue;
      }
      if (!f.step) {
        auto redex = first_redex(basis_, f.mono);
        if (!redex) {
          memo_.emplace(f.mono, OperadElement::monomial(f.mono));
          stack.pop_back();
          continue;
        }
        f.step = rewrite_at(f.mono, redex->occ, basis_.rules()[redex->rule_index].rhs);
      }
      std::vector<TreeMonomial> missing;
      for (const auto& [mm, c] : f.step->terms()) {
        assert(less_fast(mm, f.mono, basis_.order()) && "rewriting must decrease the order");
        if (!memo_.contains(mm)) missing.push_back(mm);
      }
      if (!missing.empty()) {
        // Pushing invalidates f; it is not touched again this iteration.
        for (TreeMonomial& mm : missing) stack.push_back({std::move(mm), std::nullopt});
        continue;
      }
      OperadElement result = OperadElement::zero(f.mono.k(), f.mono.arity());
      for (const auto& [mm, c] : f.step->terms()) result += c * memo_.at(mm);
      Frame done = std::move(stack.back());
      stack.pop_back();
      memo_.emplace(done.mono, std::move(result));
    }
    return memo_.at(m);
  }

  OperadElement reduce(const OperadElement& e) {
    OperadElement out = OperadElement::zero(e.k(), e.arity());
    for (const auto& [m, c] : e.terms()) out += c * normal_form(m);
    return out;
  }

private:
  const GrobnerBasis& basis_;
  std::unordered_map<TreeMonomial, OperadElement, TreeMonomialHash> memo_;
};

struct ReductionStep {
  std::size_t rule_index; // position in the basis's canonical listing
  std::size_t position;   // preorder root of the rewritten occurrence
  TreeMonomial monomial;  // the monomial that was rewritten
};

// Element-level reduction: always rewrites the order-greatest reducible
// monomial of the current element (first occurrence, lowest rule index),
// recording one entry per step. Used for traces and as an independent route
// against the memoized reducer.
inline OperadElement reduce_traced(const OperadElement& e, const GrobnerBasis& basis,
                                   std::vector<ReductionStep>* trace = nullptr) {
  OperadElement cur = e;
  while (true) {
    const TreeMonomial* target = nullptr;
    for (const auto& [m, c] : cur.terms()) {
      if (basis.is_normal_form(m)) continue;
      if (!target || less_fast(*target, m, basis.order())) target = &m;
    }
    if (!target) return cur;
    auto redex = first_redex(basis, *target);
    Rational coeff = cur.coefficient(*target);
    TreeMonomial mono = *target; // copy before mutating cur
    if (trace) trace->push_back({redex->rule_index, redex->occ.root_pos, mono});
    cur.add_term(mono, -coeff);
    cur += coeff * rewrite_at(mono, redex->occ, basis.rules()[redex->rule_index].rhs);
  }
}

// Public reduction with the truncation guard: answers above a truncated
// basis's cap are refused rather than silently wrong.
inline OperadElement reduce(const OperadElement& e, const GrobnerBasis& basis,
                            std::vector<ReductionStep>* trace = nullptr) {
  if (e.k() != basis.k()) fail(ErrorKind::Arity, "reduce: k mismatch with basis");
  if (!basis.certified_through(e.arity()))
    fail(ErrorKind::Cap, "inconclusive above cap: element arity " +
                             std::to_string(e.arity()) + " exceeds certified cap " +
                             std::to_string(basis.cap()));
  if (trace) return reduce_traced(e, basis, trace);
  Reducer r(basis);
  return r.reduce(e);
}

} // namespace opnil

#endif
