#ifndef OPNIL_ELEMENT_HPP
#define OPNIL_ELEMENT_HPP

#include <map>
#include <utility>
#include <vector>

#include "opnil/order.hpp"
#include "opnil/rational.hpp"
#include "opnil/tree_monomial.hpp"

namespace opnil {

// Finite formal linear combination of same-arity tree monomials with exact
// rational coefficients. Zero coefficients are never stored; the zero element
// is the empty map (it still remembers its (k, arity) slot).
class OperadElement {
public:
  using TermMap = std::map<TreeMonomial, Rational>; // canonical encoding order

  OperadElement(int k, std::size_t arity) : k_(k), arity_(arity) {
    require_arity_compatible(k, arity);
  }

  static OperadElement zero(int k, std::size_t arity) { return OperadElement(k, arity); }

  static OperadElement monomial(const TreeMonomial& m, Rational coeff = 1) {
    OperadElement e(m.k(), m.arity());
    e.add_term(m, std::move(coeff));
    return e;
  }

  int k() const { return k_; }
  std::size_t arity() const { return arity_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  Rational coefficient(const TreeMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const TreeMonomial& m, const Rational& c) {
    if (opnil::is_zero(c)) return;
    check_slot(m);
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (opnil::is_zero(it->second)) terms_.erase(it);
    }
  }

  OperadElement& operator+=(const OperadElement& o) {
    check_slot(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  OperadElement& operator-=(const OperadElement& o) {
    check_slot(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  OperadElement& operator*=(const Rational& s) {
    if (opnil::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend OperadElement operator+(OperadElement a, const OperadElement& b) { return a += b; }
  friend OperadElement operator-(OperadElement a, const OperadElement& b) { return a -= b; }
  friend OperadElement operator*(OperadElement a, const Rational& s) { return a *= s; }
  friend OperadElement operator*(const Rational& s, OperadElement a) { return a *= s; }
  OperadElement operator-() const {
    OperadElement r(*this);
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }

  bool operator==(const OperadElement& o) const {
    return k_ == o.k_ && arity_ == o.arity_ && terms_ == o.terms_;
  }

  // Greatest monomial under spec; element must be nonzero.
  const TreeMonomial& leading_monomial(const OrderSpec& spec = OrderSpec{}) const {
    if (terms_.empty()) fail(ErrorKind::Input, "leading monomial of zero element");
    const TreeMonomial* best = &terms_.begin()->first;
    for (const auto& [m, c] : terms_)
      if (less_fast(*best, m, spec)) best = &m;
    return *best;
  }

  // Terms sorted descending under spec.
  std::vector<std::pair<TreeMonomial, Rational>> sorted_terms(
      const OrderSpec& spec = OrderSpec{}) const {
    std::vector<std::pair<TreeMonomial, Rational>> v(terms_.begin(), terms_.end());
    std::sort(v.begin(), v.end(), [&](const auto& a, const auto& b) {
      return less_fast(b.first, a.first, spec);
    });
    return v;
  }

  // Scale so the leading coefficient becomes 1.
  OperadElement monic(const OrderSpec& spec = OrderSpec{}) const {
    OperadElement r(*this);
    if (!r.is_zero()) r *= Rational(1) / r.terms_.at(r.leading_monomial(spec));
    return r;
  }

private:
  void check_slot(const TreeMonomial& m) const {
    if (m.k() != k_ || m.arity() != arity_)
      fail(ErrorKind::Arity, "element terms must share (k, arity); got arity " +
                                 std::to_string(m.arity()) + " in a slot of arity " +
                                 std::to_string(arity_));
  }
  void check_slot(const OperadElement& o) const {
    if (o.k_ != k_ || o.arity_ != arity_)
      fail(ErrorKind::Arity, "element arithmetic requires matching (k, arity)");
  }

  int k_;
  std::size_t arity_;
  TermMap terms_;
};

} // namespace opnil

#endif
