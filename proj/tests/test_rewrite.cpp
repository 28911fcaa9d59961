#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "opnil/basis_io.hpp"
#include "opnil/completion.hpp"
#include "opnil/identities.hpp"
#include "opnil/reference_bases.hpp"

using namespace opnil;

namespace {

// Independent embedding counter used as the oracle for find_occurrences: it
// decodes both trees into node structures and matches them recursively,
// sharing no code with the production walk.
struct PlainNode {
  bool leaf = true;
  std::vector<PlainNode> children;
};

PlainNode decode(const TreeMonomial& m, std::size_t& pos) {
  PlainNode node;
  if (m.shape()[pos] == TreeMonomial::kLeaf) {
    ++pos;
    return node;
  }
  node.leaf = false;
  ++pos;
  for (int c = 0; c < m.k(); ++c) node.children.push_back(decode(m, pos));
  return node;
}

PlainNode decode(const TreeMonomial& m) {
  std::size_t pos = 0;
  return decode(m, pos);
}

bool matches_here(const PlainNode& pattern, const PlainNode& host) {
  if (pattern.leaf) return true;
  if (host.leaf) return false;
  for (std::size_t c = 0; c < pattern.children.size(); ++c)
    if (!matches_here(pattern.children[c], host.children[c])) return false;
  return true;
}

std::size_t count_embeddings(const PlainNode& pattern, const PlainNode& host) {
  std::size_t total = matches_here(pattern, host) && !pattern.leaf && !host.leaf ? 1 : 0;
  if (pattern.leaf && host.leaf) total = 1;
  if (pattern.leaf && !host.leaf) total = 1; // a leaf pattern roots anywhere
  if (!host.leaf)
    for (const auto& c : host.children) total += count_embeddings(pattern, c);
  return total;
}

GrobnerBasis basis_from_reference(const ReferenceBasis& ref, std::size_t cap) {
  GrobnerBasis basis(ref.k, OrderSpec{}, cap);
  for (const auto& rr : ref.rules) {
    TreeMonomial lhs = parse_monomial(rr.lhs, ref.k);
    OperadElement rhs = OperadElement::zero(ref.k, lhs.arity());
    for (const auto& t : rr.rhs) rhs.add_term(parse_monomial(t.monomial, ref.k), parse_rational(t.coeff));
    basis.add_rule({std::move(lhs), std::move(rhs)});
  }
  basis.set_certificate({true, cap});
  return basis;
}

} // namespace

TEST_CASE("occurrences: identity embedding and the comb pair") {
  auto comb4 = parse_monomial("(((a1 a2) a3) a4)");
  auto comb5 = parse_monomial("((((a1 a2) a3) a4) a5)");
  CHECK(find_occurrences(comb4, comb4).size() == 1);
  auto occs = find_occurrences(comb4, comb5);
  CHECK(occs.size() == 2);
  CHECK(count_embeddings(decode(comb4), decode(comb5)) == 2);
  for (const auto& occ : occs) CHECK(occurrence_reproduces_host(comb4, comb5, occ));
}

TEST_CASE("occurrence counts agree with the independent matcher") {
  std::mt19937 rng(23);
  const auto& hosts = detail::monomials_unsorted(2, 7);
  const auto& pats = detail::monomials_unsorted(2, 4);
  for (int trial = 0; trial < 600; ++trial) {
    const auto& p = pats[rng() % pats.size()];
    const auto& h = hosts[rng() % hosts.size()];
    auto occs = find_occurrences(p, h);
    CHECK(occs.size() == count_embeddings(decode(p), decode(h)));
    for (const auto& occ : occs) CHECK(occurrence_reproduces_host(p, h, occ));
  }
}

TEST_CASE("the right comb of arity 7 avoids every head of the w4 basis") {
  GrobnerBasis basis = basis_from_reference(reference_basis_w4(), 9);
  auto probe = parse_monomial("(a1 (a2 (a3 (a4 (a5 (a6 a7))))))");
  for (const auto& r : basis.rules()) CHECK(find_occurrences(r.lhs, probe).empty());
  CHECK(basis.is_normal_form(probe));
}

TEST_CASE("reduction examples") {
  GrobnerBasis w4w5 = complete({w_element(2, 4), w_element(2, 5)}, 7);
  CHECK(reduce(w_element(2, 6), w4w5).is_zero());
  CHECK(reduce(OperadElement::zero(2, 6), w4w5).is_zero());

  GrobnerBasis w4 = complete({w_element(2, 4)}, 9, {}, {.certify = false});
  auto lnil = parse_monomial("(a1 (a2 (a3 (a4 (a5 (a6 (a7 a8)))))))");
  CHECK(reduce(OperadElement::monomial(lnil), w4).is_zero());
  auto z8 = OperadElement::monomial(zigzag(8));
  CHECK(reduce(z8, w4) == z8);
}

TEST_CASE("reduction above a truncated cap is refused") {
  GrobnerBasis w4 = complete({w_element(2, 4)}, 6, {}, {.certify = false});
  CHECK(!w4.certificate().complete);
  CHECK_THROWS_WITH_AS(reduce(w_element(2, 7), w4), doctest::Contains("inconclusive above cap"),
                       Error);
}

TEST_CASE("each reduction step strictly lowers the rewritten monomial") {
  GrobnerBasis w4w5 = complete({w_element(2, 4), w_element(2, 5)}, 7);
  std::vector<ReductionStep> trace;
  OperadElement nf = reduce(w_element(2, 6), w4w5, &trace);
  CHECK(nf.is_zero());
  CHECK(!trace.empty());
  for (const auto& step : trace) {
    const RewriteRule& rule = w4w5.rules()[step.rule_index];
    auto occ = match_at(rule.lhs, step.monomial, step.position);
    REQUIRE(occ.has_value());
    OperadElement image = rewrite_at(step.monomial, *occ, rule.rhs);
    for (const auto& [m, c] : image.terms())
      CHECK(compare(m, step.monomial, w4w5.order()) == Cmp::Less);
  }
}

TEST_CASE("normal forms are strategy independent on complete bases") {
  GrobnerBasis basis = complete({w_element(2, 4), w_element(2, 5)}, 7);
  std::mt19937 rng(41);
  const auto& monos6 = detail::monomials_unsorted(2, 6);
  for (int trial = 0; trial < 40; ++trial) {
    OperadElement e = OperadElement::zero(2, 6);
    for (int t = 0; t < 5; ++t)
      e.add_term(monos6[rng() % monos6.size()],
                 Rational(static_cast<long>(rng() % 7) - 3));
    Reducer memoized(basis);
    OperadElement a = memoized.reduce(e);
    OperadElement b = reduce_traced(e, basis);
    CHECK(a == b);
    // randomized rule application: rewrite random redexes until normal
    OperadElement c = e;
    while (true) {
      std::vector<std::pair<TreeMonomial, Redex>> redexes;
      for (const auto& [m, coef] : c.terms()) {
        for (std::size_t pos = 0; pos < m.shape().size(); ++pos)
          for (std::size_t ri = 0; ri < basis.rules().size(); ++ri) {
            if (basis.rules()[ri].arity() > m.arity()) continue;
            if (auto occ = match_at(basis.rules()[ri].lhs, m, pos))
              redexes.push_back({m, Redex{ri, *occ}});
          }
      }
      if (redexes.empty()) break;
      auto& [m, redex] = redexes[rng() % redexes.size()];
      Rational coeff = c.coefficient(m);
      TreeMonomial mono = m;
      c.add_term(mono, -coeff);
      c += coeff * rewrite_at(mono, redex.occ, basis.rules()[redex.rule_index].rhs);
    }
    CHECK(c == a);
  }
}

TEST_CASE("critical pairs of the left comb live in arities 5 and 6") {
  GrobnerBasis basis(2, OrderSpec{}, 9);
  auto comb4 = parse_monomial("(((a1 a2) a3) a4)");
  basis.add_rule({comb4, OperadElement::zero(2, 4)});
  auto pairs = critical_pairs(basis);
  std::set<std::size_t> arities;
  for (const auto& cp : pairs) arities.insert(cp.overlap.arity());
  CHECK(arities == std::set<std::size_t>{5, 6});
  std::size_t at5 = 0;
  for (const auto& cp : pairs) at5 += (cp.overlap.arity() == 5);
  CHECK(at5 > 0);
}

TEST_CASE("a single-node head has no self overlap") {
  GrobnerBasis basis(2, OrderSpec{}, 4);
  basis.add_rule({parse_monomial("(a1 a2)"), OperadElement::zero(2, 2)});
  CHECK(critical_pairs(basis).empty());
}

TEST_CASE("every S-element of the reproduced bases reduces to zero") {
  for (GrobnerBasis basis : {complete({w_element(2, 4), w_element(2, 5)}, 7),
                             complete({w_element(3, 5)}, 9)}) {
    Reducer red(basis);
    for (const auto& cp : critical_pairs(basis)) CHECK(red.reduce(cp.s_elem).is_zero());
  }
}

TEST_CASE("basis files round trip byte for byte") {
  GrobnerBasis basis = complete({w_element(2, 4), w_element(2, 5)}, 7);
  std::string text = serialize_basis(basis);
  GrobnerBasis loaded = deserialize_basis(text);
  CHECK(loaded.k() == basis.k());
  CHECK(loaded.cap() == basis.cap());
  CHECK(loaded.certificate() == basis.certificate());
  CHECK(loaded.rules() == basis.rules());
  CHECK(serialize_basis(loaded) == text);
  // and a rational-coefficient stress rule
  GrobnerBasis fancy(2, OrderSpec{}, 4);
  OperadElement rhs = OperadElement::zero(2, 4);
  rhs.add_term(parse_monomial("(a1 (a2 (a3 a4)))"), parse_rational("-123456789123456788/7"));
  fancy.add_rule({parse_monomial("(((a1 a2) a3) a4)"), rhs});
  CHECK(serialize_basis(deserialize_basis(serialize_basis(fancy))) == serialize_basis(fancy));
}

TEST_CASE("rules must be oriented downhill") {
  GrobnerBasis basis(2, OrderSpec{}, 4);
  OperadElement bad = OperadElement::monomial(parse_monomial("(((a1 a2) a3) a4)"));
  CHECK_THROWS_AS(basis.add_rule({parse_monomial("(a1 (a2 (a3 a4)))"), bad}), Error);
}
