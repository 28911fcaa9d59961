#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "opnil/completion.hpp"
#include "opnil/symmetrization.hpp"
#include "opnil/verify.hpp"

using namespace opnil;

TEST_CASE("component dimensions") {
  std::vector<std::size_t> comm{1, 3, 15, 105, 945};
  for (std::size_t n = 2; n <= 6; ++n)
    CHECK(enumerate_labeled(2, n, true).size() == comm[n - 2]);
  std::vector<std::size_t> nc{1, 2, 12, 120, 1680};
  for (std::size_t n = 1; n <= 5; ++n) {
    CHECK(enumerate_labeled(2, n, false).size() == nc[n - 1]);
    CHECK(count_labeled(2, n, false) == Integer(static_cast<unsigned long>(nc[n - 1])));
  }
}

TEST_CASE("expansion under a product template") {
  MagmaElement expansion = expand_substitution(t_element(2, 3), symmetrized_product_template(2));
  CHECK(expansion.term_count() == 12);
  for (const auto& [t, c] : expansion.terms()) CHECK(c == 1);

  // identity template leaves an element unchanged
  MagmaElement idtmpl = MagmaElement::monomial(
      LabeledTree::node({LabeledTree::leaf(2, true, 1), LabeledTree::leaf(2, true, 2)}));
  CHECK(expand_substitution(t_element(2, 4), idtmpl) == t_element(2, 4));
  CHECK_THROWS_AS(expand_substitution(t_element(3, 5), idtmpl), Error);
}

TEST_CASE("symmetrization reports") {
  for (auto [k, d] : std::vector<std::pair<int, std::size_t>>{{2, 3}, {2, 4}, {2, 5}, {3, 5}}) {
    SymmetrizationReport r = verify_symmetrization(k, d);
    CHECK(r.holds);
    CHECK(!is_zero(r.lambda));
  }
  CHECK_THROWS_AS(verify_symmetrization(2, 9), Error); // resource guard
}

TEST_CASE("commutative consequence space of t3 at arity 4") {
  ConsequenceSpace space = consequence_space({t_element(2, 3)}, 4, OracleMode::Commutative);
  CHECK(space.dimension() == 15);
  CHECK(space.member(t_element(2, 4)));
  CHECK(space.member(engel_element(3)));
  CHECK(space.member(MagmaElement::zero(2, 4, true)));
  CHECK(!space.generation_log().empty());
  // the span is proper: single monomials do not all vanish
  bool all_monomials_inside = true;
  for (const LabeledTree& t : enumerate_labeled(2, 4, true))
    all_monomials_inside &= space.member(MagmaElement::monomial(t));
  CHECK(!all_monomials_inside);
}

TEST_CASE("ordered consequence spaces cross-check the rewriting verdicts") {
  auto to_ordered = [](const OperadElement& e) { return as_ordered_magma(e); };
  ConsequenceSpace w4_at5 =
      consequence_space({to_ordered(w_element(2, 4))}, 5, OracleMode::Ordered);
  CHECK(w4_at5.dimension() == 14);
  CHECK(!w4_at5.member(to_ordered(w_element(2, 5))));

  ConsequenceSpace both_at6 = consequence_space(
      {to_ordered(w_element(2, 4)), to_ordered(w_element(2, 5))}, 6, OracleMode::Ordered);
  CHECK(both_at6.member(to_ordered(w_element(2, 6))));

  ConsequenceSpace w3_at4 = consequence_space({to_ordered(w_element(2, 3))}, 4, OracleMode::Ordered);
  CHECK(w3_at4.member(to_ordered(w_element(2, 4))));
}

TEST_CASE("rewriting and oracle verdicts agree through binary arity 7 and ternary arity 9") {
  auto ordered = [](const OperadElement& e) { return as_ordered_magma(e); };
  struct Case {
    int k;
    std::vector<std::size_t> gen_arities;
    std::size_t target_arity;
  };
  std::vector<Case> cases{
      {2, {4}, 5},     {2, {4}, 6},     {2, {4}, 7},     {2, {4, 5}, 6}, {2, {4, 5}, 7},
      {2, {3}, 5},     {2, {3}, 7},     {3, {5}, 7},     {3, {5}, 9},
  };
  for (const Case& c : cases) {
    std::vector<OperadElement> gens;
    std::vector<MagmaElement> ogens;
    for (std::size_t a : c.gen_arities) {
      gens.push_back(w_element(c.k, a));
      ogens.push_back(ordered(gens.back()));
    }
    OperadElement target = w_element(c.k, c.target_arity);
    Verdict rewr = implies(gens, target, c.target_arity);
    ConsequenceSpace space = consequence_space(ogens, c.target_arity, OracleMode::Ordered);
    CHECK(space.member(ordered(target)) == (rewr == Verdict::True));
  }
}

TEST_CASE("empty generator list spans nothing") {
  ConsequenceSpace space = consequence_space({}, 4, OracleMode::Commutative);
  CHECK(space.rank() == 0);
  CHECK(space.member(MagmaElement::zero(2, 4, true)));
  CHECK(!space.member(t_element(2, 4)));
}

TEST_CASE("membership rejects mismatched components") {
  ConsequenceSpace space = consequence_space({t_element(2, 3)}, 4, OracleMode::Commutative);
  CHECK_THROWS_AS(space.member(as_ordered_magma(w_element(2, 4))), Error);
  CHECK_THROWS_AS(space.member(t_element(2, 5)), Error);
}

TEST_CASE("rank is stable under generator order and regeneration") {
  std::vector<MagmaElement> gens{t_element(2, 3), t_element(2, 4)};
  ConsequenceSpace a = consequence_space(gens, 5, OracleMode::Commutative);
  std::reverse(gens.begin(), gens.end());
  ConsequenceSpace b = consequence_space(gens, 5, OracleMode::Commutative);
  CHECK(a.rank() == b.rank());
  for (const LabeledTree& t : enumerate_labeled(2, 5, true))
    CHECK(a.member(MagmaElement::monomial(t)) == b.member(MagmaElement::monomial(t)));
}

TEST_CASE("dimension audit: sieve count equals corank, arities 4-8") {
  GrobnerBasis basis = complete({w_element(2, 4)}, 9, {}, {.certify = false});
  MagmaElement w4o = as_ordered_magma(w_element(2, 4));
  std::map<std::size_t, std::size_t> quotient_dims;
  for (std::size_t n : {4u, 5u, 6u, 7u, 8u}) {
    ConsequenceSpace space = consequence_space({w4o}, n, OracleMode::Ordered);
    std::size_t corank = space.dimension() - space.rank();
    CHECK(normal_monomial_count(basis, n) == corank);
    quotient_dims[n] = corank;
    if (n == 4) {
      CHECK(space.dimension() == 5);
      CHECK(space.rank() == 1);
      CHECK(corank == 4);
    }
  }
  // frozen from the two agreeing routes
  CHECK(quotient_dims ==
        std::map<std::size_t, std::size_t>{{4, 4}, {5, 8}, {6, 14}, {7, 16}, {8, 9}});
}

TEST_CASE("consequence-space matrix dumps carry the exact echelon form") {
  ConsequenceSpace space = consequence_space({t_element(2, 3)}, 4, OracleMode::Commutative);
  auto doc = space_to_json(space);
  CHECK(doc.at("dimension").get<std::size_t>() == 15);
  CHECK(doc.at("rank").get<std::size_t>() == space.rank());
  CHECK(doc.at("columns").size() == 15);
  CHECK(doc.at("rows").size() == space.rank());
  // every row starts at its pivot with coefficient 1
  for (const auto& row : doc.at("rows")) {
    CHECK(row.at(0).at("num").get<std::string>() == "1");
    CHECK(row.at(0).at("den").get<std::string>() == "1");
  }
}

TEST_CASE("resource ceilings trigger explicit errors") {
  OracleLimits tight{1000};
  CHECK_THROWS_WITH_AS(consequence_space({t_element(2, 4)}, 8, OracleMode::Commutative, tight),
                       doctest::Contains("bound"), Error);
}

TEST_CASE("yagzhev verification") {
  YagzhevReport r = verify_yagzhev();
  CHECK(r.phi_symmetric_in_last_two);
  CHECK(r.phi_totally_commutative);
  CHECK(r.simplified_in_span);
  CHECK(!r.commutative_from_first_alone);
}

TEST_CASE("oracle drivers pass") {
  CHECK(verify_t3chain().passed());
  CHECK(verify_engel3().passed());
  CHECK(verify_yagzhev_theorem().passed());
  for (auto [k, d] : std::vector<std::pair<int, std::size_t>>{{2, 3}, {2, 4}, {2, 5}, {3, 5}})
    CHECK(verify_sym(k, d).passed());
}

TEST_CASE("t4-t5 experiment reports a negative membership") {
  ExperimentReport rep = conjecture_t4_t5();
  CHECK(rep.lines.at(0).find("does not lie") != std::string::npos);
}
