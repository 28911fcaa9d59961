#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "opnil/identities.hpp"
#include "opnil/reference_bases.hpp"
#include "opnil/syntax.hpp"

using namespace opnil;

TEST_CASE("small w elements print as displayed") {
  CHECK(print(w_element(2, 1)) == "a1");
  CHECK(print(w_element(2, 3)) == "((a1 a2) a3) + (a1 (a2 a3))");
  CHECK(w_element(3, 5) ==
        parse_element("((a1 a2 a3) a4 a5) + (a1 (a2 a3 a4) a5) + (a1 a2 (a3 a4 a5))", 3));
  CHECK_THROWS_AS(w_element(3, 4), Error);
}

TEST_CASE("w term counts follow the closed form") {
  for (std::size_t n = 1; n <= 10; ++n) {
    Integer expected = binomial(2 * n - 2, n - 1) / n;
    CHECK(Integer(static_cast<unsigned long>(w_element(2, n).term_count())) == expected);
  }
  for (std::size_t n = 1; n <= 11; n += 2)
    CHECK(Integer(static_cast<unsigned long>(w_element(3, n).term_count())) ==
          fuss_catalan(3, (n - 1) / 2));
  for (std::size_t n = 1; n <= 13; n += 3)
    CHECK(Integer(static_cast<unsigned long>(w_element(4, n).term_count())) ==
          fuss_catalan(4, (n - 1) / 3));
}

TEST_CASE("enumeration and induction build the same w") {
  for (std::size_t n = 1; n <= 9; ++n) CHECK(w_element(2, n) == w_element_inductive(2, n));
  for (std::size_t n = 1; n <= 9; n += 2) CHECK(w_element(3, n) == w_element_inductive(3, n));
  for (std::size_t n = 1; n <= 10; n += 3) CHECK(w_element(4, n) == w_element_inductive(4, n));
}

TEST_CASE("t elements: display, counts, and the shuffle-split induction") {
  MagmaElement t3 = t_element(2, 3);
  CHECK(t3.term_count() == 3);
  // (a1 a2) a3 + (a1 a3) a2 + a1 (a2 a3), as commutative classes
  auto lf = [](int l) { return LabeledTree::leaf(2, true, l); };
  CHECK(t3.coefficient(LabeledTree::node({lf(3), LabeledTree::node({lf(1), lf(2)})})) == 1);
  CHECK(t3.coefficient(LabeledTree::node({lf(2), LabeledTree::node({lf(1), lf(3)})})) == 1);
  CHECK(t3.coefficient(LabeledTree::node({lf(1), LabeledTree::node({lf(2), lf(3)})})) == 1);

  for (std::size_t n = 2; n <= 8; ++n)
    CHECK(Integer(static_cast<unsigned long>(t_element(2, n).term_count())) ==
          double_factorial_odd(n));
  CHECK(t_element(3, 5).term_count() == 10);

  for (std::size_t n = 1; n <= 7; ++n) CHECK(t_element(2, n) == t_element_inductive(2, n));
  for (std::size_t n = 1; n <= 7; n += 2) CHECK(t_element(3, n) == t_element_inductive(3, n));
}

TEST_CASE("counting matches enumeration and scales past it") {
  for (std::size_t n = 1; n <= 8; ++n)
    CHECK(count_labeled(2, n, true) ==
          Integer(static_cast<unsigned long>(enumerate_labeled(2, n, true).size())));
  for (std::size_t n = 1; n <= 10; ++n)
    CHECK(count_labeled(2, n, true) == double_factorial_odd(n));
  for (std::size_t n = 1; n <= 5; ++n)
    CHECK(count_labeled(2, n, false) ==
          Integer(static_cast<unsigned long>(enumerate_labeled(2, n, false).size())));
  // ternary and quaternary closed-form spans used by the oracle guards
  CHECK(count_labeled(3, 11, true) > 0);
  CHECK(count_labeled(4, 13, true) > 0);
}

TEST_CASE("zig-zag monomials follow the displayed recursion") {
  CHECK(zigzag(1) == TreeMonomial::leaf(2));
  CHECK(zigzag(2) == parse_monomial("(a1 a2)"));
  CHECK(zigzag(3) == parse_monomial("(a1 (a2 a3))"));
  CHECK(zigzag(4) == parse_monomial("((a1 (a2 a3)) a4)"));
  CHECK(zigzag(5) == parse_monomial("(a1 ((a2 (a3 a4)) a5))"));
  CHECK(zigzag(6) == parse_monomial("((a1 ((a2 (a3 a4)) a5)) a6)"));
}

TEST_CASE("zig-zags stay clear of the w4 heads") {
  const ReferenceBasis& ref = reference_basis_w4();
  for (std::size_t n = 1; n <= 12; ++n) {
    TreeMonomial z = zigzag(n);
    for (const auto& rule : ref.rules) {
      TreeMonomial lhs = parse_monomial(rule.lhs, 2);
      if (lhs.arity() > z.arity()) continue;
      CHECK(find_occurrences(lhs, z).empty());
    }
  }
}

TEST_CASE("engel multilinearizations") {
  CHECK(engel_element(1).term_count() == 1);
  MagmaElement e3 = engel_element(3);
  CHECK(e3.term_count() == 6);
  for (const auto& [t, c] : e3.terms()) CHECK(c == 1);
  CHECK(e3.arity() == 4);
}

TEST_CASE("yagzhev elements expand as displayed") {
  YagzhevElements els = yagzhev_elements();
  CHECK(els.bullet_assoc.term_count() == 4);
  for (const auto& [t, c] : els.bullet_assoc.terms()) CHECK(c == 1);
  CHECK(els.second_direct.term_count() == 6);
  CHECK(els.braced_swap.term_count() == 8);
  CHECK(els.phi.term_count() == 4);
  // phi(x, y, z) = phi(x, z, y) with no relations at all
  CHECK(els.phi == els.phi.relabel({1, 3, 2}));
  CHECK(!(els.phi == els.phi.relabel({2, 1, 3})));
}

TEST_CASE("identity names resolve") {
  IdentityName w = parse_identity_name("w4");
  CHECK(w.family == IdentityName::Family::W);
  CHECK(w.k == 2);
  CHECK(w.n == 4);
  IdentityName w3k = parse_identity_name("w5^(3)");
  CHECK(w3k.k == 3);
  CHECK(w3k.n == 5);
  CHECK(parse_identity_name("t7^(4)").family == IdentityName::Family::T);
  CHECK(parse_identity_name("zigzag12").n == 12);
  CHECK(parse_identity_name("engel3").n == 3);
  CHECK(parse_identity_name("yag1").family == IdentityName::Family::Yag1);
  CHECK(parse_identity_name("phi").family == IdentityName::Family::Phi);
  CHECK_THROWS_AS(parse_identity_name("q3"), Error);
  CHECK_THROWS_AS(parse_identity_name("w6^(3)"), Error);
  CHECK_THROWS_AS(parse_identity_name("w4^(1)"), Error);
  CHECK_THROWS_AS(parse_identity_name("zigzag"), Error);
}
