#ifndef OPNIL_SYNTAX_HPP
#define OPNIL_SYNTAX_HPP

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opnil/element.hpp"
#include "opnil/errors.hpp"
#include "opnil/tree_monomial.hpp"

namespace opnil {

// Monomial grammar:
//   leaf    ::= "a" positive-integer            (leaves must read a1..an)
//   node    ::= "(" term { " " term } ")"       (exactly k subterms)
//   element ::= [sign] [coefficient "*"] monomial { (" + " | " - ") [coefficient "*"] monomial }
// A coefficient of 1 is omitted when printing; "0" prints the zero element.

inline std::string print(const TreeMonomial& m) {
  std::string out;
  std::size_t next_label = 1;
  auto walk = [&](auto&& self, std::size_t pos) -> std::size_t {
    if (m.shape()[pos] == TreeMonomial::kLeaf) {
      out += "a" + std::to_string(next_label++);
      return pos + 1;
    }
    out += "(";
    std::size_t p = pos + 1;
    for (int c = 0; c < m.k(); ++c) {
      if (c) out += " ";
      p = self(self, p);
    }
    out += ")";
    return p;
  };
  walk(walk, 0);
  return out;
}

inline std::string print(const OperadElement& e, const OrderSpec& spec = OrderSpec{}) {
  if (e.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : e.sorted_terms(spec)) {
    Rational a = abs(c);
    if (first) {
      if (sgn(c) < 0) out += "-";
      first = false;
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    if (a != 1) out += to_string(a) + "*";
    out += print(m);
  }
  return out;
}

namespace detail {

struct Ast {
  long leaf_label = 0; // > 0 for leaves
  std::vector<Ast> children;
  bool is_leaf() const { return leaf_label > 0; }
};

class Parser {
public:
  Parser(std::string_view text, std::optional<int> expected_k)
      : text_(text), expected_k_(expected_k) {}

  TreeMonomial parse_monomial_only() {
    Ast ast = parse_term();
    skip_spaces();
    if (pos_ != text_.size()) error("trailing input after monomial");
    return build(ast);
  }

  OperadElement parse_element_only() {
    skip_spaces();
    bool negative = false;
    if (peek() == '-') {
      ++pos_;
      negative = true;
      skip_spaces();
    } else if (peek() == '+') {
      ++pos_;
      skip_spaces();
    }
    std::vector<std::pair<Rational, Ast>> terms;
    while (true) {
      Rational coeff = parse_optional_coefficient();
      if (negative) coeff = -coeff;
      next_label_ = 1;
      terms.emplace_back(std::move(coeff), parse_term());
      skip_spaces();
      if (pos_ == text_.size()) break;
      char s = peek();
      if (s == '+') negative = false;
      else if (s == '-') negative = true;
      else error("expected '+' or '-' between terms");
      ++pos_;
      skip_spaces();
    }
    std::optional<OperadElement> acc;
    for (auto& [coeff, ast] : terms) {
      TreeMonomial m = build(ast);
      if (!acc) acc = OperadElement::zero(m.k(), m.arity());
      else if (m.arity() != acc->arity() || m.k() != acc->k())
        error("terms of one element must share (k, arity)");
      acc->add_term(m, coeff);
    }
    return *acc;
  }

private:
  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorKind::Parse, msg + " at position " + std::to_string(pos_) + " in '" +
                               std::string(text_) + "'");
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_spaces() {
    while (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
  }

  Rational parse_optional_coefficient() {
    std::size_t p = pos_;
    while (p < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[p])) || text_[p] == '/'))
      ++p;
    if (p > pos_ && p < text_.size() && text_[p] == '*') {
      Rational c = parse_rational(std::string(text_.substr(pos_, p - pos_)));
      pos_ = p + 1;
      return c;
    }
    return Rational(1);
  }

  Ast parse_term() {
    skip_spaces();
    if (peek() == 'a') return parse_leaf();
    if (peek() == '(') return parse_node();
    error("expected a leaf or '('");
  }

  Ast parse_leaf() {
    ++pos_; // 'a'
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) error("leaf index expected after 'a'");
    unsigned long label = std::stoul(std::string(text_.substr(start, pos_ - start)));
    if (label != next_label_)
      error("leaves must read a1..an left to right; expected a" +
            std::to_string(next_label_) + ", saw a" + std::to_string(label));
    ++next_label_;
    Ast a;
    a.leaf_label = static_cast<long>(label);
    return a;
  }

  Ast parse_node() {
    std::size_t open = pos_;
    ++pos_; // '('
    Ast node;
    while (true) {
      skip_spaces();
      if (peek() == ')') break;
      if (pos_ == text_.size()) {
        pos_ = open;
        error("unbalanced '('");
      }
      node.children.push_back(parse_term());
    }
    ++pos_; // ')'
    int seen = static_cast<int>(node.children.size());
    if (expected_k_ && seen != *expected_k_)
      error("node has " + std::to_string(seen) + " operands, expected k = " +
            std::to_string(*expected_k_));
    if (seen < 2) error("node needs at least 2 operands");
    if (!k_) k_ = seen;
    else if (seen != *k_)
      error("node has " + std::to_string(seen) + " operands, expected k = " +
            std::to_string(*k_));
    return node;
  }

  TreeMonomial build(const Ast& ast) const {
    int k = k_ ? *k_ : expected_k_.value_or(2);
    std::vector<std::uint8_t> shape;
    auto walk = [&](auto&& self, const Ast& a) -> void {
      if (a.is_leaf()) {
        shape.push_back(TreeMonomial::kLeaf);
        return;
      }
      shape.push_back(TreeMonomial::kInternal);
      for (const Ast& c : a.children) self(self, c);
    };
    walk(walk, ast);
    return TreeMonomial(k, std::move(shape));
  }

  std::string_view text_;
  std::optional<int> expected_k_;
  std::optional<int> k_;
  std::size_t pos_ = 0;
  std::size_t next_label_ = 1;
};

} // namespace detail

inline TreeMonomial parse_monomial(std::string_view text, std::optional<int> expected_k = {}) {
  return detail::Parser(text, expected_k).parse_monomial_only();
}

inline OperadElement parse_element(std::string_view text, std::optional<int> expected_k = {}) {
  return detail::Parser(text, expected_k).parse_element_only();
}

} // namespace opnil

#endif
