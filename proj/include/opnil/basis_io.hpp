#ifndef OPNIL_BASIS_IO_HPP
#define OPNIL_BASIS_IO_HPP

#include <fstream>
#include <string>

#include <json.hpp>

#include "opnil/consequence.hpp"
#include "opnil/rewrite.hpp"
#include "opnil/syntax.hpp"

namespace opnil {

// Basis files are JSON documents:
//   { "k", "order", "cap", "certificate", "rules": [ {"arity", "lhs",
//     "rhs": [ {"num", "den", "monomial"}, ... ]}, ... ] }
// Numerators and denominators are decimal strings so arbitrary-precision
// coefficients survive the round trip bit-exactly.

inline nlohmann::ordered_json basis_to_json(const GrobnerBasis& basis) {
  nlohmann::ordered_json doc;
  doc["k"] = basis.k();
  doc["order"] = basis.order().name();
  doc["cap"] = basis.cap();
  doc["certificate"] = basis.certificate().complete
                           ? nlohmann::ordered_json("Complete")
                           : nlohmann::ordered_json{{"TruncatedAt", basis.certificate().cap}};
  doc["rules"] = nlohmann::ordered_json::array();
  for (const RewriteRule& r : basis.rules()) {
    nlohmann::ordered_json rule;
    rule["arity"] = r.arity();
    rule["lhs"] = print(r.lhs);
    rule["rhs"] = nlohmann::ordered_json::array();
    for (const auto& [m, c] : r.rhs.sorted_terms(basis.order())) {
      rule["rhs"].push_back({{"num", to_string(Integer(c.get_num()))},
                             {"den", to_string(Integer(c.get_den()))},
                             {"monomial", print(m)}});
    }
    doc["rules"].push_back(std::move(rule));
  }
  return doc;
}

inline std::string serialize_basis(const GrobnerBasis& basis) {
  return basis_to_json(basis).dump(2) + "\n";
}

inline GrobnerBasis basis_from_json(const nlohmann::json& doc) {
  try {
    int k = doc.at("k").get<int>();
    OrderSpec order = OrderSpec::from_name(doc.at("order").get<std::string>());
    std::size_t cap = doc.at("cap").get<std::size_t>();
    GrobnerBasis basis(k, order, cap);
    for (const auto& rule : doc.at("rules")) {
      TreeMonomial lhs = parse_monomial(rule.at("lhs").get<std::string>(), k);
      OperadElement rhs = OperadElement::zero(k, lhs.arity());
      for (const auto& term : rule.at("rhs")) {
        Rational c(term.at("num").get<std::string>() + "/" + term.at("den").get<std::string>());
        c.canonicalize();
        rhs.add_term(parse_monomial(term.at("monomial").get<std::string>(), k), c);
      }
      basis.add_rule({std::move(lhs), std::move(rhs)});
    }
    const auto& cert = doc.at("certificate");
    if (cert.is_string() && cert.get<std::string>() == "Complete")
      basis.set_certificate({true, cap});
    else if (cert.is_object() && cert.contains("TruncatedAt"))
      basis.set_certificate({false, cert.at("TruncatedAt").get<std::size_t>()});
    else
      fail(ErrorKind::Parse, "basis file: unrecognized certificate");
    return basis;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parse, std::string("basis file: ") + e.what());
  }
}

inline GrobnerBasis deserialize_basis(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded()) fail(ErrorKind::Parse, "basis file: invalid JSON");
  return basis_from_json(doc);
}

inline void save_basis(const GrobnerBasis& basis, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Input, "cannot open '" + path + "' for writing");
  out << serialize_basis(basis);
}

// Matrix dump of a consequence space, same format family as basis files:
// column monomials in the element grammar, echelon rows as exact fractions.
inline nlohmann::ordered_json space_to_json(const ConsequenceSpace& space) {
  nlohmann::ordered_json doc;
  doc["k"] = space.k();
  doc["arity"] = space.arity();
  doc["mode"] = space.mode() == OracleMode::Ordered
                    ? "ordered"
                    : (space.mode() == OracleMode::Commutative ? "commutative" : "symmetric");
  doc["dimension"] = space.dimension();
  doc["rank"] = space.rank();
  doc["generation_log_length"] = space.generation_log().size();
  doc["columns"] = nlohmann::ordered_json::array();
  for (const LabeledTree& t : space.columns()) doc["columns"].push_back(t.str());
  doc["rows"] = nlohmann::ordered_json::array();
  for (const SparseRow& row : space.echelon().reduced_rows()) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (const auto& [col, c] : row) {
      r.push_back({{"column", col},
                   {"num", to_string(Integer(c.get_num()))},
                   {"den", to_string(Integer(c.get_den()))}});
    }
    doc["rows"].push_back(std::move(r));
  }
  return doc;
}

inline GrobnerBasis load_basis(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Input, "cannot open '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize_basis(text);
}

} // namespace opnil

#endif
