// opnil: reduced rewriting bases, implication checking, and brute-force
// verification for the nilpotence identity families w_n, t_n.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "opnil/basis_io.hpp"
#include "opnil/verify.hpp"

namespace {

using namespace opnil;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitInputError = 3;
constexpr int kExitResourceLimit = 4;

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Cap: return kExitInconclusive;
    case ErrorKind::Resource: return kExitResourceLimit;
    default: return kExitInputError;
  }
}

OperadElement resolve_operad_identity(const std::string& name) {
  IdentityName id = parse_identity_name(name);
  switch (id.family) {
    case IdentityName::Family::W: return w_element(id.k, id.n);
    case IdentityName::Family::Zigzag: return OperadElement::monomial(zigzag(id.n));
    default:
      fail(ErrorKind::Input,
           "identity '" + name +
               "' is commutative/symmetric and lives in the oracle; rewriting bases take "
               "w-family identities or literal elements");
  }
}

std::vector<OperadElement> load_element_file(const std::string& path, std::optional<int> k) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Input, "cannot open element file '" + path + "'");
  std::vector<OperadElement> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    try {
      out.push_back(parse_element(line, k));
    } catch (const Error& e) {
      fail(ErrorKind::Parse, path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (out.empty()) fail(ErrorKind::Input, "element file '" + path + "' holds no elements");
  return out;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void print_basis_listing(const GrobnerBasis& basis, std::ostream& os) {
  os << "k = " << basis.k() << ", order = " << basis.order().name()
     << ", cap = " << basis.cap() << ", certificate = " << basis.certificate().describe()
     << "\n";
  auto counts = rule_counts_by_arity(basis);
  for (const auto& [arity, count] : counts) {
    os << "arity " << arity << " (" << count << (count == 1 ? " rule):\n" : " rules):\n");
    for (const RewriteRule& r : basis.rules()) {
      if (r.arity() != arity) continue;
      os << "  " << print(r.lhs) << " -> " << print(r.rhs, basis.order()) << "\n";
    }
  }
}

nlohmann::ordered_json report_to_json(const TheoremReport& rep) {
  nlohmann::ordered_json j;
  j["id"] = rep.id;
  j["pass"] = rep.passed();
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : rep.checks)
    j["checks"].push_back({{"label", c.label}, {"pass", c.pass}, {"detail", c.detail}});
  j["observations"] = rep.observations;
  j["metrics"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : rep.metrics) j["metrics"][k] = v;
  j["display_defects"] = rep.discrepancies;
  return j;
}

struct CommonFlags {
  int jobs = 1;
  std::string order_variant = "default";
  std::string format = "text";
  bool long_run = false;
  std::size_t max_entries = OracleLimits{}.max_nonzeros;
};

int run(int argc, char** argv) {
  CLI::App app{
      "opnil: rewriting bases, implication tests, and exhaustive verification for "
      "nonassociative nilpotence identities"};
  app.require_subcommand(1);

  CommonFlags common;

  // ---- basis ----
  auto* cmd_basis = app.add_subcommand(
      "basis", "Compute and persist the reduced rewriting basis of identities");
  std::vector<std::string> basis_names;
  std::string basis_file, basis_out;
  int basis_k = 0;
  std::size_t basis_cap = 0;
  std::string basis_certify = "on";
  cmd_basis->add_option("names", basis_names, "identity names (w4, w5^(3), zigzag6, ...)");
  cmd_basis->add_option("--from-file", basis_file, "file with one element per line");
  cmd_basis->add_option("--k", basis_k, "operation arity (checked against the identities)");
  cmd_basis->add_option("--cap", basis_cap, "arity truncation cap")->required();
  cmd_basis->add_option("--out", basis_out, "write the basis file here");
  cmd_basis->add_option("--certify", basis_certify, "closure certification: on|off")
      ->check(CLI::IsMember({"on", "off"}));
  cmd_basis->add_option("--order-variant", common.order_variant, "monomial order variant");
  cmd_basis->add_option("--jobs", common.jobs, "worker threads");
  cmd_basis->add_option("--format", common.format)->check(CLI::IsMember({"text", "json"}));

  // ---- implies ----
  auto* cmd_implies =
      app.add_subcommand("implies", "Decide whether an identity follows from given ones");
  std::string given_names, given_file, target_name;
  std::size_t implies_cap = 0;
  bool implies_trace = false;
  cmd_implies->add_option("--given", given_names, "comma-separated identity names");
  cmd_implies->add_option("--given-file", given_file, "file with one element per line");
  cmd_implies->add_option("--target", target_name, "target identity name")->required();
  cmd_implies->add_option("--cap", implies_cap, "truncation cap (default: target arity)");
  cmd_implies->add_flag("--trace", implies_trace, "print every rewriting step");
  cmd_implies->add_option("--order-variant", common.order_variant);
  cmd_implies->add_option("--jobs", common.jobs);
  cmd_implies->add_option("--format", common.format)->check(CLI::IsMember({"text", "json"}));

  // ---- verify ----
  auto* cmd_verify = app.add_subcommand("verify", "Run the scripted checks of one theorem");
  std::string verify_id;
  cmd_verify
      ->add_option("id", verify_id,
                   "bnil | 3nil | knil:<k> | sym:<k>:<d> | t3-chain | engel3 | yagzhev")
      ->required();
  cmd_verify->add_option("--jobs", common.jobs);
  cmd_verify->add_option("--max-entries", common.max_entries, "oracle nonzero-entry bound");
  std::string verify_dump_space;
  cmd_verify->add_option("--dump-space", verify_dump_space,
                         "write the consequence-space matrix here (oracle targets)");
  cmd_verify->add_option("--format", common.format)->check(CLI::IsMember({"text", "json"}));

  // ---- conjecture ----
  auto* cmd_conjecture =
      app.add_subcommand("conjecture", "Run one conjecture experiment (reports, never proofs "
                                       "unless certified)");
  std::string conj_id;
  std::size_t conj_n = 5;
  int conj_k = 3;
  cmd_conjecture
      ->add_option("id", conj_id,
                   "weak-nilpotence | t4-t5 | knil-tightness | w5-index15 | t4-engel7 | "
                   "t3-arity9")
      ->required();
  cmd_conjecture->add_option("--n", conj_n, "index parameter for weak-nilpotence");
  cmd_conjecture->add_option("--k", conj_k, "operation arity for knil-tightness");
  cmd_conjecture->add_flag("--long-run", common.long_run,
                           "allow experiments beyond desk scale");
  cmd_conjecture->add_option("--jobs", common.jobs);
  cmd_conjecture->add_option("--max-entries", common.max_entries);
  std::string conj_dump_space;
  cmd_conjecture->add_option("--dump-space", conj_dump_space,
                             "write the consequence-space matrix here (oracle targets)");
  cmd_conjecture->add_option("--format", common.format)->check(CLI::IsMember({"text", "json"}));

  CLI11_PARSE(app, argc, argv);

  OrderSpec order = OrderSpec::from_name(common.order_variant);
  OracleLimits limits{common.max_entries};

  if (*cmd_basis) {
    std::vector<OperadElement> gens;
    for (const std::string& name : basis_names) gens.push_back(resolve_operad_identity(name));
    if (!basis_file.empty()) {
      std::optional<int> k;
      if (basis_k) k = basis_k;
      else if (!gens.empty()) k = gens.front().k();
      for (auto& e : load_element_file(basis_file, k)) gens.push_back(std::move(e));
    }
    if (gens.empty()) fail(ErrorKind::Input, "no identities given (names or --from-file)");
    if (basis_k)
      for (const auto& g : gens)
        if (g.k() != basis_k)
          fail(ErrorKind::Arity, "--k = " + std::to_string(basis_k) +
                                     " does not match an identity of arity k = " +
                                     std::to_string(g.k()));
    GrobnerBasis basis = complete(gens, basis_cap, order,
                                  {.certify = basis_certify == "on", .jobs = common.jobs});
    if (!basis_out.empty()) save_basis(basis, basis_out);
    if (common.format == "json") {
      std::cout << basis_to_json(basis).dump(2) << "\n";
    } else {
      print_basis_listing(basis, std::cout);
      if (!basis_out.empty()) std::cout << "written to " << basis_out << "\n";
    }
    if (!basis.certificate().complete && basis_certify == "on")
      std::cerr << "warning: completion is not certified complete above cap "
                << basis.cap() << "\n";
    return kExitPass;
  }

  if (*cmd_implies) {
    std::vector<OperadElement> gens;
    for (const std::string& name : split_commas(given_names))
      gens.push_back(resolve_operad_identity(name));
    if (!given_file.empty()) {
      std::optional<int> k;
      if (!gens.empty()) k = gens.front().k();
      for (auto& e : load_element_file(given_file, k)) gens.push_back(std::move(e));
    }
    if (gens.empty()) fail(ErrorKind::Input, "no given identities (--given or --given-file)");
    OperadElement target = resolve_operad_identity(target_name);
    std::size_t cap = implies_cap ? implies_cap : target.arity();
    std::vector<ReductionStep> trace;
    GrobnerBasis basis(target.k(), order, cap);
    Verdict v = implies(gens, target, cap, order, {.certify = false, .jobs = common.jobs},
                        implies_trace ? &trace : nullptr, &basis);
    if (common.format == "json") {
      nlohmann::ordered_json j;
      j["given"] = split_commas(given_names);
      j["target"] = target_name;
      j["cap"] = cap;
      j["verdict"] = to_string(v);
      if (implies_trace) {
        j["trace"] = nlohmann::ordered_json::array();
        for (const auto& s : trace)
          j["trace"].push_back({{"rule", s.rule_index},
                                {"position", s.position},
                                {"monomial", print(s.monomial)}});
      }
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << to_string(v) << "\n";
      if (implies_trace) {
        for (const auto& s : trace)
          std::cout << "  rewrite " << print(s.monomial) << " by rule #" << s.rule_index
                    << " at position " << s.position << "\n";
        std::cout << "  " << trace.size() << " steps\n";
      }
    }
    return v == Verdict::InconclusiveAboveCap ? kExitInconclusive : kExitPass;
  }

  if (*cmd_verify) {
    TheoremReport rep = run_verify(verify_id, common.jobs, limits, verify_dump_space);
    if (common.format == "json") std::cout << report_to_json(rep).dump(2) << "\n";
    else std::cout << rep.text();
    return rep.passed() ? kExitPass : kExitCheckFailed;
  }

  if (*cmd_conjecture) {
    ExperimentReport rep =
        run_conjecture(conj_id, conj_n, conj_k, common.long_run, common.jobs, limits,
                       conj_dump_space);
    if (common.format == "json") {
      nlohmann::ordered_json j;
      j["id"] = rep.id;
      j["lines"] = rep.lines;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << rep.text();
    }
    return kExitPass;
  }

  return kExitInputError;
}

} // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const opnil::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}
