#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "opnil/basis_io.hpp"
#include "opnil/identities.hpp"

using namespace opnil;

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

std::string temp_path(const std::string& suffix) {
  std::string tmpl = "/tmp/opnil_test_XXXXXX";
  int fd = mkstemp(tmpl.data());
  REQUIRE(fd >= 0);
  close(fd);
  std::remove(tmpl.c_str());
  return tmpl + suffix;
}

// Runs the CLI binary, capturing stdout+stderr.
RunResult run_cli(const std::string& args) {
  std::string out_path = temp_path(".out");
  std::string cmd = std::string(OPNIL_CLI_PATH) + " " + args + " > " + out_path + " 2>&1";
  int status = std::system(cmd.c_str());
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::remove(out_path.c_str());
  return {code, ss.str()};
}

} // namespace

TEST_CASE("exit codes track the verdict taxonomy") {
  CHECK(run_cli("implies --given w4,w5 --target w6").exit_code == 0);
  CHECK(run_cli("implies --given w4 --target w5").exit_code == 0);
  CHECK(run_cli("implies --given w4 --target w7 --cap 5").exit_code == 2);
  CHECK(run_cli("implies --given w4 --target nonsense").exit_code == 3);
  CHECK(run_cli("verify no-such-theorem").exit_code == 3);
  CHECK(run_cli("conjecture w5-index15").exit_code == 2);
  CHECK(run_cli("conjecture t4-engel7").exit_code == 2);
  CHECK(run_cli("conjecture t3-arity9").exit_code == 2);
  // resource ceiling: the symmetric arity-8 component overflows the default bound
  CHECK(run_cli("verify sym:2:8").exit_code == 4);
}

TEST_CASE("implication verdicts print as stated") {
  RunResult r1 = run_cli("implies --given w4,w5 --target w6");
  CHECK(r1.output.find("True") != std::string::npos);
  RunResult r2 = run_cli("implies --given w4 --target w5");
  CHECK(r2.output.find("False") != std::string::npos);
  RunResult r3 = run_cli("implies --given w3 --target w4 --trace");
  CHECK(r3.output.find("True") != std::string::npos);
  CHECK(r3.output.find("rewrite") != std::string::npos);
}

TEST_CASE("basis files written by the CLI reload identically") {
  std::string path = temp_path(".json");
  RunResult r = run_cli("basis w4 w5 --k 2 --cap 7 --out " + path);
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("Complete") != std::string::npos);
  CHECK(r.output.find("arity 6 (4 rules)") != std::string::npos);
  GrobnerBasis loaded = load_basis(path);
  CHECK(loaded.rules().size() == 7);
  CHECK(loaded.certificate().complete);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(serialize_basis(loaded) == ss.str());
  std::remove(path.c_str());
}

TEST_CASE("ternary basis via the CLI") {
  std::string path = temp_path(".json");
  RunResult r = run_cli("basis 'w5^(3)' --k 3 --cap 11 --out " + path);
  REQUIRE(r.exit_code == 0);
  GrobnerBasis loaded = load_basis(path);
  CHECK(loaded.rules().size() == 5);
  std::remove(path.c_str());
}

TEST_CASE("element files feed the basis command") {
  std::string path = temp_path(".elems");
  {
    std::ofstream out(path);
    out << "# the arity-4 sum\n";
    out << print(w_element(2, 4)) << "\n";
  }
  RunResult r = run_cli("basis --from-file " + path + " --k 2 --cap 9 --certify off");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("arity 8 (11 rules)") != std::string::npos);
  std::remove(path.c_str());
  CHECK(run_cli("basis --from-file /no/such/file --cap 5").exit_code == 3);
}

TEST_CASE("verify drivers and formats") {
  RunResult text = run_cli("verify t3-chain");
  CHECK(text.exit_code == 0);
  CHECK(text.output.find("PASS t3-chain") != std::string::npos);
  RunResult json = run_cli("verify yagzhev --format json");
  CHECK(json.exit_code == 0);
  CHECK(json.output.find("\"pass\": true") != std::string::npos);
  RunResult bad_order = run_cli("basis w4 --cap 5 --order-variant pathlex-prefix-large-asc");
  CHECK(bad_order.exit_code == 3);
  RunResult knil = run_cli("verify knil:3");
  CHECK(knil.exit_code == 0);
  RunResult sym = run_cli("verify sym:3:5");
  CHECK(sym.exit_code == 0);
}

TEST_CASE("persisted bases are byte-identical across jobs and inert order variants") {
  std::string p1 = temp_path(".json");
  std::string p2 = temp_path(".json");
  REQUIRE(run_cli("basis w4 --k 2 --cap 8 --certify off --jobs 1 --out " + p1).exit_code == 0);
  REQUIRE(run_cli("basis w4 --k 2 --cap 8 --certify off --jobs 4 --out " + p2).exit_code == 0);
  auto slurp = [](const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  CHECK(slurp(p1) == slurp(p2));
  std::remove(p1.c_str());
  std::remove(p2.c_str());

  RunResult desc =
      run_cli("basis w4 w5 --k 2 --cap 7 --order-variant pathlex-prefix-small-desc");
  CHECK(desc.exit_code == 0);
  CHECK(desc.output.find("arity 6 (4 rules)") != std::string::npos);
}

TEST_CASE("conjecture experiments report without gating") {
  RunResult weak = run_cli("conjecture weak-nilpotence --n 4");
  CHECK(weak.exit_code == 0);
  CHECK(weak.output.find("True") != std::string::npos);
  RunResult t45 = run_cli("conjecture t4-t5");
  CHECK(t45.exit_code == 0);
  CHECK(t45.output.find("OBSERVED") != std::string::npos);
  RunResult tight = run_cli("conjecture knil-tightness --k 2");
  CHECK(tight.exit_code == 0);
  CHECK(tight.output.find("attained") != std::string::npos);
}

TEST_CASE("consequence-space matrices dump through the CLI") {
  std::string path = temp_path(".json");
  RunResult r = run_cli("verify engel3 --dump-space " + path);
  CHECK(r.exit_code == 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str().find("\"rank\": 10") != std::string::npos);
  CHECK(ss.str().find("\"dimension\": 15") != std::string::npos);
  std::remove(path.c_str());
}
