#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "common.hpp"
#include "slp/pogen.hpp"

using namespace slp;
namespace fs = std::filesystem;

namespace {

const ProofObligation& find(const std::vector<ProofObligation>& pos, const std::string& id) {
  for (const auto& po : pos)
    if (po.id == id) return po;
  throw std::runtime_error("no obligation " + id);
}

std::string all_scripts(const Loaded& l) {
  std::string out;
  for (const auto& po : generate(l.model, l.interp)) {
    try {
      out += export_solver(l.model, po, &l.interp);
    } catch (const SlpError& e) {
      out += "; " + po.id + ": " + e.code() + "\n";
    }
  }
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool have_z3() { return std::system("z3 -version > /dev/null 2>&1") == 0; }

std::string z3(const std::string& script) {
  fs::path path = fs::temp_directory_path() / "slp_unit_test.smt2";
  std::ofstream(path) << script;
  std::string cmd = "z3 -T:20 '" + path.string() + "'";
  std::FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  char buf[128];
  while (std::fgets(buf, sizeof buf, pipe)) out += buf;
  pclose(pipe);
  while (!out.empty() && out.back() == '\n') out.pop_back();
  return out;
}

const char* kThm = R"(MODEL thm
AXIOMS
  THEOREM thm1: !a.(a : NAT => a >= 0)
  THEOREM thm2: {1 |-> 2}(1) = 2
VARIABLES t
INVARIANTS
  inv1: t : 0 .. 5
INITIALISATION t := 0
PROCESS p
END
CHECK
  BOUND INT = 0 .. 5
END
END
)";

}  // namespace

TEST_CASE("theorem script is a negated goal") {
  Loaded l(kThm);
  auto pos = generate(l.model, l.interp);
  std::string script = export_solver(l.model, find(pos, "thm.thm1.THM"));
  CHECK(script.find("(check-sat)") != std::string::npos);
  CHECK(script.find("(assert (not") != std::string::npos);
  if (have_z3()) CHECK(z3(script) == "unsat");
}

TEST_CASE("division rounds toward zero in scripts as in the evaluator") {
  Loaded l(R"(MODEL dv
AXIOMS
  THEOREM t1: !a, b.(a : -6 .. 6 & b : {-3, -2, 2, 3} => a = b * (a / b) + a mod b)
  THEOREM t2: (0 - 7) / 2 = 0 - 3 & (0 - 7) mod 2 = 0 - 1
VARIABLES t
INVARIANTS
  inv1: t : 0 .. 1
INITIALISATION t := 0
PROCESS p
END
CHECK
  BOUND INT = -8 .. 8
END
END
)");
  for (const auto& r : check_all(l.model, l.interp, "*.THM").results) CHECK(r.verdict == Verdict::Discharged);
  if (!have_z3()) return;
  auto pos = generate(l.model, l.interp);
  CHECK(z3(export_solver(l.model, find(pos, "dv.t1.THM"))) == "unsat");
  CHECK(z3(export_solver(l.model, find(pos, "dv.t2.THM"))) == "unsat");
}

TEST_CASE("constructs outside the exported subset are rejected") {
  Loaded l(kThm);
  auto pos = generate(l.model, l.interp);
  try {
    export_solver(l.model, find(pos, "thm.thm2.THM"));
    FAIL("exported");
  } catch (const SlpError& e) {
    CHECK(e.code() == "unsupported-construct");
  }
}

TEST_CASE("heater scripts are byte-stable") {
  auto l = corpus("heater.slp");
  std::string now = all_scripts(l);
  CHECK(now == all_scripts(l));
  fs::path golden = fs::path(SLP_GOLDEN_DIR) / "heater.smt2";
  if (std::getenv("SLP_UPDATE_GOLDEN")) std::ofstream(golden) << now;
  REQUIRE(fs::exists(golden));
  CHECK(now == slurp(golden));
}

TEST_CASE("solver agrees on discharged heater obligations") {
  if (!have_z3()) return;
  auto l = corpus("heater.slp");
  auto rep = check_all(l.model, l.interp, "heater_control.*");
  for (const auto& po : generate(l.model, l.interp)) {
    if (!glob_match("heater_control.*", po.id) || !po.exportable) continue;
    std::string answer;
    try {
      answer = z3(export_solver(l.model, po, &l.interp));
    } catch (const SlpError&) {
      continue;
    }
    CAPTURE(po.id);
    CHECK((answer == "unsat" || answer == "unknown" || answer == "timeout"));
  }
}
