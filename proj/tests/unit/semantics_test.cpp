#include <doctest.h>

#include "common.hpp"
#include "slp/scope.hpp"
#include "slp/semantics.hpp"

using namespace slp;

namespace {

std::set<std::string> ws(std::initializer_list<const char*> names) { return {names.begin(), names.end()}; }

}  // namespace

TEST_CASE("write sets of the gcd body") {
  auto l = corpus("gcd1b.slp", true);
  const Stmt& body = *process(l.model, "main").body;
  CHECK(write_set(body) == ws({"r", "y1", "y2"}));
  REQUIRE(body.children.size() == 3);
  CHECK(write_set(*body.children[0]) == ws({"y1", "y2"}));
  CHECK(write_set(*body.children[1]) == ws({"y1", "y2"}));
  CHECK(write_set(*body.children[2]) == ws({"r"}));
}

TEST_CASE("block locals leave the write set") {
  auto s = parse_block("BEGIN VARIABLES w INVARIANTS bi: w : NAT BODY w := 1 ; x := w END", {"x"});
  CHECK(write_set(*s) == ws({"x"}));
}

TEST_CASE("stop leads to the termination state") {
  auto l = corpus("heater.slp");
  Semantics sem(l.interp);
  auto scope = process_scope(l.model, process(l.model, "alarm_control"));
  auto stop = parse_block("STOP");
  State sigma;
  for (const auto& v : scope.vars()) sigma.push_back(v == "t" ? Value::integer(20) : Value::boolean(false));
  auto out = sem.successors(*stop, scope, sigma);
  REQUIRE(out.size() == 1);
  CHECK_FALSE(out[0].has_value());
}

TEST_CASE("executor computes gcd on the reduced bounds") {
  auto l = corpus("gcd1b.slp", true);
  const auto& p = process(l.model, "main");
  auto scope = process_scope(l.model, p);
  auto names = scope.vars();
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b) {
      State s;
      for (const auto& v : names) {
        if (v == "x1") s.push_back(Value::integer(a));
        else if (v == "x2") s.push_back(Value::integer(b));
        else s.push_back(Value::integer(0));
      }
      auto out = execute(*p.body, {s}, scope, l.interp);
      REQUIRE(out.size() == 1);
      REQUIRE(out[0]);
      std::size_t r = std::find(names.begin(), names.end(), "r") - names.begin();
      int x = a, y = b;
      while (y) { int t = x % y; x = y; y = t; }
      CHECK((*out[0])[r] == Value::integer(x));
    }
}
