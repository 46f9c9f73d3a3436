#include <doctest.h>

#include "common.hpp"
#include "slp/kernel.hpp"

using namespace slp;

namespace {

Value ev(const std::string& text) {
  Interpretation interp;
  Env env(interp);
  return eval_expression(*parse_expression(text), env);
}

bool pr(const std::string& text) {
  Interpretation interp;
  Env env(interp);
  return eval_predicate(*parse_predicate(text), env);
}

std::string code_of(const std::string& text) {
  try {
    ev(text);
  } catch (const SlpError& e) {
    return e.code();
  }
  return "";
}

}  // namespace

TEST_CASE("arithmetic") {
  CHECK(ev("2 + 3 * 4") == Value::integer(14));
  CHECK(ev("7 / 2") == Value::integer(3));
  CHECK(ev("7 mod 3") == Value::integer(1));
  CHECK(ev("1 - 5") == Value::integer(-4));
  CHECK(code_of("1 / 0") == "div-by-zero");
  CHECK(code_of("1 mod 0") == "div-by-zero");
  CHECK(code_of("q + 1") == "unbound-name");
}

TEST_CASE("sets and relations") {
  CHECK(ev("{1, 2} \\/ {2, 3}") == ev("1 .. 3"));
  CHECK(ev("{1, 2} /\\ {2, 3}") == ev("{2}"));
  CHECK(ev("1 .. 4 \\ {2}") == ev("{1, 3, 4}"));
  CHECK(ev("3 .. 1") == Value::empty_set());
  CHECK(ev("{1 |-> 5, 2 |-> 6}(2)") == Value::integer(6));
  CHECK(code_of("{1 |-> 5, 1 |-> 6}(1)") == "partial-application");
  CHECK(code_of("{1 |-> 5}(2)") == "partial-application");
  CHECK(pr("{1} <: 0 .. 2"));
  CHECK(pr("100 : NAT"));
  CHECK(pr("-1 /: NAT"));
  CHECK(pr("bool(1 < 2) = TRUE"));
}

TEST_CASE("quantifiers range over their typing conjunct") {
  CHECK(pr("!a.(a : NAT => a >= 0)"));
  CHECK(pr("#a.(a : 1 .. 3 & a * a = 4)"));
  CHECK_FALSE(pr("!a.(a : 0 .. 3 => a < 3)"));
  CHECK(pr("!a, b.(a : 0 .. 2 & b : 0 .. 2 => a + b <= 4)"));

  Interpretation interp;
  Env env(interp);
  auto w = falsifying_binding(*parse_predicate("!a.(a : 0 .. 5 => a < 3)"), env);
  REQUIRE(w);
  REQUIRE(w->size() == 1);
  CHECK(w->front().second == Value::integer(3));
}

TEST_CASE("interpretation from a CHECK section") {
  auto l = corpus("asserts.slp");
  const Value* s = l.interp.lookup("S");
  REQUIRE(s);
  CHECK(s->elements().size() == 3);
  CHECK(check_interpretation(l.model.context, l.interp).empty());

  auto h = corpus("heater.slp");
  CHECK(h.interp.lo == -10);
  CHECK(h.interp.hi == 50);
  REQUIRE(h.interp.lookup("Delta"));
  CHECK(*h.interp.lookup("Delta") == Value::integer(2));
}
