#include <doctest.h>

#include "common.hpp"
#include "slp/render.hpp"
#include "slp/validate.hpp"

using namespace slp;

TEST_CASE("corpus files parse, validate and render stably") {
  for (const auto& file : props::corpus_files()) {
    CAPTURE(file);
    SlpModel m = parse_model(props::corpus_text(file));
    CHECK_FALSE(has_errors(validate_model(m)));
    std::string once = render(m);
    SlpModel back = parse_model(once);
    CHECK(same_model(m, back));
    std::string twice = render(back);
    CHECK(once == twice);
  }
}

TEST_CASE("expressions render with minimal parentheses") {
  CHECK(render_expr(parse_expression("(a + b) * c")) == "(a + b) * c");
  CHECK(render_expr(parse_expression("a + (b * c)")) == "a + b * c");
  CHECK(render_expr(parse_expression("a - (b - c)")) == "a - (b - c)");
  CHECK(render_expr(parse_predicate("x : s \\ {g}")) == "x : s \\\\ {g}");
  CHECK(render_expr(parse_predicate("x : s \\\\ {g}")) == "x : s \\\\ {g}");
  CHECK(render_expr(parse_predicate("!a.(a : NAT => a >= 0)")) == "!a.(a : NAT => a >= 0)");
  CHECK(render_expr(parse_predicate("x' = x + 1")) == "x' = x + 1");
}

TEST_CASE("parse errors carry a span and the expected tokens") {
  try {
    parse_model("MODEL x\nVARIABLES\n");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.code() == "parse-error");
    REQUIRE(e.span());
    CHECK(e.span()->begin.line == 3);
    CHECK(e.span()->begin.column == 1);
    CHECK(std::find(e.expected().begin(), e.expected().end(), "name") != e.expected().end());
  }
  try {
    parse_predicate("x + ");
    FAIL("no error");
  } catch (const ParseError& e) {
    REQUIRE(e.span());
    CHECK(e.span()->begin.column == 5);
  }
}

TEST_CASE("validation reports a duplicate variable") {
  auto m = parse_model("MODEL d\nVARIABLES x, x\nINVARIANTS\n  i: x : NAT\nINITIALISATION x := 0\n"
                       "PROCESS p\nEND\nEND\n");
  auto diags = validate_model(m);
  REQUIRE(has_errors(diags));
  CHECK(diags.front().rule == "distinct-vars");
}
