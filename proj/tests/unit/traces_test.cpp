#include <doctest.h>

#include "common.hpp"
#include "slp/traces.hpp"

using namespace slp;

namespace {

std::string mutate(std::string text, const std::string& from, const std::string& to) {
  auto at = text.find(from);
  if (at == std::string::npos) throw std::runtime_error("no " + from);
  return text.replace(at, from.size(), to);
}

}  // namespace

TEST_CASE("gcd process traces are included in the machine traces") {
  auto l = corpus("gcd1b.slp", true);
  TraceOptions o;
  o.depth = 10;
  auto inc = check_inclusion(l.model, "main", refmap_of(l.model, "main"), l.interp, o);
  CHECK(inc.included);
  CHECK_FALSE(inc.counter);
  CHECK(inc.process_traces > 0);
  CHECK(check_divergence(l.model, "main", l.interp).discharged);
}

TEST_CASE("a mutated subtraction yields a short counter-trace") {
  Loaded l(mutate(props::corpus_text("gcd1b.slp", true), "s1: y1 := y1 - y2", "s1: y1 := y1 + y2"));
  TraceOptions o;
  o.depth = 10;
  auto inc = check_inclusion(l.model, "main", refmap_of(l.model, "main"), l.interp, o);
  CHECK_FALSE(inc.included);
  REQUIRE(inc.counter);
  CHECK(inc.counter->size() <= 4);
  CHECK(render_trace(*inc.counter) == "<copy1, copy2, sub1, sub1>");
}

TEST_CASE("process traces are prefix closed") {
  auto l = corpus("gcd1b.slp", true);
  TraceOptions o;
  o.depth = 6;
  auto ts = process_traces(l.model, "main", l.interp, o);
  CHECK(ts.count(Trace{}));
  for (const auto& t : ts) {
    Trace p = t;
    while (!p.empty()) {
      p.pop_back();
      CHECK(ts.count(p));
    }
  }
}

TEST_CASE("parallel labels serialize or form one element") {
  auto l = corpus("gcd1b.slp", true);
  TraceOptions o;
  o.depth = 1;
  auto serial = process_traces(l.model, "main", l.interp, o);
  CHECK(serial.count(Trace{{"cp1"}}));
  o.serialize_parallel = false;
  auto joint = process_traces(l.model, "main", l.interp, o);
  CHECK(joint.count(Trace{{"cp1", "cp2"}}));
}

TEST_CASE("unmapped labels are errors") {
  try {
    map_trace(Trace{{"zz"}}, AlphabetMap{{"a", "b"}});
    FAIL("mapped");
  } catch (const SlpError& e) {
    CHECK(e.code() == "unmapped-label");
  }
}
