#include "gen.hpp"

#include <algorithm>

#include "slp/parser.hpp"

namespace gen {

using namespace slp;

namespace {

const char* kInts[] = {"0",         "1",         "3",     "x",           "y",
                       "(x + 1) mod 4", "(x + y) mod 4", "3 - x", "(x * y) mod 4", "(y + 2) mod 4"};
const char* kPreds[] = {"x < y",  "x = y",      "x > 1",        "y <= 2",        "z = TRUE",
                        "z = FALSE", "x + y > 3", "not(x = 3)", "x < y or z = TRUE", "x : {0, 2}",
                        "y /= 0 => x /= 0", "TRUE"};
const char* kRels[] = {"x' >= x",       "y' = y",          "z' = z",          "x' = x & y' = y",
                       "x' + y' = x + y", "x' /= x => z' = TRUE", "TRUE",   "x' <= y",
                       "y' : x .. 3",     "x' = x or x' = (x + 1) mod 4"};

std::string other(const std::string& v) { return v == "x" ? "y" : "x"; }

}  // namespace

ExprPtr Gen::int_expr() { return parse_expression(kInts[pick(std::size(kInts))]); }
ExprPtr Gen::predicate() {
  ExprPtr p = parse_predicate(kPreds[pick(std::size(kPreds))]);
  if (pick(4) == 0) p = ex::binary(coin() ? Op::And : Op::Or, p, parse_predicate(kPreds[pick(std::size(kPreds))]));
  return p;
}
ExprPtr Gen::relation() {
  ExprPtr r = parse_predicate(kRels[pick(std::size(kRels))]);
  if (coin()) r = ex::binary(Op::And, r, parse_predicate(kRels[pick(std::size(kRels))]));
  return r;
}

StmtPtr Gen::substitution(const std::string& v) {
  if (v == "z") {
    switch (pick(3)) {
      case 0: return st::assign("z", ex::unary(Op::BoolOf, predicate()), label());
      case 1: return st::becomes_in("z", parse_expression("BOOL"), label());
      default: return st::assign("z", parse_expression(coin() ? "TRUE" : "FALSE"), label());
    }
  }
  const std::string w = other(v);
  switch (pick(4)) {
    case 0:
    case 1: return st::assign(v, int_expr(), label());
    case 2: {
      const char* sets[] = {"{0, 1}", "{2}", "{}", "{x, y}", "0 .. y", "x .. 3"};
      return st::becomes_in(v, parse_expression(sets[pick(std::size(sets))]), label());
    }
    default: {
      std::vector<std::string> rels = {v + "' > " + v, v + "' /= " + v, v + "' + " + w + " = 3",
                                       v + "' : {0, 3}"};
      return st::becomes_such_that({v}, parse_predicate(rels[static_cast<std::size_t>(pick(4))]), label());
    }
  }
}

StmtPtr Gen::action() {
  static const char* vars[] = {"x", "y", "z"};
  int k = pick(5);
  if (k == 4) return st::becomes_such_that({"x", "y"}, parse_predicate("x' + y' = 3 or x' = y"), label());
  if (k == 3) {
    int a = pick(3), b = (a + 1 + pick(2)) % 3;
    return st::parallel({substitution(vars[a]), substitution(vars[b])});
  }
  return substitution(vars[pick(3)]);
}

StmtPtr Gen::loop() {
  std::string v = coin() ? "x" : "y";
  std::string bound = std::to_string(1 + pick(3));
  StmtPtr step = st::assign(v, parse_expression(v + " + 1"), label());
  if (coin()) step = st::parallel({step, substitution(coin() ? other(v) : "z")});
  return st::while_(parse_predicate(v + " < " + bound),
                    {{InvariantDef::Kind::Invariant, "li", parse_predicate(v + " <= " + bound), {}}},
                    parse_expression(bound + " - " + v), step, label());
}

StmtPtr Gen::if_stmt(const Shape& shape, int depth) {
  std::vector<std::pair<ExprPtr, StmtPtr>> branches;
  int n = 1 + pick(2);
  for (int i = 0; i < n; ++i) branches.emplace_back(predicate(), stmt(shape, depth - 1));
  StmtPtr otherwise = coin() ? stmt(shape, depth - 1) : nullptr;
  return st::if_(std::move(branches), otherwise);
}

StmtPtr Gen::stmt(const Shape& shape) { return stmt(shape, 1 + pick(shape.depth)); }

StmtPtr Gen::stmt(const Shape& shape, int depth) {
  if (depth <= 1) {
    if (shape.stops && pick(12) == 0) return st::stop();
    return action();
  }
  int k = pick(10);
  if (k <= 2) return action();
  if (k <= 4) return if_stmt(shape, depth);
  if (k == 5 && shape.loops) return loop();
  if (k == 6 && shape.blocks) {
    StmtPtr body = st::seq({st::assign("x", parse_expression("(x + w) mod 4"), label()),
                            st::assign("w", parse_expression("y"), label())});
    return st::begin({"w"}, {{InvariantDef::Kind::Invariant, "bi", parse_predicate("w : 0 .. 2"), {}}},
                     body);
  }
  std::vector<StmtPtr> items;
  int n = 2 + pick(2);
  for (int i = 0; i < n; ++i) {
    if (shape.asserts && pick(4) == 0) {
      items.push_back(st::assert_({{"", predicate(), {}}}));
      continue;
    }
    items.push_back(stmt(shape, depth - 1));
  }
  return st::seq(std::move(items));
}

std::vector<std::string> Gen::labels() const {
  std::vector<std::string> out;
  for (int i = 1; i <= labels_; ++i) out.push_back("l" + std::to_string(i));
  return out;
}

SlpModel model_with(StmtPtr body) {
  SlpModel m;
  m.name = "rnd";
  for (const char* v : {"x", "y", "z"}) m.globals.push_back({v, {}});
  m.invariants = {{InvariantDef::Kind::Invariant, "tx", parse_predicate("x : 0 .. 3"), {}},
                  {InvariantDef::Kind::Invariant, "ty", parse_predicate("y : 0 .. 3"), {}},
                  {InvariantDef::Kind::Invariant, "tz", parse_predicate("z : BOOL"), {}}};
  m.initialisation = st::parallel({st::assign("x", ex::integer(0)), st::becomes_in("y", parse_expression("0 .. 3")),
                                   st::assign("z", ex::boolean(false))});
  ProcessDef p;
  p.label = "p";
  p.body = st::block(std::move(body));
  m.processes.push_back(std::move(p));
  CheckSection check;
  check.int_bound = std::make_pair(0, 3);
  m.check = check;
  return m;
}

void add_machine(SlpModel& model, Gen& g, const std::vector<std::string>& labels) {
  EventBMachine mach;
  mach.name = "abs";
  for (const char* v : {"x", "y", "z"}) mach.variables.push_back({v, {}});
  mach.invariants = model.invariants;
  mach.initialisation = model.initialisation;
  RefMap rm;
  rm.unit = "p";
  std::size_t n = std::min<std::size_t>(3, std::max<std::size_t>(1, labels.size()));
  for (std::size_t i = 0; i < n; ++i) {
    Event e;
    e.label = "e" + std::to_string(i);
    e.guard = g.pick(3) == 0 ? g.predicate() : ex::boolean(true);
    e.action = g.pick(3) == 0 ? g.substitution(g.coin() ? "x" : "y")
                              : st::becomes_such_that({"x", "y", "z"}, parse_predicate("TRUE"));
    mach.events.push_back(e);
  }
  for (std::size_t i = 0; i < labels.size(); ++i)
    rm.entries.emplace_back(labels[i], "e" + std::to_string(i < n ? i : static_cast<std::size_t>(g.pick(static_cast<int>(n)))));
  model.machine = std::move(mach);
  model.refmaps.push_back(std::move(rm));
}

void add_specs(SlpModel& model, Gen& g) {
  auto& p = model.processes.front();
  if (g.coin()) p.relies.push_back({"r1", g.relation(), {}});
  p.guarantees.push_back({"g1", g.relation(), {}});
  ProcessDef q;
  q.label = "q";
  q.relies.push_back({"r1", g.relation(), {}});
  q.guarantees.push_back({"g1", g.relation(), {}});
  Shape shape;
  shape.depth = 2;
  q.body = st::block(g.stmt(shape));
  model.processes.push_back(std::move(q));
  EnvironmentDef env;
  env.label = "env";
  env.guarantees.push_back({"g1", g.relation(), {}});
  model.environments.push_back(std::move(env));
}

}  // namespace gen
