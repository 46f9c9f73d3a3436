#include "properties.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "gen.hpp"
#include "oracle.hpp"
#include "slp/discharge.hpp"
#include "slp/parser.hpp"
#include "slp/pogen.hpp"
#include "slp/render.hpp"
#include "slp/traces.hpp"

namespace props {

using namespace slp;

namespace {

struct World {
  SlpModel model;
  Interpretation interp;
  ScopeContext scope;

  explicit World(SlpModel m) : model(std::move(m)) {
    interp = build_interpretation(model);
    scope = process_scope(model, model.processes.front());
  }
  const Stmt& body() const { return *model.processes.front().body; }
};

oracle::Targets to_oracle(const slp::Targets& ts) {
  oracle::Targets out;
  for (const auto& t : ts) {
    if (!t) {
      out.insert(std::nullopt);
      continue;
    }
    oracle::OState s;
    for (const auto& v : *t) s.push_back(oracle::from(v));
    out.insert(std::move(s));
  }
  return out;
}

oracle::OState to_oracle(const State& s) {
  oracle::OState out;
  for (const auto& v : s) out.push_back(oracle::from(v));
  return out;
}

void note(Outcome& o, const std::string& what) {
  if (o.failures++ == 0) o.first = what;
}

std::string show(const Stmt& s) { return render_stmt(s); }

bool is_prefix_closed(const TraceSet& ts) {
  for (const auto& t : ts)
    for (std::size_t n = 0; n < t.size(); ++n)
      if (!ts.count(Trace(t.begin(), t.begin() + static_cast<long>(n)))) return false;
  return true;
}

}  // namespace

Outcome write_set_soundness(int cases, unsigned seed) {
  Outcome o{"write-set soundness"};
  gen::Gen g(seed);
  gen::Shape shape{4, true, true, true, true};
  for (int c = 0; c < cases; ++c, ++o.cases) {
    World w(gen::model_with(g.stmt(shape)));
    Semantics sem(w.interp);
    auto ws = write_set(w.body());
    auto sp = sem.space(w.scope);
    const auto& vars = sp->vars();
    bool bad = false;
    for (const auto& s : sp->states()) {
      for (const auto& t : sem.successors(w.body(), w.scope, s)) {
        if (!t) continue;
        for (std::size_t i = 0; i < vars.size(); ++i)
          if (!ws.count(vars[i]) && !((*t)[i] == s[i])) bad = true;
      }
    }
    if (bad) note(o, show(w.body()));
  }
  return o;
}

Outcome diamond_totality(int cases, unsigned seed) {
  Outcome o{"diamond totality"};
  gen::Gen g(seed);
  gen::Shape shape{4, true, true, true, true};
  for (int c = 0; c < cases; ++c, ++o.cases) {
    StmtPtr s;
    do s = g.stmt(shape);
    while (s->kind == Stmt::Kind::While);
    World w(gen::model_with(s));
    Semantics sem(w.interp);
    oracle::Oracle orc(w.model);
    auto rel = sem.interpret(w.body(), w.scope);
    bool bad = rel.domain() != sem.space(w.scope)->states();
    for (const auto& st : orc.space(w.scope).states)
      if (orc.succ(w.body(), w.scope, st).empty()) bad = true;
    if (bad) note(o, show(w.body()));
  }
  return o;
}

Outcome if_guard_partition(int cases, unsigned seed) {
  Outcome o{"if-guard partition"};
  gen::Gen g(seed);
  gen::Shape shape{3, false, false, false, false};
  for (int c = 0; c < cases; ++c, ++o.cases) {
    StmtPtr ifs = g.if_stmt(shape, 3);
    World w(gen::model_with(st::seq({ifs, g.action()})));
    oracle::Oracle orc(w.model);
    std::vector<ExprPtr> ctx;
    for (std::size_t j = 0; j < ifs->children.size(); ++j)
      ctx.push_back(assertion_context(w.model, "p", {0, static_cast<int>(j)}));
    const auto& sp = orc.space(w.scope);
    bool bad = false;
    for (const auto& s : sp.states) {
      auto b = oracle::bind_state(sp.vars, s);
      std::vector<std::size_t> on;
      for (std::size_t j = 0; j < ctx.size(); ++j)
        if (orc.holds(*ctx[j], b)) on.push_back(j);
      std::size_t first = ifs->children.size();
      for (std::size_t j = 0; j < ifs->guards.size() && first == ifs->children.size(); ++j)
        if (orc.holds(*ifs->guards[j], b)) first = j;
      if (first == ifs->children.size() && ifs->has_else) first = ifs->guards.size();
      if (ifs->has_else ? on.size() != 1 : on.size() > 1) bad = true;
      if (first < ifs->children.size() ? on != std::vector<std::size_t>{first} : !on.empty()) bad = true;
    }
    if (bad) note(o, show(*ifs));
  }
  return o;
}

Outcome seq_associativity(int cases, unsigned seed) {
  Outcome o{"sequential associativity"};
  gen::Gen g(seed);
  gen::Shape shape{3, false, false, true, true};
  for (int c = 0; c < cases; ++c, ++o.cases) {
    StmtPtr a = g.stmt(shape), b = g.stmt(shape), d = g.stmt(shape);
    StmtPtr left = st::seq({st::seq({a, b}), d});
    StmtPtr right = st::seq({a, st::seq({b, d})});
    StmtPtr flat = st::seq({a, b, d});
    World w(gen::model_with(left));
    Semantics sem(w.interp);
    auto l = sem.interpret(*left, w.scope);
    auto r = sem.interpret(*right, w.scope);
    auto f = sem.interpret(*flat, w.scope);
    if (!(l == r) || !(l == f)) note(o, show(*left));
  }
  return o;
}

Outcome forgetful_law(int cases, unsigned seed) {
  Outcome o{"forgetful sequencing"};
  gen::Gen g(seed);
  gen::Shape shape{3, true, false, true, false};
  for (int c = 0; c < cases; ++c, ++o.cases) {
    StmtPtr a = g.stmt(shape), b = g.stmt(shape);
    ExprPtr p = g.predicate();
    StmtPtr s = st::seq({a, st::assert_({{"", p, {}}}), b});
    World w(gen::model_with(s));
    Semantics sem(w.interp);
    oracle::Oracle orc(w.model);
    auto sp = sem.space(w.scope);
    bool bad = false;
    for (const auto& sigma : sp->states()) {
      auto os = to_oracle(sigma);
      oracle::Targets want{os};
      if (orc.holds(*p, oracle::bind_state(sp->vars(), os))) {
        auto tb = orc.succ(*b, w.scope, os);
        if (!tb.empty()) want = tb;
      }
      if (to_oracle(sem.successors(*s, w.scope, sigma)) != want) bad = true;
    }
    if (bad) note(o, show(*s));
  }
  return o;
}

Outcome operational_agreement(int cases, unsigned seed) {
  Outcome o{"operational and relational agreement"};
  gen::Gen g(seed);
  gen::Shape shape{4, false, false, true, true};
  for (int c = 0; c < cases; ++c, ++o.cases) {
    World w(gen::model_with(g.stmt(shape)));
    Semantics sem(w.interp);
    auto sp = sem.space(w.scope);
    bool bad = false;
    for (const auto& sigma : sp->states()) {
      auto op = execute(w.body(), {sigma}, w.scope, w.interp);
      auto rel = sem.successors(w.body(), w.scope, sigma);
      if (op != rel) bad = true;
    }
    if (bad) note(o, show(w.body()));
  }
  return o;
}

Outcome trace_prefix_closure(int cases, unsigned seed) {
  Outcome o{"trace prefix closure"};
  gen::Gen g(seed);
  gen::Shape shape{3, true, false, true, false};
  for (int c = 0; c < cases; ++c, ++o.cases) {
    StmtPtr body = g.stmt(shape);
    auto model = gen::model_with(body);
    gen::add_machine(model, g, g.labels());
    World w(model);
    TraceOptions opts;
    opts.depth = static_cast<std::size_t>(2 + g.pick(3));
    opts.serialize_parallel = g.coin();
    std::set<std::string> events;
    for (const auto& e : w.model.machine->events) events.insert(e.label);
    auto pt = process_traces(w.model, "p", w.interp, opts);
    auto mt = machine_traces(w.model, events, w.interp, opts);
    bool bad = !is_prefix_closed(pt) || !is_prefix_closed(mt);
    for (const auto& t : pt)
      if (t.size() > opts.depth) bad = true;
    if (bad) note(o, show(*body));
  }
  return o;
}

Outcome trace_depth_monotonicity(int cases, unsigned seed) {
  Outcome o{"trace depth monotonicity"};
  gen::Gen g(seed);
  gen::Shape shape{3, true, false, true, false};
  for (int c = 0; c < cases; ++c, ++o.cases) {
    StmtPtr body = g.stmt(shape);
    auto model = gen::model_with(body);
    gen::add_machine(model, g, g.labels());
    World w(model);
    auto f = refmap_of(w.model, "p");
    std::size_t d = static_cast<std::size_t>(1 + g.pick(3));
    TraceOptions at, more;
    at.depth = d;
    more.depth = d + 1 + static_cast<std::size_t>(g.pick(2));
    auto small = process_traces(w.model, "p", w.interp, at);
    auto big = process_traces(w.model, "p", w.interp, more);
    TraceSet cut;
    for (const auto& t : big)
      if (t.size() <= d) cut.insert(t);
    bool bad = cut != small;
    auto i0 = check_inclusion(w.model, "p", f, w.interp, at);
    auto i1 = check_inclusion(w.model, "p", f, w.interp, more);
    if (!i0.included && i1.included) bad = true;
    if (!i0.included && i0.counter && i1.counter && i1.counter->size() > i0.counter->size()) bad = true;
    if (bad) note(o, show(*body));
  }
  return o;
}

Outcome evaluator_agreement(int cases, unsigned seed) {
  Outcome o{"evaluator agreement"};
  gen::Gen g(seed);
  const char* extra[] = {"!v.(v : 0 .. x => v <= 3)",
                         "#v.(v : {x, y} & v > 1)",
                         "!a, b.(a : 0 .. 2 & b : a .. 3 => a <= b + y)",
                         "{x, y} <: 0 .. 2",
                         "({x} \\/ {y}) /\\ {1, 2} = {}",
                         "x |-> y : {0 |-> 0, 1 |-> 2, x |-> 3}",
                         "{0 |-> 1, 1 |-> 2, 2 |-> 3}(x) = y",
                         "x / (y + 1) >= x mod 2",
                         "#s.(s <: {0, 1, 2} & x : s & y /: s)",
                         "bool(x < y) = z",
                         "x - y : NAT",
                         "y : NAT1 \\/ {0}",
                         "{x, y} \\ {3} /= {}",
                         "x / y = 0"};
  SlpModel m = gen::model_with(st::stop());
  World w(m);
  oracle::Oracle orc(w.model);
  Semantics sem(w.interp);
  auto sp = sem.space(w.scope);
  for (int c = 0; c < cases; ++c, ++o.cases) {
    ExprPtr p = g.coin() ? g.predicate() : parse_predicate(extra[g.pick(std::size(extra))]);
    if (g.pick(3) == 0) p = ex::binary(Op::Implies, g.predicate(), p);
    bool bad = false;
    for (const auto& s : sp->states()) {
      Env env(w.interp);
      FrameGuard fg(env, sp->vars(), s);
      int k = -1, r = -1;
      try {
        k = eval_predicate(*p, env);
      } catch (const SlpError&) {
        k = 2;
      }
      try {
        r = orc.holds(*p, oracle::bind_state(sp->vars(), to_oracle(s)));
      } catch (const oracle::Failure&) {
        r = 2;
      }
      if (k != r) bad = true;
    }
    if (bad) note(o, render_expr(p));
  }
  return o;
}

Outcome obligation_agreement(int cases, unsigned seed) {
  Outcome o{"obligation verdict agreement"};
  gen::Gen g(seed);
  gen::Shape shape{3, true, true, true, true};
  for (int c = 0; c < cases; ++c) {
    auto model = gen::model_with(g.stmt(shape));
    gen::add_specs(model, g);
    if (g.coin()) {
      gen::add_machine(model, g, {"g1"});
      model.refmaps.front().unit = "env";
    }
    World w(model);
    Checker checker(w.model, w.interp);
    oracle::Oracle orc(w.model);
    for (const auto& po : generate(w.model, w.interp)) {
      auto r = checker.check(po);
      if (r.verdict == Verdict::Skipped) continue;
      ++o.cases;
      bool k = r.verdict == Verdict::Discharged;
      bool d = orc.decide(po) == oracle::Verdict::Discharged;
      if (k != d) note(o, po.id + " in\n" + render(w.model));
    }
  }
  return o;
}

std::string corpus_text(const std::string& name, bool reduced) {
  std::ifstream in(std::string(SLP_CORPUS_DIR) + "/" + name);
  if (!in) throw std::runtime_error("cannot read corpus file " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  if (!reduced) return text;
  auto swap = [&](const std::string& from, const std::string& to) {
    if (auto at = text.find(from); at != std::string::npos) text.replace(at, from.size(), to);
  };
  swap("BOUND INT = 0 .. 16", "BOUND INT = 0 .. 6");
  swap("CONST N = 8", "CONST N = 3");
  return text;
}

const std::vector<std::string>& corpus_files() {
  static const std::vector<std::string> files = {"asserts.slp", "gcd0.slp", "gcd1a.slp", "gcd1b.slp",
                                                 "heater.slp"};
  return files;
}

Outcome corpus_agreement() {
  Outcome o{"corpus verdict agreement"};
  for (const auto& file : corpus_files()) {
    SlpModel model = parse_model(corpus_text(file, true));
    Interpretation interp = build_interpretation(model);
    Checker checker(model, interp);
    oracle::Oracle orc(model);
    for (const auto& po : generate(model, interp)) {
      auto r = checker.check(po);
      ++o.cases;
      if (r.verdict == Verdict::Skipped) {
        note(o, file + ": " + po.id + " skipped");
        continue;
      }
      bool k = r.verdict == Verdict::Discharged;
      bool d = orc.decide(po) == oracle::Verdict::Discharged;
      if (k != d) note(o, file + ": " + po.id);
    }
  }
  return o;
}

std::vector<Outcome> all(int cases) {
  return {write_set_soundness(cases),   diamond_totality(cases),     if_guard_partition(cases),
          seq_associativity(cases),     forgetful_law(cases),        operational_agreement(cases),
          trace_prefix_closure(cases),  trace_depth_monotonicity(cases), evaluator_agreement(cases),
          obligation_agreement(cases)};
}

}  // namespace props
