#include "slp/semantics.hpp"

#include <algorithm>
#include <limits>

namespace slp {

namespace {

void normalize(Targets& t) {
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
}

using Update = std::vector<std::pair<std::size_t, Value>>;

State apply_update(const State& s, const Update& u) {
  State out = s;
  for (const auto& [i, v] : u) out[i] = v;
  return out;
}

bool all_hold(const std::vector<LabeledPredicate>& cs, Env& env) {
  for (const auto& c : cs)
    if (!eval_predicate(*c.pred, env)) return false;
  return true;
}

bool all_hold(const std::vector<InvariantDef>& is, Env& env) {
  for (const auto& i : is)
    if (!i.is_theorem() && !eval_predicate(*i.pred, env)) return false;
  return true;
}

std::int64_t variant_value(const Expr& v, Env& env) {
  Value x = eval_expression(v, env);
  if (!x.is_int()) throw SlpError("variant-not-integer", "variant is not an integer: " + x.str());
  return x.as_int();
}

}  // namespace

// ---------------------------------------------------------------------------
// ScopedRelation
// ---------------------------------------------------------------------------

Targets ScopedRelation::image(const State& s) const {
  Targets out;
  auto it = std::lower_bound(pairs.begin(), pairs.end(), s,
                             [](const auto& p, const State& k) { return p.first < k; });
  for (; it != pairs.end() && it->first == s; ++it) out.push_back(it->second);
  return out;
}

std::vector<State> ScopedRelation::domain() const {
  std::vector<State> out;
  for (const auto& p : pairs)
    if (out.empty() || out.back() != p.first) out.push_back(p.first);
  return out;
}

bool ScopedRelation::contains(const State& from, const TerminalState& to) const {
  return std::binary_search(pairs.begin(), pairs.end(), std::make_pair(from, to));
}

ScopedRelation diamond(const ScopedRelation& rel, const StateSpace& space) {
  ScopedRelation out;
  out.vars = space.vars();
  for (const auto& s : space.states()) {
    Targets img = rel.image(s);
    if (img.empty()) img.push_back(s);
    for (auto& t : img) out.pairs.emplace_back(s, std::move(t));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Semantics
// ---------------------------------------------------------------------------

struct Semantics::Ctx {
  const ScopeContext* scope;
  std::shared_ptr<const StateSpace> space;
  mutable Env env;

  Ctx(const ScopeContext& s, std::shared_ptr<const StateSpace> sp, const Interpretation& interp)
      : scope(&s), space(std::move(sp)), env(interp) {}
  const std::vector<std::string>& vars() const { return space->vars(); }
};

Semantics::Semantics(const Interpretation& interp, Options options)
    : interp_(&interp), options_(options), cache_(std::make_shared<SpaceCache>(interp)) {}

std::shared_ptr<const StateSpace> Semantics::space(const ScopeContext& scope) const {
  return cache_->get(scope);
}

Targets Semantics::successors(const Stmt& s, const ScopeContext& scope, const State& sigma) const {
  Ctx c(scope, space(scope), *interp_);
  return succ(s, c, sigma, false);
}

Targets Semantics::raw_successors(const Stmt& s, const ScopeContext& scope,
                                  const State& sigma) const {
  Ctx c(scope, space(scope), *interp_);
  return succ(s, c, sigma, true);
}

ScopedRelation Semantics::interpret(const Stmt& s, const ScopeContext& scope) const {
  Ctx c(scope, space(scope), *interp_);
  ScopedRelation out;
  out.vars = c.vars();
  for (const auto& sigma : c.space->states())
    for (auto& t : succ(s, c, sigma, false)) out.pairs.emplace_back(sigma, std::move(t));
  return out;
}

Targets Semantics::succ(const Stmt& s, const Ctx& c, const State& sigma, bool raw) const {
  auto closed = [&](Targets t) {
    if (t.empty() && !raw) t.push_back(sigma);
    return t;
  };
  switch (s.kind) {
    case Stmt::Kind::Stop:
      return {std::nullopt};
    case Stmt::Kind::Assert: {
      FrameGuard g(c.env, c.vars(), sigma);
      if (all_hold(s.conjuncts, c.env)) return {sigma};
      return {};
    }
    case Stmt::Kind::Parallel:
      if (options_.strict_paper) {
        Targets out;
        for (const auto& part : s.children) {
          Targets t = succ(*part, c, sigma, raw);
          out.insert(out.end(), t.begin(), t.end());
        }
        normalize(out);
        return out;
      }
      [[fallthrough]];
    case Stmt::Kind::Assign:
    case Stmt::Kind::BecomesIn:
    case Stmt::Kind::BecomesSuchThat:
      return closed(substitution(s, c, sigma));
    case Stmt::Kind::Seq: {
      Targets t = seq(s, c, sigma);
      return raw ? t : closed(std::move(t));
    }
    case Stmt::Kind::If: {
      FrameGuard g(c.env, c.vars(), sigma);
      for (std::size_t i = 0; i < s.guards.size(); ++i)
        if (eval_predicate(*s.guards[i], c.env)) return closed(succ(*s.children[i], c, sigma, false));
      if (s.has_else) return closed(succ(*s.children.back(), c, sigma, false));
      return closed({});
    }
    case Stmt::Kind::While: {
      FrameGuard g(c.env, c.vars(), sigma);
      if (!eval_predicate(*s.expr, c.env) && all_hold(s.invariants, c.env)) return {sigma};
      return {};
    }
    case Stmt::Kind::Begin:
      return begin_block(s, c, sigma, raw);
  }
  return {};
}

Targets Semantics::seq(const Stmt& s, const Ctx& c, const State& sigma) const {
  const auto& items = s.children;
  std::size_t k = items.size();
  for (std::size_t i = items.size(); i-- > 0;)
    if (items[i]->kind == Stmt::Kind::Assert) {
      k = i;
      break;
    }
  if (k + 1 < items.size()) {
    // Forgetful: only the last assert and what follows it count.
    FrameGuard g(c.env, c.vars(), sigma);
    if (!all_hold(items[k]->conjuncts, c.env)) return {};
    Targets t = compose(items, k + 1, c, sigma);
    if (t.empty()) t.push_back(sigma);
    return t;
  }
  return compose(items, 0, c, sigma);
}

Targets Semantics::compose(const std::vector<StmtPtr>& items, std::size_t from, const Ctx& c,
                           const State& sigma) const {
  Targets cur{sigma};
  for (std::size_t i = from; i < items.size(); ++i) {
    Targets next;
    for (const auto& t : cur) {
      if (!t) {
        next.push_back(t);
        continue;
      }
      if (i > from && !c.space->satisfies(*t, c.env)) continue;
      Targets r = succ(*items[i], c, *t, false);
      next.insert(next.end(), r.begin(), r.end());
    }
    normalize(next);
    cur = std::move(next);
  }
  return cur;
}

std::vector<Update> Semantics::choices(const Stmt& s, const Ctx& c, const State& sigma) const {
  const auto& vars = c.vars();
  std::vector<Update> out;
  switch (s.kind) {
    case Stmt::Kind::Assign: {
      FrameGuard g(c.env, vars, sigma);
      out.push_back({{c.space->var_index(s.targets[0]), eval_expression(*s.expr, c.env)}});
      break;
    }
    case Stmt::Kind::BecomesIn: {
      FrameGuard g(c.env, vars, sigma);
      std::size_t i = c.space->var_index(s.targets[0]);
      Value set = eval_set(*s.expr, c.env);
      for (const auto& v : set.elements()) out.push_back({{i, v}});
      break;
    }
    case Stmt::Kind::BecomesSuchThat: {
      std::vector<std::size_t> idx;
      for (const auto& t : s.targets) idx.push_back(c.space->var_index(t));
      std::vector<const std::vector<Value>*> doms;
      for (auto i : idx) doms.push_back(&c.space->domains()[i]);
      for (const auto* d : doms)
        if (d->empty()) return out;
      State tau = sigma;
      std::vector<std::size_t> pos(idx.size(), 0);
      for (std::size_t j = 0; j < idx.size(); ++j) tau[idx[j]] = (*doms[j])[0];
      FrameGuard g0(c.env, vars, sigma);
      FrameGuard g1(c.env, vars, tau, 1);
      for (;;) {
        if (eval_predicate(*s.expr, c.env)) {
          Update u;
          for (auto i : idx) u.emplace_back(i, tau[i]);
          out.push_back(std::move(u));
        }
        std::size_t j = idx.size();
        bool done = true;
        while (j-- > 0) {
          if (++pos[j] < doms[j]->size()) {
            tau[idx[j]] = (*doms[j])[pos[j]];
            done = false;
            break;
          }
          pos[j] = 0;
          tau[idx[j]] = (*doms[j])[0];
        }
        if (done) break;
      }
      break;
    }
    case Stmt::Kind::Parallel: {
      out.push_back({});
      for (const auto& part : s.children) {
        auto opts = choices(*part, c, sigma);
        std::vector<Update> merged;
        for (const auto& a : out)
          for (const auto& b : opts) {
            Update u = a;
            u.insert(u.end(), b.begin(), b.end());
            merged.push_back(std::move(u));
          }
        out = std::move(merged);
        if (out.empty()) break;
      }
      break;
    }
    default:
      break;
  }
  return out;
}

Targets Semantics::substitution(const Stmt& s, const Ctx& c, const State& sigma) const {
  Targets out;
  for (const auto& u : choices(s, c, sigma)) out.push_back(apply_update(sigma, u));
  normalize(out);
  return out;
}

Targets Semantics::begin_block(const Stmt& s, const Ctx& c, const State& sigma, bool raw) const {
  ScopeContext inner_scope = enter(*c.scope, s);
  Ctx inner(inner_scope, space(inner_scope), *interp_);
  const auto& ivars = inner.vars();
  const auto& ovars = c.vars();
  std::vector<long> from_outer(ivars.size(), -1);
  std::vector<std::size_t> to_inner(ovars.size());
  for (std::size_t i = 0, j = 0; i < ivars.size(); ++i) {
    if (j < ovars.size() && ivars[i] == ovars[j]) {
      from_outer[i] = static_cast<long>(j);
      to_inner[j++] = i;
    }
  }
  std::vector<std::size_t> local_idx;
  for (std::size_t i = 0; i < ivars.size(); ++i)
    if (from_outer[i] < 0) local_idx.push_back(i);

  State start(ivars.size());
  for (std::size_t i = 0; i < ivars.size(); ++i)
    if (from_outer[i] >= 0) start[i] = sigma[static_cast<std::size_t>(from_outer[i])];
  for (auto i : local_idx)
    if (inner.space->domains()[i].empty()) return raw ? Targets{} : Targets{sigma};

  Targets out;
  std::vector<std::size_t> pos(local_idx.size(), 0);
  for (auto i : local_idx) start[i] = inner.space->domains()[i][0];
  for (;;) {
    if (inner.space->satisfies(start, inner.env)) {
      for (const auto& t : succ(*s.body(), inner, start, false)) {
        if (!t) {
          out.push_back(t);
          continue;
        }
        State proj(ovars.size());
        for (std::size_t j = 0; j < ovars.size(); ++j) proj[j] = (*t)[to_inner[j]];
        out.push_back(std::move(proj));
      }
    }
    std::size_t j = local_idx.size();
    bool done = true;
    while (j-- > 0) {
      const auto& d = inner.space->domains()[local_idx[j]];
      if (++pos[j] < d.size()) {
        start[local_idx[j]] = d[pos[j]];
        done = false;
        break;
      }
      pos[j] = 0;
      start[local_idx[j]] = d[0];
    }
    if (done) break;
  }
  normalize(out);
  if (out.empty() && !raw) out.push_back(sigma);
  return out;
}

TrmResult Semantics::trm_holds(const Stmt& loop, const ScopeContext& scope) const {
  ScopeContext inner_scope = enter(scope, loop);
  Ctx c(inner_scope, space(inner_scope), *interp_);
  const auto& vars = c.vars();
  TrmResult res;
  std::int64_t min_pre = std::numeric_limits<std::int64_t>::max();
  std::int64_t max_post = std::numeric_limits<std::int64_t>::min();
  std::optional<State> min_state;
  TerminalState max_state;
  for (const auto& sigma : c.space->states()) {
    std::int64_t v0;
    {
      FrameGuard g(c.env, vars, sigma);
      if (!eval_predicate(*loop.expr, c.env)) continue;
      v0 = variant_value(*loop.variant, c.env);
    }
    if (v0 < 0) return {false, sigma, std::nullopt, "variant is negative"};
    if (v0 < min_pre) {
      min_pre = v0;
      min_state = sigma;
    }
    for (const auto& t : succ(*loop.body(), c, sigma, false)) {
      if (!t) continue;
      FrameGuard g(c.env, vars, *t);
      std::int64_t v1 = variant_value(*loop.variant, c.env);
      if (options_.strict_paper) {
        if (v1 > max_post) {
          max_post = v1;
          max_state = t;
        }
      } else if (v1 >= v0) {
        return {false, sigma, t, "variant does not decrease"};
      }
    }
  }
  if (options_.strict_paper && min_state && max_state && max_post >= min_pre)
    return {false, min_state, max_state, "some post-variant is not below every pre-variant"};
  return res;
}

Targets Semantics::event_successors(const Event& e, const ScopeContext& scope,
                                    const State& sigma) const {
  Ctx c(scope, space(scope), *interp_);
  {
    FrameGuard g(c.env, c.vars(), sigma);
    if (!eval_predicate(*e.guard, c.env)) return {};
  }
  return substitution(*e.action, c, sigma);
}

ScopedRelation Semantics::interpret_event(const Event& e, const ScopeContext& scope) const {
  ScopedRelation out;
  auto sp = space(scope);
  out.vars = sp->vars();
  for (const auto& sigma : sp->states())
    for (auto& t : event_successors(e, scope, sigma)) out.pairs.emplace_back(sigma, std::move(t));
  return out;
}

std::vector<State> Semantics::initial_states(const Stmt* init, const ScopeContext& scope) const {
  Ctx c(scope, space(scope), *interp_);
  const auto& vars = c.vars();
  const auto& doms = c.space->domains();
  std::set<std::string> written = init ? write_set(*init) : std::set<std::string>{};
  std::vector<std::size_t> free_idx;
  State start(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (doms[i].empty()) return {};
    start[i] = doms[i][0];
    if (!written.count(vars[i])) free_idx.push_back(i);
  }
  std::vector<State> out;
  std::vector<std::size_t> pos(free_idx.size(), 0);
  for (;;) {
    Targets ts = init ? substitution(*init, c, start) : Targets{start};
    for (auto& t : ts)
      if (t && c.space->satisfies(*t, c.env)) out.push_back(std::move(*t));
    std::size_t j = free_idx.size();
    bool done = true;
    while (j-- > 0) {
      const auto& d = doms[free_idx[j]];
      if (++pos[j] < d.size()) {
        start[free_idx[j]] = d[pos[j]];
        done = false;
        break;
      }
      pos[j] = 0;
      start[free_idx[j]] = d[0];
    }
    if (done) break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Write sets
// ---------------------------------------------------------------------------

std::set<std::string> write_set(const Stmt& s) {
  std::set<std::string> out;
  switch (s.kind) {
    case Stmt::Kind::Assign:
    case Stmt::Kind::BecomesIn:
    case Stmt::Kind::BecomesSuchThat:
      out.insert(s.targets.begin(), s.targets.end());
      break;
    case Stmt::Kind::Assert:
    case Stmt::Kind::Stop:
      break;
    case Stmt::Kind::Begin: {
      out = write_set(*s.body());
      for (const auto& w : s.locals) out.erase(w.name);
      break;
    }
    default:
      for (const auto& ch : s.children) {
        auto w = write_set(*ch);
        out.insert(w.begin(), w.end());
      }
  }
  return out;
}

std::set<std::string> write_set(const Stmt& s, const ScopeContext& scope) {
  std::set<std::string> out;
  auto vars = scope.vars();
  for (const auto& n : write_set(s))
    if (std::binary_search(vars.begin(), vars.end(), n)) out.insert(n);
  return out;
}

// ---------------------------------------------------------------------------
// Executor
// ---------------------------------------------------------------------------

Executor::Executor(const ScopeContext& scope, const Interpretation& interp, ExecOptions options)
    : scope_(scope), interp_(&interp), options_(options) {}

void Executor::set_tracing(OnStep on_step, bool serialize_parallel) {
  on_step_ = std::move(on_step);
  tracing_ = true;
  serialize_ = serialize_parallel;
}

std::vector<Value> Executor::domain_of(const std::string& var) {
  auto it = domains_.find(var);
  if (it != domains_.end()) return it->second;
  return domains_[var] = variable_domain(scope_, var, *interp_);
}

std::vector<Store> Executor::step(const Stmt& s, const Store& store) {
  Env env(*interp_);
  FrameGuard g(env, store);
  std::vector<Store> out;
  switch (s.kind) {
    case Stmt::Kind::Assign: {
      Store n = store;
      n[s.targets[0]] = eval_expression(*s.expr, env);
      out.push_back(std::move(n));
      break;
    }
    case Stmt::Kind::BecomesIn: {
      Value set = eval_set(*s.expr, env);
      for (const auto& v : set.elements()) {
        Store n = store;
        n[s.targets[0]] = v;
        out.push_back(std::move(n));
      }
      break;
    }
    case Stmt::Kind::BecomesSuchThat: {
      std::vector<std::vector<Value>> doms;
      for (const auto& t : s.targets) doms.push_back(domain_of(t));
      Store after = store;
      std::vector<std::size_t> pos(doms.size(), 0);
      for (const auto& d : doms)
        if (d.empty()) return out;
      for (std::size_t j = 0; j < doms.size(); ++j) after[s.targets[j]] = doms[j][0];
      FrameGuard g1(env, after, 1);
      for (;;) {
        if (eval_predicate(*s.expr, env)) out.push_back(after);
        std::size_t j = doms.size();
        bool done = true;
        while (j-- > 0) {
          if (++pos[j] < doms[j].size()) {
            after[s.targets[j]] = doms[j][pos[j]];
            done = false;
            break;
          }
          pos[j] = 0;
          after[s.targets[j]] = doms[j][0];
        }
        if (done) break;
      }
      break;
    }
    case Stmt::Kind::Parallel: {
      // Each part sees the pre-state; results are merged on written names.
      out.push_back(store);
      for (const auto& part : s.children) {
        auto ws = write_set(*part);
        std::vector<Store> merged;
        for (const auto& r : step(*part, store))
          for (const auto& a : out) {
            Store m = a;
            for (const auto& w : ws) m[w] = r.at(w);
            merged.push_back(std::move(m));
          }
        out = std::move(merged);
      }
      break;
    }
    default:
      break;
  }
  return out;
}

void Executor::run(const Stmt& s, const Store& store, Trace& trace, const Done& done) {
  switch (s.kind) {
    case Stmt::Kind::Assign:
    case Stmt::Kind::BecomesIn:
    case Stmt::Kind::BecomesSuchThat:
    case Stmt::Kind::Parallel: {
      std::size_t mark = trace.size();
      if (tracing_) {
        std::vector<std::string> labels;
        if (s.kind == Stmt::Kind::Parallel) {
          for (const auto& p : s.children) {
            if (!p->label)
              throw SlpError("unlabeled-substitution", "parallel part without a label", p->span);
            labels.push_back(*p->label);
          }
        } else {
          if (!s.label) throw SlpError("unlabeled-substitution", "substitution without a label", s.span);
          labels.push_back(*s.label);
        }
        bool go = true;
        if (serialize_) {
          for (const auto& l : labels) {
            trace.push_back({l});
            if (!on_step_(trace)) {
              go = false;
              break;
            }
          }
        } else {
          trace.push_back(labels);
          go = on_step_(trace);
        }
        if (!go) {
          trace.resize(mark);
          return;
        }
      }
      auto results = step(s, store);
      if (results.empty()) results.push_back(store);
      for (const auto& r : results) done(r, trace);
      trace.resize(mark);
      return;
    }
    case Stmt::Kind::Seq:
      run_items(s.children, 0, store, trace, done);
      return;
    case Stmt::Kind::If: {
      Env env(*interp_);
      FrameGuard g(env, store);
      for (std::size_t i = 0; i < s.guards.size(); ++i)
        if (eval_predicate(*s.guards[i], env)) return run(*s.children[i], store, trace, done);
      if (s.has_else) return run(*s.children.back(), store, trace, done);
      if (options_.strict) throw SlpError("stuck", "no IF branch is enabled", s.span);
      done(store, trace);
      return;
    }
    case Stmt::Kind::While:
      run_loop(s, store, trace, done, 0);
      return;
    case Stmt::Kind::Begin: {
      ScopeContext inner = enter(scope_, s);
      std::vector<std::vector<Value>> doms;
      for (const auto& w : s.locals) doms.push_back(variable_domain(inner, w.name, *interp_));
      for (const auto& d : doms)
        if (d.empty()) return;
      Store local = store;
      std::vector<std::size_t> pos(doms.size(), 0);
      for (std::size_t j = 0; j < doms.size(); ++j) local[s.locals[j].name] = doms[j][0];
      Done leave = [&](const std::optional<Store>& r, Trace& t) {
        if (!r) return done(r, t);
        Store out = *r;
        for (const auto& w : s.locals) out.erase(w.name);
        done(out, t);
      };
      for (;;) {
        bool ok;
        {
          Env env(*interp_);
          FrameGuard g(env, local);
          ok = all_hold(s.invariants, env);
        }
        if (ok) run(*s.body(), local, trace, leave);
        std::size_t j = doms.size();
        bool finished = true;
        while (j-- > 0) {
          if (++pos[j] < doms[j].size()) {
            local[s.locals[j].name] = doms[j][pos[j]];
            finished = false;
            break;
          }
          pos[j] = 0;
          local[s.locals[j].name] = doms[j][0];
        }
        if (finished) break;
      }
      return;
    }
    case Stmt::Kind::Assert: {
      Env env(*interp_);
      FrameGuard g(env, store);
      for (const auto& c : s.conjuncts)
        if (!eval_predicate(*c.pred, env)) {
          std::string w;
          for (const auto& [k, v] : store) w += (w.empty() ? "" : ", ") + k + "=" + v.str();
          throw SlpError("assert-failed",
                         "assertion " + (c.label.empty() ? std::string("<unlabeled>") : c.label) +
                             " fails at " + w,
                         c.span);
        }
      done(store, trace);
      return;
    }
    case Stmt::Kind::Stop:
      done(std::nullopt, trace);
      return;
  }
}

void Executor::run_items(const std::vector<StmtPtr>& items, std::size_t i, const Store& store,
                         Trace& trace, const Done& done) {
  if (i == items.size()) return done(store, trace);
  run(*items[i], store, trace, [&, i](const std::optional<Store>& r, Trace& t) {
    if (!r) return done(r, t);
    run_items(items, i + 1, *r, t, done);
  });
}

void Executor::run_loop(const Stmt& s, const Store& store, Trace& trace, const Done& done,
                        std::size_t iterations) {
  bool go;
  {
    Env env(*interp_);
    FrameGuard g(env, store);
    go = eval_predicate(*s.expr, env);
  }
  if (!go) return done(store, trace);
  if (iterations >= options_.fuel)
    throw SlpError("fuel-exhausted", "loop exceeded " + std::to_string(options_.fuel) + " iterations",
                   s.span);
  run(*s.body(), store, trace, [&](const std::optional<Store>& r, Trace& t) {
    if (!r) return done(r, t);
    run_loop(s, *r, t, done, iterations + 1);
  });
}

Targets execute(const Stmt& s, const std::vector<State>& initial, const ScopeContext& scope,
                const Interpretation& interp, ExecOptions options) {
  auto vars = scope.vars();
  Executor ex(scope, interp, options);
  Targets out;
  for (const auto& init : initial) {
    Store store;
    for (std::size_t i = 0; i < vars.size(); ++i) store[vars[i]] = init[i];
    Trace trace;
    ex.run(s, store, trace, [&](const std::optional<Store>& r, Trace&) {
      if (!r) {
        out.push_back(std::nullopt);
        return;
      }
      State st(vars.size());
      for (std::size_t i = 0; i < vars.size(); ++i) st[i] = r->at(vars[i]);
      out.push_back(std::move(st));
    });
  }
  normalize(out);
  return out;
}

}  // namespace slp
