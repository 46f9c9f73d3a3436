#include "slp/scope.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace slp {

namespace {

std::vector<std::string> names_of(const std::vector<VarDecl>& decls) {
  std::vector<std::string> out;
  out.reserve(decls.size());
  for (const auto& d : decls) out.push_back(d.name);
  return out;
}

bool closed_under(const Expr& e, const std::set<std::string>& vars) {
  for (const auto& n : free_names(e))
    if (vars.count(n) || n.back() == '\'') return false;
  return true;
}

}  // namespace

std::vector<std::string> ScopeContext::vars() const {
  std::vector<std::string> out;
  for (const auto& l : layers) out.insert(out.end(), l.vars.begin(), l.vars.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<InvariantDef> ScopeContext::invariants() const {
  std::vector<InvariantDef> out;
  for (const auto& l : layers)
    for (const auto& i : l.invariants)
      if (!i.is_theorem()) out.push_back(i);
  return out;
}

std::vector<InvariantDef> ScopeContext::full_invariant() const {
  std::vector<InvariantDef> out = axioms;
  for (const auto& l : layers) out.insert(out.end(), l.invariants.begin(), l.invariants.end());
  return out;
}

ScopeContext ScopeContext::with_layer(ScopeLayer layer, const std::string& key_suffix) const {
  ScopeContext s = *this;
  s.layers.push_back(std::move(layer));
  s.key += key_suffix;
  return s;
}

ScopeContext enter(const ScopeContext& outer, const Stmt& s) {
  std::ostringstream key;
  key << "/" << static_cast<const void*>(&s);
  if (s.kind == Stmt::Kind::While)
    return outer.with_layer({ScopeLayer::Kind::Loop, {}, s.invariants}, key.str());
  if (s.kind == Stmt::Kind::Begin)
    return outer.with_layer({ScopeLayer::Kind::Block, names_of(s.locals), s.invariants}, key.str());
  return outer;
}

ScopeContext global_scope(const SlpModel& model) {
  ScopeContext s;
  s.key = "model:" + model.name;
  s.axioms = model.context.axioms;
  s.layers.push_back({ScopeLayer::Kind::Globals, names_of(model.globals), model.invariants});
  return s;
}

ScopeContext process_scope(const SlpModel& model, const ProcessDef& process) {
  ScopeContext s = global_scope(model);
  s.key = "process:" + process.label;
  s.layers.push_back({ScopeLayer::Kind::Process, names_of(process.locals), process.invariants});
  return s;
}

ScopeContext scope_chain(const SlpModel& model, const std::string& process, const StmtPath& path) {
  const ProcessDef* p = model.find_process(process);
  if (!p) throw SlpError("no-such-position", "no process named " + process);
  ScopeContext s = process_scope(model, *p);
  if (!p->body) {
    if (path.empty()) return s;
    throw SlpError("no-such-position", "process " + process + " has no body");
  }
  const Stmt* cur = p->body.get();
  for (int idx : path) {
    if (idx < 0 || static_cast<std::size_t>(idx) >= cur->children.size())
      throw SlpError("no-such-position", "no statement at " + process + "." + path_str(path));
    s = enter(s, *cur);
    cur = cur->children[static_cast<std::size_t>(idx)].get();
  }
  return s;
}

ScopeContext machine_scope(const SlpModel& model) {
  if (!model.machine) throw SlpError("no-machine", "model has no MACHINE section");
  ScopeContext s;
  s.key = "machine:" + model.machine->name;
  s.axioms = model.context.axioms;
  s.layers.push_back(
      {ScopeLayer::Kind::Globals, names_of(model.machine->variables), model.machine->invariants});
  return s;
}

Typing find_typing(const ScopeContext& scope, const std::string& var) {
  std::set<std::string> vars;
  for (const auto& v : scope.vars()) vars.insert(v);
  // The declaring layer wins over later ones.
  std::vector<const ScopeLayer*> order;
  for (const auto& l : scope.layers)
    if (std::find(l.vars.begin(), l.vars.end(), var) != l.vars.end()) order.push_back(&l);
  for (const auto& l : scope.layers)
    if (std::find(order.begin(), order.end(), &l) == order.end()) order.push_back(&l);
  for (const auto* l : order) {
    for (const auto& inv : l->invariants) {
      if (inv.is_theorem()) continue;
      for (const auto& c : conjuncts(inv.pred)) {
        if ((c->op != Op::In && c->op != Op::Subset) || c->args[0]->op != Op::Name) continue;
        const auto& lhs = *c->args[0];
        if (lhs.primed || lhs.name != var || !closed_under(*c->args[1], vars)) continue;
        return {c->args[1], c->op == Op::Subset};
      }
    }
  }
  return {};
}

std::vector<Value> variable_domain(const ScopeContext& scope, const std::string& var,
                                   const Interpretation& interp) {
  Typing t = find_typing(scope, var);
  Env env(interp);
  if (!t.set) return interp.int_domain().elements();
  Value s = eval_set(*t.set, env);
  if (t.subset) s = powerset(s);
  return s.elements();
}

StateSpace::StateSpace(const ScopeContext& scope, const Interpretation& interp)
    : vars_(scope.vars()), invariant_(scope.invariants()), interp_(&interp) {
  std::size_t cap = state_cap();
  std::size_t product = 1;
  for (const auto& v : vars_) {
    domains_.push_back(variable_domain(scope, v, interp));
    std::size_t n = domains_.back().size();
    if (n != 0 && product > cap / n)
      throw SlpError("state-space-exceeded",
                     "state space of " + scope.key + " exceeds the cap of " + std::to_string(cap));
    product *= n;
  }
  typed_size_ = 0;
  for (const auto& d : domains_)
    if (d.empty()) product = 0;
  typed_size_ = product;
  Env env(interp);
  for_each_typed([&](const State& s) {
    if (satisfies(s, env)) {
      index_.emplace(s, states_.size());
      states_.push_back(s);
    }
  });
}

bool StateSpace::satisfies(const State& s) const {
  Env env(*interp_);
  return satisfies(s, env);
}

bool StateSpace::satisfies(const State& s, Env& env) const {
  FrameGuard g(env, vars_, s);
  for (const auto& inv : invariant_)
    if (!eval_predicate(*inv.pred, env)) return false;
  return true;
}

long StateSpace::index_of(const State& s) const {
  auto it = index_.find(s);
  return it == index_.end() ? -1 : static_cast<long>(it->second);
}

std::size_t StateSpace::var_index(const std::string& name) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  if (it == vars_.end()) throw SlpError("unbound-name", "no variable " + name + " in scope");
  return static_cast<std::size_t>(it - vars_.begin());
}

std::vector<State> enumerate_states(const ScopeContext& scope, const Interpretation& interp) {
  return StateSpace(scope, interp).states();
}

std::vector<State> satisfaction_set(const Expr& pred, const ScopeContext& scope,
                                    const Interpretation& interp) {
  StateSpace space(scope, interp);
  Env env(interp);
  std::vector<State> out;
  for (const auto& s : space.states()) {
    FrameGuard g(env, space.vars(), s);
    if (eval_predicate(pred, env)) out.push_back(s);
  }
  return out;
}

std::shared_ptr<const StateSpace> SpaceCache::get(const ScopeContext& scope) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = spaces_.find(scope.key); it != spaces_.end()) return it->second;
  }
  auto space = std::make_shared<const StateSpace>(scope, *interp_);
  std::lock_guard<std::mutex> lock(mu_);
  return spaces_.emplace(scope.key, std::move(space)).first->second;
}

}  // namespace slp
