#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "slp/ast.hpp"
#include "slp/kernel.hpp"

namespace slp {

/// One name space along the tree of scopes: the globals, a process, a loop
/// (no variables, contributes its loop invariant) or a BEGIN block.
struct ScopeLayer {
  enum class Kind { Globals, Process, Loop, Block };
  Kind kind = Kind::Globals;
  std::vector<std::string> vars;
  std::vector<InvariantDef> invariants;
};

/// Variables and accumulated invariant in force at some position.
struct ScopeContext {
  std::string key;  // identifies the position for caching
  std::vector<InvariantDef> axioms;
  std::vector<ScopeLayer> layers;

  /// Every variable of every layer, sorted by name.
  std::vector<std::string> vars() const;
  /// Variables of the first layer.
  const std::vector<std::string>& globals() const { return layers.front().vars; }
  /// Invariant conjuncts (theorems excluded) of all layers in layer order.
  std::vector<InvariantDef> invariants() const;
  /// Axioms, then all invariants including theorems: the full 𝓘 for display.
  std::vector<InvariantDef> full_invariant() const;

  /// The scope one level deeper.
  ScopeContext with_layer(ScopeLayer layer, const std::string& key_suffix) const;
};

/// Scope of the globals alone.
ScopeContext global_scope(const SlpModel& model);

/// Scope of the body of a WHILE (adds its loop invariant) or of a BEGIN
/// block (adds its locals and block invariant); other statements do not
/// open a scope and return `outer` unchanged.
ScopeContext enter(const ScopeContext& outer, const Stmt& s);

/// Scope of a process body's top level.
ScopeContext process_scope(const SlpModel& model, const ProcessDef& process);

/// Scope in which the statement at `path` inside `process`'s body runs.
/// Errors: `no-such-position`.
ScopeContext scope_chain(const SlpModel& model, const std::string& process, const StmtPath& path);

/// Scope of an Event-B machine's variables.
ScopeContext machine_scope(const SlpModel& model);

/// Typing set of `var` taken from the first closed `var : S` / `var <: S`
/// conjunct of the scope's invariants; nullptr when there is none.
struct Typing {
  ExprPtr set;
  bool subset = false;
};
Typing find_typing(const ScopeContext& scope, const std::string& var);

/// Finite value domain of `var`: its typing set cut to bounds, or the INT
/// bound when untyped.
std::vector<Value> variable_domain(const ScopeContext& scope, const std::string& var,
                                   const Interpretation& interp);

/// Enumerated Σ of a scope plus membership tests.
class StateSpace {
 public:
  StateSpace(const ScopeContext& scope, const Interpretation& interp);

  const std::vector<std::string>& vars() const { return vars_; }
  const std::vector<std::vector<Value>>& domains() const { return domains_; }
  const std::vector<State>& states() const { return states_; }
  std::size_t typed_size() const { return typed_size_; }
  const std::vector<InvariantDef>& invariant() const { return invariant_; }
  const Interpretation& interp() const { return *interp_; }

  /// 𝓘(state), evaluated on the state's values (not clipped to bounds).
  bool satisfies(const State& s) const;
  bool satisfies(const State& s, Env& env) const;

  /// Index of a state of Σ, or -1.
  long index_of(const State& s) const;

  /// Calls f(state) for every state of the typed product, in order.
  template <class F>
  void for_each_typed(F&& f) const;

  std::size_t var_index(const std::string& name) const;

 private:
  std::vector<std::string> vars_;
  std::vector<std::vector<Value>> domains_;
  std::vector<InvariantDef> invariant_;
  std::vector<State> states_;
  std::unordered_map<State, std::size_t, StateHash> index_;
  std::size_t typed_size_ = 0;
  const Interpretation* interp_;
};

template <class F>
void StateSpace::for_each_typed(F&& f) const {
  for (const auto& d : domains_)
    if (d.empty()) return;
  std::vector<std::size_t> pos(vars_.size(), 0);
  State s(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) s[i] = domains_[i][0];
  for (;;) {
    f(static_cast<const State&>(s));
    std::size_t i = vars_.size();
    while (i > 0) {
      --i;
      if (++pos[i] < domains_[i].size()) {
        s[i] = domains_[i][pos[i]];
        break;
      }
      pos[i] = 0;
      s[i] = domains_[i][0];
      if (i == 0) return;
    }
    if (vars_.empty()) return;
  }
}

/// Σ in canonical order. Errors: `state-space-exceeded`.
std::vector<State> enumerate_states(const ScopeContext& scope, const Interpretation& interp);

/// {σ ∈ Σ | pred(σ)}.
std::vector<State> satisfaction_set(const Expr& pred, const ScopeContext& scope,
                                    const Interpretation& interp);

/// Thread-safe memo of state spaces keyed by scope key.
class SpaceCache {
 public:
  explicit SpaceCache(const Interpretation& interp) : interp_(&interp) {}
  std::shared_ptr<const StateSpace> get(const ScopeContext& scope);

 private:
  const Interpretation* interp_;
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<const StateSpace>> spaces_;
};

}  // namespace slp
