#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "slp/ast.hpp"
#include "slp/kernel.hpp"
#include "slp/scope.hpp"

namespace slp {

/// A relation target: a state, or ✓ (nullopt) once STOP has run.
using TerminalState = std::optional<State>;
using Targets = std::vector<TerminalState>;  // sorted, duplicate-free

enum class RefMode { Inter, Union };

struct Options {
  bool strict_paper = false;        // verbatim ∪ for ∥ and global trm
  bool strict_feasibility = false;  // per-state WD
  RefMode ref_mode = RefMode::Inter;
  bool serialize_parallel = true;   // trace elements of a ∥ become singletons
};

/// Finite relation from the states of a scope to states or ✓. Targets may
/// lie outside Σ; invariant preservation obligations detect those.
struct ScopedRelation {
  std::vector<std::string> vars;
  std::vector<std::pair<State, TerminalState>> pairs;  // sorted

  Targets image(const State& s) const;
  std::vector<State> domain() const;
  bool contains(const State& from, const TerminalState& to) const;
  bool operator==(const ScopedRelation& o) const { return vars == o.vars && pairs == o.pairs; }
};

/// id(Σ) overridden by `rel`.
ScopedRelation diamond(const ScopedRelation& rel, const StateSpace& space);

struct TrmResult {
  bool holds = true;
  std::optional<State> pre;
  TerminalState post;
  std::string reason;
};

/// Relational semantics of statements over finite scopes. Shares one state
/// space cache; safe to use from several threads.
class Semantics {
 public:
  Semantics(const Interpretation& interp, Options options = {});

  const Interpretation& interp() const { return *interp_; }
  const Options& options() const { return options_; }
  std::shared_ptr<const StateSpace> space(const ScopeContext& scope) const;

  /// ⟦s⟧(σ) for a statement running in `scope`.
  Targets successors(const Stmt& s, const ScopeContext& scope, const State& sigma) const;

  /// ⟦s⟧(σ) before the outermost ◇ closure: the guarded relation whose
  /// non-emptiness well-definedness asks for.
  Targets raw_successors(const Stmt& s, const ScopeContext& scope, const State& sigma) const;

  /// ⟦s⟧ over all of Σ.
  ScopedRelation interpret(const Stmt& s, const ScopeContext& scope) const;

  /// Variant obligation of a WHILE running in `scope`.
  TrmResult trm_holds(const Stmt& loop, const ScopeContext& scope) const;

  /// [guard] ◁ action, not ◇-closed. `scope` is the machine scope.
  Targets event_successors(const Event& e, const ScopeContext& scope, const State& sigma) const;
  ScopedRelation interpret_event(const Event& e, const ScopeContext& scope) const;

  /// States produced by a substitution that needs no pre-state (an
  /// initialisation); unwritten variables range over their domains. Only
  /// states satisfying the scope's invariant are kept.
  std::vector<State> initial_states(const Stmt* init, const ScopeContext& scope) const;

 private:
  struct Ctx;
  Targets succ(const Stmt& s, const Ctx& c, const State& sigma, bool raw) const;
  Targets seq(const Stmt& s, const Ctx& c, const State& sigma) const;
  Targets compose(const std::vector<StmtPtr>& items, std::size_t from, const Ctx& c,
                  const State& sigma) const;
  std::vector<std::vector<std::pair<std::size_t, Value>>> choices(const Stmt& s, const Ctx& c,
                                                                 const State& sigma) const;
  Targets substitution(const Stmt& s, const Ctx& c, const State& sigma) const;
  Targets begin_block(const Stmt& s, const Ctx& c, const State& sigma, bool raw) const;

  const Interpretation* interp_;
  Options options_;
  std::shared_ptr<SpaceCache> cache_;
};

/// Variables a statement may write. BEGIN blocks drop
/// their own locals.
std::set<std::string> write_set(const Stmt& s);
std::set<std::string> write_set(const Stmt& s, const ScopeContext& scope);

// ---------------------------------------------------------------------------
// Operational executor: runs statements over name-keyed stores, iterating
// loops and checking asserts. Independent of the relational code above.
// ---------------------------------------------------------------------------

using Store = std::map<std::string, Value>;
using TraceElement = std::vector<std::string>;
using Trace = std::vector<TraceElement>;

struct ExecOptions {
  std::size_t fuel = 100000;  // loop iterations per path
  bool strict = false;        // an IF with no matching branch is `stuck`
};

class Executor {
 public:
  /// Continuation called with the final store (nullopt after STOP) and the
  /// labels recorded so far.
  using Done = std::function<void(const std::optional<Store>&, Trace&)>;
  /// Called after each recorded step; returning false prunes the path.
  using OnStep = std::function<bool(const Trace&)>;

  Executor(const ScopeContext& scope, const Interpretation& interp, ExecOptions options = {});

  /// Records substitution labels through `on_step`. Unlabeled substitutions
  /// raise `unlabeled-substitution`.
  void set_tracing(OnStep on_step, bool serialize_parallel);

  void run(const Stmt& s, const Store& store, Trace& trace, const Done& done);

 private:
  void run_items(const std::vector<StmtPtr>& items, std::size_t i, const Store& store, Trace& trace,
                 const Done& done);
  void run_loop(const Stmt& s, const Store& store, Trace& trace, const Done& done,
                std::size_t iterations);
  std::vector<Store> step(const Stmt& s, const Store& store);
  std::vector<Value> domain_of(const std::string& var);

  ScopeContext scope_;
  const Interpretation* interp_;
  ExecOptions options_;
  OnStep on_step_;
  bool tracing_ = false;
  bool serialize_ = true;
  std::map<std::string, std::vector<Value>> domains_;
};

/// Big-step results of `s` from each initial state (aligned with
/// scope.vars()). Errors: `assert-failed`, `fuel-exhausted`, `stuck`.
Targets execute(const Stmt& s, const std::vector<State>& initial, const ScopeContext& scope,
                const Interpretation& interp, ExecOptions options = {});

}  // namespace slp
