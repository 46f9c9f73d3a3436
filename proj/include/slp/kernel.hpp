#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "slp/ast.hpp"
#include "slp/error.hpp"
#include "slp/value.hpp"

namespace slp {

/// Finite interpretation of a context: carrier sets as atom sets, constants
/// as values, and the interval standing in for INT.
struct Interpretation {
  std::int64_t lo = 0;
  std::int64_t hi = 8;
  std::map<std::string, Value> sets;
  std::map<std::string, Value> constants;  // includes carrier-set atoms

  const Value* lookup(const std::string& name) const;

  Value int_domain() const;
  Value nat_domain() const;   // max(0, lo) .. hi
  Value nat1_domain() const;  // max(1, lo) .. hi
};

/// Binds the sets and constants declared by `model` from its CHECK section.
/// Errors: `missing-interpretation` for a declared name without a binding,
/// `undeclared-constant` for a CHECK entry naming nothing in the context.
Interpretation build_interpretation(const SlpModel& model);

/// Upper bound on enumerated spaces; `SLP_STATE_CAP` overrides the default 10^7.
std::size_t state_cap();

/// Name binding for evaluation. State frames are referenced, not copied;
/// they must outlive the lookups. A frame at level 0 binds plain names, at
/// level 1 the primed names `x'`, at level 2 `x''` and so on.
class Env {
 public:
  explicit Env(const Interpretation& interp) : interp_(&interp) {}

  const Interpretation& interp() const { return *interp_; }

  void bind(const std::vector<std::string>& names, const State& values, int level = 0);
  void bind(const std::map<std::string, Value>& store, int level = 0);
  void pop_frame() { frames_.pop_back(); }

  void push_bound(const std::string& name, Value v);
  void pop_bound() { bound_.pop_back(); }

  const Value* lookup(const std::string& name, bool primed) const;

 private:
  struct Frame {
    const std::vector<std::string>* names = nullptr;
    const State* values = nullptr;
    const std::map<std::string, Value>* store = nullptr;
    int level = 0;
  };

  const Interpretation* interp_;
  std::vector<Frame> frames_;
  std::vector<std::pair<std::string, Value>> bound_;
};

/// RAII frame binding for an Env.
class FrameGuard {
 public:
  FrameGuard(Env& env, const std::vector<std::string>& names, const State& values, int level = 0)
      : env_(env) {
    env_.bind(names, values, level);
  }
  FrameGuard(Env& env, const std::map<std::string, Value>& store, int level = 0) : env_(env) {
    env_.bind(store, level);
  }
  ~FrameGuard() { env_.pop_frame(); }
  FrameGuard(const FrameGuard&) = delete;
  FrameGuard& operator=(const FrameGuard&) = delete;

 private:
  Env& env_;
};

/// Errors: `unbound-name`, `partial-application`, `div-by-zero`,
/// `type-error`, `overflow`, `state-space-exceeded`.
Value eval_expression(const Expr& e, Env& env);
bool eval_predicate(const Expr& p, Env& env);

/// Set value of a set-valued expression; base sets are cut to the bounds.
Value eval_set(const Expr& e, Env& env);

/// Membership without materializing intervals and base sets.
bool eval_member(const Value& x, const Expr& set, Env& env);

/// All subsets of a finite set, smallest first.
Value powerset(const Value& set);

/// Values a quantified variable ranges over: taken from a leading typing
/// conjunct `x : S` (or `x <: S`) of the antecedent, else the INT bound.
/// `earlier` lists the quantified names already bound.
std::vector<Value> quantifier_domain(const Expr& quant, const std::string& var,
                                     const std::vector<std::string>& earlier, Env& env);

/// A binding of free names (plain or primed) to values, in display order.
using Binding = std::vector<std::pair<std::string, Value>>;

/// First binding of the leading universal variables of `p` that falsifies
/// it, in enumeration order; nullopt when `p` holds. A false closed
/// predicate yields an empty binding.
std::optional<Binding> falsifying_binding(const Expr& p, Env& env);

struct AxiomViolation {
  std::string label;
  Binding witness;
  std::string reason;
};

/// Empty iff every axiom (theorems excluded) holds under `interp`.
std::vector<AxiomViolation> check_interpretation(const Context& context,
                                                 const Interpretation& interp);

}  // namespace slp
