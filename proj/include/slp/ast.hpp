#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "slp/error.hpp"

namespace slp {

// ---------------------------------------------------------------------------
// Predicates and expressions share one node type; a predicate is an
// expression of boolean type.
// ---------------------------------------------------------------------------

enum class Op : std::uint8_t {
  IntLit,
  BoolLit,
  Name,
  EmptySet,
  SetLit,
  BaseInt,
  BaseNat,
  BaseNat1,
  BaseBool,
  Neg,
  Not,
  BoolOf,
  Add,
  Sub,
  Mul,
  Div,
  Mod,
  Eq,
  Neq,
  Lt,
  Le,
  Gt,
  Ge,
  In,
  NotIn,
  Subset,
  And,
  Or,
  Implies,
  Iff,
  Union,
  Inter,
  Diff,
  Range,
  Maplet,
  Apply,
  Forall,
  Exists,
};

const char* op_name(Op op);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  Op op = Op::IntLit;
  std::int64_t number = 0;          // IntLit value; BoolLit 0/1
  std::string name;                 // Name
  bool primed = false;              // Name: before-after reference x'
  std::vector<std::string> bound;   // Forall / Exists
  std::vector<ExprPtr> args;
  SourceSpan span;
};

namespace ex {
ExprPtr integer(std::int64_t v, SourceSpan span = {});
ExprPtr boolean(bool v, SourceSpan span = {});
ExprPtr name(std::string n, bool primed = false, SourceSpan span = {});
ExprPtr unary(Op op, ExprPtr a, SourceSpan span = {});
ExprPtr binary(Op op, ExprPtr a, ExprPtr b, SourceSpan span = {});
ExprPtr nary(Op op, std::vector<ExprPtr> args, SourceSpan span = {});
ExprPtr quant(Op op, std::vector<std::string> vars, ExprPtr body, SourceSpan span = {});
ExprPtr conj(const std::vector<ExprPtr>& parts);  // TRUE when empty
ExprPtr negate(ExprPtr p);
}  // namespace ex

/// Structural equality ignoring source spans.
bool same_expr(const Expr& a, const Expr& b);
bool same_expr(const ExprPtr& a, const ExprPtr& b);

/// Top-level conjuncts of `p` (a non-conjunction yields itself).
std::vector<ExprPtr> conjuncts(const ExprPtr& p);

/// Free names of `e`; primed references are reported with a trailing `'`.
std::set<std::string> free_names(const Expr& e);
bool mentions_primed(const Expr& e);

/// Replaces free occurrences of `name` (its primed form when `primed`) by
/// `by`. Bound variables shadow; no renaming is attempted.
ExprPtr substitute(const ExprPtr& e, const std::string& name, bool primed, const ExprPtr& by);

/// Turns every free plain reference to a name in `names` into its primed
/// form (after-state view of a state predicate).
ExprPtr prime_names(const ExprPtr& e, const std::set<std::string>& names);

// ---------------------------------------------------------------------------
// Model structure
// ---------------------------------------------------------------------------

struct LabeledPredicate {
  std::string label;  // may be empty for unlabeled assert conjuncts
  ExprPtr pred;
  SourceSpan span;
};

struct InvariantDef {
  enum class Kind { Invariant, Theorem };
  Kind kind = Kind::Invariant;
  std::string label;
  ExprPtr pred;
  SourceSpan span;

  bool is_theorem() const { return kind == Kind::Theorem; }
};

struct VarDecl {
  std::string name;
  SourceSpan span;
};

/// Trailing action annotations; recorded, never interpreted.
struct Annotations {
  bool atomic = false;
  std::vector<std::string> refines;
  ExprPtr with;
};

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

struct Stmt {
  enum class Kind {
    Assign,           // x := E
    BecomesIn,        // x :: S
    BecomesSuchThat,  // x, y :| P(v, x', y')
    Parallel,         // s1 || ... || sn
    Seq,              // s1 ; ... ; sn
    If,
    While,
    Begin,
    Assert,
    Stop,
  };

  Kind kind = Kind::Stop;
  std::optional<std::string> label;
  SourceSpan span;
  Annotations annotations;

  std::vector<std::string> targets;   // substitutions
  ExprPtr expr;                       // rhs / set / predicate / loop condition
  std::vector<StmtPtr> children;      // parallel parts, seq items, branch bodies, loop/block body
  std::vector<ExprPtr> guards;        // If: one per non-else branch
  bool has_else = false;              // If: last child is the else body
  std::vector<InvariantDef> invariants;  // While LI / Begin BI
  ExprPtr variant;                    // While
  std::vector<VarDecl> locals;        // Begin
  std::vector<LabeledPredicate> conjuncts;  // Assert

  bool is_substitution() const {
    return kind == Kind::Assign || kind == Kind::BecomesIn || kind == Kind::BecomesSuchThat ||
           kind == Kind::Parallel;
  }
  const StmtPtr& body() const { return children.front(); }
};

namespace st {
StmtPtr assign(std::string target, ExprPtr e, std::optional<std::string> label = {});
StmtPtr becomes_in(std::string target, ExprPtr set, std::optional<std::string> label = {});
StmtPtr becomes_such_that(std::vector<std::string> targets, ExprPtr pred,
                          std::optional<std::string> label = {});
StmtPtr parallel(std::vector<StmtPtr> parts, std::optional<std::string> label = {});
StmtPtr seq(std::vector<StmtPtr> items);
/// `body` as a block: a Seq, wrapping a single statement when needed.
/// Branch, loop and block bodies built below always go through it.
StmtPtr block(StmtPtr body);
StmtPtr if_(std::vector<std::pair<ExprPtr, StmtPtr>> branches, StmtPtr else_body = nullptr,
            std::optional<std::string> label = {});
StmtPtr while_(ExprPtr cond, std::vector<InvariantDef> invariants, ExprPtr variant, StmtPtr body,
               std::optional<std::string> label = {});
StmtPtr begin(std::vector<std::string> locals, std::vector<InvariantDef> invariants, StmtPtr body,
              std::optional<std::string> label = {});
StmtPtr assert_(std::vector<LabeledPredicate> conjuncts, std::optional<std::string> label = {});
StmtPtr stop(std::optional<std::string> label = {});
}  // namespace st

bool same_stmt(const Stmt& a, const Stmt& b);
bool same_stmt(const StmtPtr& a, const StmtPtr& b);

struct Context {
  std::vector<VarDecl> sets;
  std::vector<VarDecl> constants;
  std::vector<InvariantDef> axioms;
};

struct EnvironmentDef {
  std::string label;
  SourceSpan span;
  std::vector<LabeledPredicate> relies;
  std::vector<LabeledPredicate> guarantees;
};

struct ProcessDef {
  std::string label;
  SourceSpan span;
  std::vector<VarDecl> locals;
  std::vector<LabeledPredicate> relies;
  std::vector<LabeledPredicate> guarantees;
  std::vector<InvariantDef> invariants;
  StmtPtr body;  // null for a body-less process
};

struct Event {
  std::string label;
  SourceSpan span;
  ExprPtr guard;
  StmtPtr action;
};

struct EventBMachine {
  std::string name;
  SourceSpan span;
  std::vector<VarDecl> variables;
  std::vector<InvariantDef> invariants;
  StmtPtr initialisation;
  std::vector<Event> events;

  const Event* find_event(const std::string& label) const;
};

/// `REFMAP unit { label -> event ; ... }`: the alphabet map from a unit's
/// substitution (or guarantee) labels to refined machine events.
struct RefMap {
  std::string unit;
  SourceSpan span;
  std::vector<std::pair<std::string, std::string>> entries;
};

struct CheckSet {
  std::string name;
  std::vector<std::string> atoms;
  SourceSpan span;
};

struct CheckConst {
  std::string name;
  ExprPtr value;
  SourceSpan span;
};

/// The finite interpretation declared in a `CHECK` section.
struct CheckSection {
  std::optional<std::pair<std::int64_t, std::int64_t>> int_bound;
  std::vector<CheckSet> sets;
  std::vector<CheckConst> constants;
  SourceSpan span;
};

struct SlpModel {
  std::string name;
  SourceSpan span;
  Context context;
  std::vector<VarDecl> globals;
  std::vector<InvariantDef> invariants;
  StmtPtr initialisation;
  std::vector<EnvironmentDef> environments;
  std::vector<ProcessDef> processes;
  std::optional<EventBMachine> machine;
  std::vector<RefMap> refmaps;
  std::optional<CheckSection> check;

  const ProcessDef* find_process(const std::string& label) const;
  const EnvironmentDef* find_environment(const std::string& label) const;
  const RefMap* find_refmap(const std::string& unit) const;
};

bool same_model(const SlpModel& a, const SlpModel& b);

/// Address of a statement inside a process body: child indices from the root.
using StmtPath = std::vector<int>;

const Stmt* resolve_path(const Stmt& root, const StmtPath& path);
std::string path_str(const StmtPath& path);

/// Label used in PO ids: the user label when present, else a positional
/// `_i_j` label derived from the path.
std::string stmt_label(const Stmt& s, const StmtPath& path);

}  // namespace slp
