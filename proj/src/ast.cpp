#include "slp/ast.hpp"

#include <algorithm>
#include <sstream>

namespace slp {

std::string SourceSpan::str() const {
  std::ostringstream out;
  out << begin.line << ":" << begin.column << "-" << end.line << ":" << end.column;
  return out.str();
}

const char* op_name(Op op) {
  switch (op) {
    case Op::IntLit: return "int";
    case Op::BoolLit: return "bool-literal";
    case Op::Name: return "name";
    case Op::EmptySet: return "{}";
    case Op::SetLit: return "set-literal";
    case Op::BaseInt: return "INT";
    case Op::BaseNat: return "NAT";
    case Op::BaseNat1: return "NAT1";
    case Op::BaseBool: return "BOOL";
    case Op::Neg: return "-";
    case Op::Not: return "not";
    case Op::BoolOf: return "bool";
    case Op::Add: return "+";
    case Op::Sub: return "-";
    case Op::Mul: return "*";
    case Op::Div: return "/";
    case Op::Mod: return "mod";
    case Op::Eq: return "=";
    case Op::Neq: return "/=";
    case Op::Lt: return "<";
    case Op::Le: return "<=";
    case Op::Gt: return ">";
    case Op::Ge: return ">=";
    case Op::In: return ":";
    case Op::NotIn: return "/:";
    case Op::Subset: return "<:";
    case Op::And: return "&";
    case Op::Or: return "or";
    case Op::Implies: return "=>";
    case Op::Iff: return "<=>";
    case Op::Union: return "\\/";
    case Op::Inter: return "/\\";
    case Op::Diff: return "\\";
    case Op::Range: return "..";
    case Op::Maplet: return "|->";
    case Op::Apply: return "apply";
    case Op::Forall: return "!";
    case Op::Exists: return "#";
  }
  return "?";
}

namespace ex {

ExprPtr integer(std::int64_t v, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->op = Op::IntLit;
  e->number = v;
  e->span = span;
  return e;
}

ExprPtr boolean(bool v, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->op = Op::BoolLit;
  e->number = v ? 1 : 0;
  e->span = span;
  return e;
}

ExprPtr name(std::string n, bool primed, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->op = Op::Name;
  e->name = std::move(n);
  e->primed = primed;
  e->span = span;
  return e;
}

ExprPtr unary(Op op, ExprPtr a, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->args = {std::move(a)};
  e->span = span;
  return e;
}

ExprPtr binary(Op op, ExprPtr a, ExprPtr b, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->args = {std::move(a), std::move(b)};
  e->span = span;
  return e;
}

ExprPtr nary(Op op, std::vector<ExprPtr> args, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->args = std::move(args);
  e->span = span;
  return e;
}

ExprPtr quant(Op op, std::vector<std::string> vars, ExprPtr body, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->bound = std::move(vars);
  e->args = {std::move(body)};
  e->span = span;
  return e;
}

ExprPtr conj(const std::vector<ExprPtr>& parts) {
  if (parts.empty()) return boolean(true);
  ExprPtr acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = binary(Op::And, acc, parts[i]);
  return acc;
}

ExprPtr negate(ExprPtr p) { return unary(Op::Not, std::move(p)); }

}  // namespace ex

bool same_expr(const Expr& a, const Expr& b) {
  if (a.op != b.op || a.number != b.number || a.name != b.name || a.primed != b.primed ||
      a.bound != b.bound || a.args.size() != b.args.size())
    return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!same_expr(a.args[i], b.args[i])) return false;
  return true;
}

bool same_expr(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  return same_expr(*a, *b);
}

std::vector<ExprPtr> conjuncts(const ExprPtr& p) {
  std::vector<ExprPtr> out;
  if (!p) return out;
  if (p->op == Op::And) {
    for (const auto& a : p->args) {
      auto sub = conjuncts(a);
      out.insert(out.end(), sub.begin(), sub.end());
    }
  } else {
    out.push_back(p);
  }
  return out;
}

namespace {

void collect_free(const Expr& e, std::vector<std::string>& bound, std::set<std::string>& out) {
  if (e.op == Op::Name) {
    if (!e.primed && std::find(bound.begin(), bound.end(), e.name) != bound.end()) return;
    out.insert(e.primed ? e.name + "'" : e.name);
    return;
  }
  if (e.op == Op::Forall || e.op == Op::Exists) {
    auto mark = bound.size();
    bound.insert(bound.end(), e.bound.begin(), e.bound.end());
    for (const auto& a : e.args) collect_free(*a, bound, out);
    bound.resize(mark);
    return;
  }
  for (const auto& a : e.args) collect_free(*a, bound, out);
}

}  // namespace

std::set<std::string> free_names(const Expr& e) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  collect_free(e, bound, out);
  return out;
}

bool mentions_primed(const Expr& e) {
  if (e.op == Op::Name) return e.primed;
  return std::any_of(e.args.begin(), e.args.end(), [](const ExprPtr& a) { return mentions_primed(*a); });
}

ExprPtr substitute(const ExprPtr& e, const std::string& name, bool primed, const ExprPtr& by) {
  if (!e) return e;
  if (e->op == Op::Name) {
    if (e->name == name && e->primed == primed) return by;
    return e;
  }
  if ((e->op == Op::Forall || e->op == Op::Exists) && !primed &&
      std::find(e->bound.begin(), e->bound.end(), name) != e->bound.end())
    return e;
  bool changed = false;
  std::vector<ExprPtr> args;
  args.reserve(e->args.size());
  for (const auto& a : e->args) {
    args.push_back(substitute(a, name, primed, by));
    changed = changed || args.back() != a;
  }
  if (!changed) return e;
  auto copy = std::make_shared<Expr>(*e);
  copy->args = std::move(args);
  return copy;
}

ExprPtr prime_names(const ExprPtr& e, const std::set<std::string>& names) {
  if (!e) return e;
  if (e->op == Op::Name) {
    if (!e->primed && names.count(e->name)) return ex::name(e->name, true, e->span);
    return e;
  }
  std::set<std::string> inner = names;
  if (e->op == Op::Forall || e->op == Op::Exists)
    for (const auto& b : e->bound) inner.erase(b);
  bool changed = false;
  std::vector<ExprPtr> args;
  for (const auto& a : e->args) {
    args.push_back(prime_names(a, inner));
    changed = changed || args.back() != a;
  }
  if (!changed) return e;
  auto copy = std::make_shared<Expr>(*e);
  copy->args = std::move(args);
  return copy;
}

// ---------------------------------------------------------------------------

namespace st {

namespace {
std::shared_ptr<Stmt> make(Stmt::Kind k, std::optional<std::string> label) {
  auto s = std::make_shared<Stmt>();
  s->kind = k;
  s->label = std::move(label);
  return s;
}
}  // namespace

StmtPtr assign(std::string target, ExprPtr e, std::optional<std::string> label) {
  auto s = make(Stmt::Kind::Assign, std::move(label));
  s->targets = {std::move(target)};
  s->expr = std::move(e);
  return s;
}

StmtPtr becomes_in(std::string target, ExprPtr set, std::optional<std::string> label) {
  auto s = make(Stmt::Kind::BecomesIn, std::move(label));
  s->targets = {std::move(target)};
  s->expr = std::move(set);
  return s;
}

StmtPtr becomes_such_that(std::vector<std::string> targets, ExprPtr pred,
                          std::optional<std::string> label) {
  auto s = make(Stmt::Kind::BecomesSuchThat, std::move(label));
  s->targets = std::move(targets);
  s->expr = std::move(pred);
  return s;
}

StmtPtr parallel(std::vector<StmtPtr> parts, std::optional<std::string> label) {
  auto s = make(Stmt::Kind::Parallel, std::move(label));
  s->children = std::move(parts);
  return s;
}

StmtPtr seq(std::vector<StmtPtr> items) {
  auto s = make(Stmt::Kind::Seq, std::nullopt);
  s->children = std::move(items);
  return s;
}

StmtPtr block(StmtPtr body) {
  if (body && body->kind == Stmt::Kind::Seq) return body;
  return seq({std::move(body)});
}

StmtPtr if_(std::vector<std::pair<ExprPtr, StmtPtr>> branches, StmtPtr else_body,
            std::optional<std::string> label) {
  auto s = make(Stmt::Kind::If, std::move(label));
  for (auto& [g, b] : branches) {
    s->guards.push_back(g);
    s->children.push_back(block(b));
  }
  if (else_body) {
    s->has_else = true;
    s->children.push_back(block(std::move(else_body)));
  }
  return s;
}

StmtPtr while_(ExprPtr cond, std::vector<InvariantDef> invariants, ExprPtr variant, StmtPtr body,
               std::optional<std::string> label) {
  auto s = make(Stmt::Kind::While, std::move(label));
  s->expr = std::move(cond);
  s->invariants = std::move(invariants);
  s->variant = std::move(variant);
  s->children = {block(std::move(body))};
  return s;
}

StmtPtr begin(std::vector<std::string> locals, std::vector<InvariantDef> invariants, StmtPtr body,
              std::optional<std::string> label) {
  auto s = make(Stmt::Kind::Begin, std::move(label));
  for (auto& l : locals) s->locals.push_back({std::move(l), {}});
  s->invariants = std::move(invariants);
  s->children = {block(std::move(body))};
  return s;
}

StmtPtr assert_(std::vector<LabeledPredicate> conjuncts, std::optional<std::string> label) {
  auto s = make(Stmt::Kind::Assert, std::move(label));
  s->conjuncts = std::move(conjuncts);
  return s;
}

StmtPtr stop(std::optional<std::string> label) { return make(Stmt::Kind::Stop, std::move(label)); }

}  // namespace st

namespace {

bool same_invariants(const std::vector<InvariantDef>& a, const std::vector<InvariantDef>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].kind != b[i].kind || a[i].label != b[i].label || !same_expr(a[i].pred, b[i].pred))
      return false;
  return true;
}

bool same_labeled(const std::vector<LabeledPredicate>& a, const std::vector<LabeledPredicate>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].label != b[i].label || !same_expr(a[i].pred, b[i].pred)) return false;
  return true;
}

bool same_decls(const std::vector<VarDecl>& a, const std::vector<VarDecl>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].name != b[i].name) return false;
  return true;
}

}  // namespace

bool same_stmt(const Stmt& a, const Stmt& b) {
  if (a.kind != b.kind || a.label != b.label || a.targets != b.targets ||
      a.has_else != b.has_else || !same_expr(a.expr, b.expr) || !same_expr(a.variant, b.variant) ||
      a.children.size() != b.children.size() || a.guards.size() != b.guards.size() ||
      !same_invariants(a.invariants, b.invariants) || !same_decls(a.locals, b.locals) ||
      !same_labeled(a.conjuncts, b.conjuncts) || a.annotations.atomic != b.annotations.atomic ||
      a.annotations.refines != b.annotations.refines ||
      !same_expr(a.annotations.with, b.annotations.with))
    return false;
  for (std::size_t i = 0; i < a.guards.size(); ++i)
    if (!same_expr(a.guards[i], b.guards[i])) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!same_stmt(a.children[i], b.children[i])) return false;
  return true;
}

bool same_stmt(const StmtPtr& a, const StmtPtr& b) {
  if (!a || !b) return !a && !b;
  return same_stmt(*a, *b);
}

bool same_model(const SlpModel& a, const SlpModel& b) {
  if (a.name != b.name || !same_decls(a.context.sets, b.context.sets) ||
      !same_decls(a.context.constants, b.context.constants) ||
      !same_invariants(a.context.axioms, b.context.axioms) || !same_decls(a.globals, b.globals) ||
      !same_invariants(a.invariants, b.invariants) ||
      !same_stmt(a.initialisation, b.initialisation) ||
      a.environments.size() != b.environments.size() ||
      a.processes.size() != b.processes.size() || a.machine.has_value() != b.machine.has_value() ||
      a.refmaps.size() != b.refmaps.size() || a.check.has_value() != b.check.has_value())
    return false;
  for (std::size_t i = 0; i < a.environments.size(); ++i) {
    const auto& x = a.environments[i];
    const auto& y = b.environments[i];
    if (x.label != y.label || !same_labeled(x.relies, y.relies) ||
        !same_labeled(x.guarantees, y.guarantees))
      return false;
  }
  for (std::size_t i = 0; i < a.processes.size(); ++i) {
    const auto& x = a.processes[i];
    const auto& y = b.processes[i];
    if (x.label != y.label || !same_decls(x.locals, y.locals) || !same_labeled(x.relies, y.relies) ||
        !same_labeled(x.guarantees, y.guarantees) || !same_invariants(x.invariants, y.invariants) ||
        !same_stmt(x.body, y.body))
      return false;
  }
  if (a.machine) {
    const auto& x = *a.machine;
    const auto& y = *b.machine;
    if (x.name != y.name || !same_decls(x.variables, y.variables) ||
        !same_invariants(x.invariants, y.invariants) ||
        !same_stmt(x.initialisation, y.initialisation) || x.events.size() != y.events.size())
      return false;
    for (std::size_t i = 0; i < x.events.size(); ++i)
      if (x.events[i].label != y.events[i].label || !same_expr(x.events[i].guard, y.events[i].guard) ||
          !same_stmt(x.events[i].action, y.events[i].action))
        return false;
  }
  for (std::size_t i = 0; i < a.refmaps.size(); ++i)
    if (a.refmaps[i].unit != b.refmaps[i].unit || a.refmaps[i].entries != b.refmaps[i].entries)
      return false;
  if (a.check) {
    const auto& x = *a.check;
    const auto& y = *b.check;
    if (x.int_bound != y.int_bound || x.sets.size() != y.sets.size() ||
        x.constants.size() != y.constants.size())
      return false;
    for (std::size_t i = 0; i < x.sets.size(); ++i)
      if (x.sets[i].name != y.sets[i].name || x.sets[i].atoms != y.sets[i].atoms) return false;
    for (std::size_t i = 0; i < x.constants.size(); ++i)
      if (x.constants[i].name != y.constants[i].name ||
          !same_expr(x.constants[i].value, y.constants[i].value))
        return false;
  }
  return true;
}

const Event* EventBMachine::find_event(const std::string& label) const {
  for (const auto& e : events)
    if (e.label == label) return &e;
  return nullptr;
}

const ProcessDef* SlpModel::find_process(const std::string& label) const {
  for (const auto& p : processes)
    if (p.label == label) return &p;
  return nullptr;
}

const EnvironmentDef* SlpModel::find_environment(const std::string& label) const {
  for (const auto& e : environments)
    if (e.label == label) return &e;
  return nullptr;
}

const RefMap* SlpModel::find_refmap(const std::string& unit) const {
  for (const auto& r : refmaps)
    if (r.unit == unit) return &r;
  return nullptr;
}

const Stmt* resolve_path(const Stmt& root, const StmtPath& path) {
  const Stmt* cur = &root;
  for (int idx : path) {
    if (idx < 0 || static_cast<std::size_t>(idx) >= cur->children.size()) return nullptr;
    cur = cur->children[static_cast<std::size_t>(idx)].get();
  }
  return cur;
}

std::string path_str(const StmtPath& path) {
  std::string out;
  for (int idx : path) out += "_" + std::to_string(idx + 1);
  return out.empty() ? "_0" : out;
}

std::string stmt_label(const Stmt& s, const StmtPath& path) {
  return s.label ? *s.label : path_str(path);
}

}  // namespace slp
