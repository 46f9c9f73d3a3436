#include "slp/render.hpp"

#include <sstream>

namespace slp {

namespace {

// Binding strength, loosest first. Mirrors the parser's precedence ladder.
enum Level : int {
  kIff = 1,
  kImplies,
  kOr,
  kAnd,
  kNot,
  kCompare,
  kMaplet,
  kSetOp,
  kRange,
  kAdd,
  kMul,
  kNeg,
  kApply,
  kAtom,
};

int level(Op op) {
  switch (op) {
    case Op::Iff: return kIff;
    case Op::Implies: return kImplies;
    case Op::Or: return kOr;
    case Op::And: return kAnd;
    case Op::Not: return kNot;
    case Op::Eq:
    case Op::Neq:
    case Op::Lt:
    case Op::Le:
    case Op::Gt:
    case Op::Ge:
    case Op::In:
    case Op::NotIn:
    case Op::Subset: return kCompare;
    case Op::Maplet: return kMaplet;
    case Op::Union:
    case Op::Inter:
    case Op::Diff: return kSetOp;
    case Op::Range: return kRange;
    case Op::Add:
    case Op::Sub: return kAdd;
    case Op::Mul:
    case Op::Div:
    case Op::Mod: return kMul;
    case Op::Neg: return kNeg;
    case Op::Apply: return kApply;
    default: return kAtom;
  }
}

const char* infix(Op op) {
  switch (op) {
    case Op::Diff: return "\\\\";
    default: return op_name(op);
  }
}

void emit(std::ostream& out, const Expr& e, int min_level);

void emit_child(std::ostream& out, const ExprPtr& e, int min_level) { emit(out, *e, min_level); }

void emit_inner(std::ostream& out, const Expr& e) {
  switch (e.op) {
    case Op::IntLit:
      out << e.number;
      return;
    case Op::BoolLit:
      out << (e.number ? "TRUE" : "FALSE");
      return;
    case Op::Name:
      out << e.name << (e.primed ? "'" : "");
      return;
    case Op::EmptySet:
      out << "{}";
      return;
    case Op::SetLit:
      out << "{";
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) out << ", ";
        emit_child(out, e.args[i], kMaplet);
      }
      out << "}";
      return;
    case Op::BaseInt:
    case Op::BaseNat:
    case Op::BaseNat1:
    case Op::BaseBool:
      out << op_name(e.op);
      return;
    case Op::Neg:
      out << "-";
      if (e.args[0]->op == Op::IntLit) {
        out << "(" << e.args[0]->number << ")";
      } else {
        emit_child(out, e.args[0], kNeg);
      }
      return;
    case Op::Not:
      out << "not ";
      emit_child(out, e.args[0], kNot);
      return;
    case Op::BoolOf:
      out << "bool(";
      emit_child(out, e.args[0], 0);
      out << ")";
      return;
    case Op::Apply:
      emit_child(out, e.args[0], kApply);
      out << "(";
      emit_child(out, e.args[1], 0);
      out << ")";
      return;
    case Op::Forall:
    case Op::Exists:
      out << (e.op == Op::Forall ? "!" : "#");
      for (std::size_t i = 0; i < e.bound.size(); ++i) out << (i ? "," : "") << e.bound[i];
      out << ".(";
      emit_child(out, e.args[0], 0);
      out << ")";
      return;
    default:
      break;
  }
  int l = level(e.op);
  int left = l;
  int right = l + 1;
  if (e.op == Op::Implies) {
    left = l + 1;
    right = l;
  } else if (l == kCompare || l == kRange) {
    left = l + 1;
  }
  emit_child(out, e.args[0], left);
  out << " " << infix(e.op) << " ";
  emit_child(out, e.args[1], right);
}

void emit(std::ostream& out, const Expr& e, int min_level) {
  bool paren = level(e.op) < min_level;
  // A negative literal directly under a tighter operator still reads back
  // the same, but `-1` as a function is not an atom.
  if (e.op == Op::IntLit && e.number < 0 && min_level > kNeg) paren = true;
  if (paren) out << "(";
  emit_inner(out, e);
  if (paren) out << ")";
}

std::string pad(int indent) { return std::string(static_cast<std::size_t>(indent) * 2, ' '); }

void emit_items(std::ostream& out, const std::vector<InvariantDef>& items, int indent) {
  for (const auto& d : items) {
    out << pad(indent) << (d.is_theorem() ? "THEOREM " : "") << d.label << ": "
        << render_expr(d.pred) << "\n";
  }
}

void emit_names(std::ostream& out, const std::vector<VarDecl>& names) {
  for (std::size_t i = 0; i < names.size(); ++i) out << (i ? ", " : "") << names[i].name;
}

void emit_stmt(std::ostream& out, const Stmt& s, int indent);

void emit_block(std::ostream& out, const Stmt& block, int indent) {
  if (block.kind != Stmt::Kind::Seq) {
    out << pad(indent);
    emit_stmt(out, block, indent);
    out << "\n";
    return;
  }
  for (std::size_t i = 0; i < block.children.size(); ++i) {
    out << pad(indent);
    emit_stmt(out, *block.children[i], indent);
    out << (i + 1 < block.children.size() ? " ;\n" : "\n");
  }
}

void emit_simple(std::ostream& out, const Stmt& s) {
  for (std::size_t i = 0; i < s.targets.size(); ++i) out << (i ? ", " : "") << s.targets[i];
  switch (s.kind) {
    case Stmt::Kind::Assign: out << " := "; break;
    case Stmt::Kind::BecomesIn: out << " :: "; break;
    default: out << " :| "; break;
  }
  out << render_expr(s.expr);
}

void emit_stmt(std::ostream& out, const Stmt& s, int indent) {
  if (s.label && s.kind != Stmt::Kind::Parallel) out << *s.label << ": ";
  switch (s.kind) {
    case Stmt::Kind::Assign:
    case Stmt::Kind::BecomesIn:
    case Stmt::Kind::BecomesSuchThat:
      emit_simple(out, s);
      break;
    case Stmt::Kind::Parallel:
      for (std::size_t i = 0; i < s.children.size(); ++i) {
        if (i) out << " || ";
        const auto& part = *s.children[i];
        if (part.label) out << *part.label << ": ";
        emit_simple(out, part);
      }
      break;
    case Stmt::Kind::Seq:
      out << "BEGIN\n";
      emit_block(out, s, indent + 1);
      out << pad(indent) << "END";
      break;
    case Stmt::Kind::If:
      for (std::size_t i = 0; i < s.guards.size(); ++i) {
        if (i) out << pad(indent);
        out << (i ? "ELSIF " : "IF ") << render_expr(s.guards[i]) << " THEN\n";
        emit_block(out, *s.children[i], indent + 1);
      }
      if (s.has_else) {
        out << pad(indent) << "ELSE\n";
        emit_block(out, *s.children.back(), indent + 1);
      }
      out << pad(indent) << "END";
      break;
    case Stmt::Kind::While:
      out << "WHILE " << render_expr(s.expr) << "\n";
      if (!s.invariants.empty()) {
        out << pad(indent + 1) << "INVARIANT\n";
        emit_items(out, s.invariants, indent + 2);
      }
      out << pad(indent + 1) << "VARIANT " << render_expr(s.variant) << "\n";
      out << pad(indent) << "THEN\n";
      emit_block(out, *s.body(), indent + 1);
      out << pad(indent) << "END";
      break;
    case Stmt::Kind::Begin:
      out << "BEGIN\n";
      if (!s.locals.empty()) {
        out << pad(indent + 1) << "VARIABLES ";
        emit_names(out, s.locals);
        out << "\n";
      }
      if (!s.invariants.empty()) {
        out << pad(indent + 1) << "INVARIANTS\n";
        emit_items(out, s.invariants, indent + 2);
      }
      if (!s.locals.empty() || !s.invariants.empty()) out << pad(indent + 1) << "BODY\n";
      emit_block(out, *s.body(), indent + 2);
      out << pad(indent) << "END";
      break;
    case Stmt::Kind::Assert:
      out << "ASSERT ";
      for (std::size_t i = 0; i < s.conjuncts.size(); ++i) {
        if (i) out << " &&& ";
        if (!s.conjuncts[i].label.empty()) out << s.conjuncts[i].label << ": ";
        out << render_expr(s.conjuncts[i].pred);
      }
      break;
    case Stmt::Kind::Stop:
      out << "STOP";
      break;
  }
  if (s.annotations.atomic) out << " ATOMIC";
  if (!s.annotations.refines.empty()) {
    out << " REFINES ";
    for (std::size_t i = 0; i < s.annotations.refines.size(); ++i)
      out << (i ? ", " : "") << s.annotations.refines[i];
  }
  if (s.annotations.with) out << " WITH " << render_expr(s.annotations.with);
}

void emit_rg(std::ostream& out, const std::vector<LabeledPredicate>& relies,
             const std::vector<LabeledPredicate>& guars) {
  for (const auto& r : relies) out << "  RELY " << r.label << ": " << render_expr(r.pred) << "\n";
  for (const auto& g : guars)
    out << "  GUARANTEE " << g.label << ": " << render_expr(g.pred) << "\n";
}

}  // namespace

std::string render_expr(const Expr& e) {
  std::ostringstream out;
  emit(out, e, 0);
  return out.str();
}

std::string render_expr(const ExprPtr& e) { return e ? render_expr(*e) : std::string("TRUE"); }

std::string render_stmt(const Stmt& s, int indent) {
  std::ostringstream out;
  if (s.kind == Stmt::Kind::Seq) {
    emit_block(out, s, indent);
    auto text = out.str();
    if (!text.empty() && text.back() == '\n') text.pop_back();
    return text;
  }
  emit_stmt(out, s, indent);
  return out.str();
}

std::string render(const SlpModel& m) {
  std::ostringstream out;
  out << "MODEL " << m.name << "\n";
  if (!m.context.sets.empty()) {
    out << "SETS ";
    emit_names(out, m.context.sets);
    out << "\n";
  }
  if (!m.context.constants.empty()) {
    out << "CONSTANTS ";
    emit_names(out, m.context.constants);
    out << "\n";
  }
  if (!m.context.axioms.empty()) {
    out << "AXIOMS\n";
    emit_items(out, m.context.axioms, 1);
  }
  if (!m.globals.empty()) {
    out << "VARIABLES ";
    emit_names(out, m.globals);
    out << "\n";
  }
  if (!m.invariants.empty()) {
    out << "INVARIANTS\n";
    emit_items(out, m.invariants, 1);
  }
  if (m.initialisation) {
    out << "INITIALISATION\n  ";
    emit_stmt(out, *m.initialisation, 1);
    out << "\n";
  }
  for (const auto& env : m.environments) {
    out << "ENVIRONMENT " << env.label << "\n";
    emit_rg(out, env.relies, env.guarantees);
    out << "END\n";
  }
  for (const auto& p : m.processes) {
    out << "PROCESS " << p.label << "\n";
    if (!p.locals.empty()) {
      out << "  VARIABLES ";
      emit_names(out, p.locals);
      out << "\n";
    }
    emit_rg(out, p.relies, p.guarantees);
    if (!p.invariants.empty()) {
      out << "  INVARIANTS\n";
      emit_items(out, p.invariants, 2);
    }
    if (p.body) {
      out << "  BODY\n";
      emit_block(out, *p.body, 2);
    }
    out << "END\n";
  }
  if (m.machine) {
    const auto& mc = *m.machine;
    out << "MACHINE " << mc.name << "\n";
    if (!mc.variables.empty()) {
      out << "  VARIABLES ";
      emit_names(out, mc.variables);
      out << "\n";
    }
    if (!mc.invariants.empty()) {
      out << "  INVARIANTS\n";
      emit_items(out, mc.invariants, 2);
    }
    if (mc.initialisation) {
      out << "  INITIALISATION\n    ";
      emit_stmt(out, *mc.initialisation, 2);
      out << "\n";
    }
    for (const auto& e : mc.events) {
      out << "  EVENT " << e.label << "\n";
      if (e.guard && !(e.guard->op == Op::BoolLit && e.guard->number == 1))
        out << "    WHEN " << render_expr(e.guard) << "\n";
      out << "    THEN ";
      emit_stmt(out, *e.action, 3);
      out << "\n  END\n";
    }
    out << "END\n";
  }
  for (const auto& r : m.refmaps) {
    out << "REFMAP " << r.unit << " {";
    for (std::size_t i = 0; i < r.entries.size(); ++i)
      out << (i ? " ; " : " ") << r.entries[i].first << " -> " << r.entries[i].second;
    out << (r.entries.empty() ? "}" : " }") << "\n";
  }
  if (m.check) {
    const auto& c = *m.check;
    out << "CHECK\n";
    std::vector<std::string> items;
    if (c.int_bound)
      items.push_back("BOUND INT = " + std::to_string(c.int_bound->first) + " .. " +
                      std::to_string(c.int_bound->second));
    for (const auto& s : c.sets) {
      std::string text = "SET " + s.name + " = {";
      for (std::size_t i = 0; i < s.atoms.size(); ++i) text += (i ? ", " : "") + s.atoms[i];
      items.push_back(text + "}");
    }
    for (const auto& k : c.constants) items.push_back("CONST " + k.name + " = " + render_expr(k.value));
    for (std::size_t i = 0; i < items.size(); ++i)
      out << "  " << items[i] << (i + 1 < items.size() ? " ;\n" : "\n");
    out << "END\n";
  }
  out << "END\n";
  return out.str();
}

}  // namespace slp
