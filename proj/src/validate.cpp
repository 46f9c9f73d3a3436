#include "slp/validate.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "slp/scope.hpp"

namespace slp {

namespace {

using Names = std::set<std::string>;

class Validator {
 public:
  explicit Validator(const SlpModel& m) : m_(m) {}

  std::vector<Diagnostic> run() {
    declare_context();
    check_model_labels();
    check_axioms();
    check_globals();
    for (const auto& env : m_.environments) check_environment(env);
    if (m_.processes.empty())
      error(m_.span, "need-process", "a model needs at least one PROCESS");
    for (const auto& p : m_.processes) check_process(p);
    if (m_.machine) check_machine(*m_.machine);
    for (const auto& r : m_.refmaps) check_refmap(r);
    std::stable_sort(out_.begin(), out_.end(), [](const Diagnostic& a, const Diagnostic& b) {
      if (a.span.begin.offset != b.span.begin.offset)
        return a.span.begin.offset < b.span.begin.offset;
      return a.rule < b.rule;
    });
    return out_;
  }

 private:
  void error(const SourceSpan& span, const std::string& rule, const std::string& msg) {
    out_.push_back({span, Diagnostic::Severity::Error, rule, msg});
  }
  void warning(const SourceSpan& span, const std::string& rule, const std::string& msg) {
    out_.push_back({span, Diagnostic::Severity::Warning, rule, msg});
  }

  void declare_context() {
    auto add = [&](const VarDecl& d, const char* what) {
      if (!context_.insert(d.name).second)
        error(d.span, "distinct-vars", std::string(what) + " " + d.name + " is declared twice");
    };
    for (const auto& s : m_.context.sets) add(s, "set");
    for (const auto& c : m_.context.constants) add(c, "constant");
    if (m_.check)
      for (const auto& s : m_.check->sets)
        for (const auto& a : s.atoms) context_.insert(a);
    for (const auto& g : m_.globals) {
      if (context_.count(g.name) || globals_.count(g.name))
        error(g.span, "distinct-vars", "variable " + g.name + " clashes with another declaration");
      globals_.insert(g.name);
    }
  }

  void check_model_labels() {
    std::map<std::string, int> seen;
    auto add = [&](const std::string& label, const SourceSpan& span) {
      if (seen[label]++) error(span, "dup-label", "label " + label + " is used twice");
    };
    for (const auto& a : m_.context.axioms) add(a.label, a.span);
    for (const auto& i : m_.invariants) add(i.label, i.span);
    for (const auto& e : m_.environments) add(e.label, e.span);
    for (const auto& p : m_.processes) add(p.label, p.span);
  }

  // Reports free names outside `plain` / `primed`. Primed names are legal
  // only where `primed` is non-null.
  void check_expr(const Expr& e, const Names& plain, const Names* primed, const SourceSpan& span,
                  const char* scope_rule = "unbound-name", const Names* forbidden = nullptr) {
    for (const auto& n : free_names(e)) {
      if (n.back() == '\'') {
        std::string base = n.substr(0, n.size() - 1);
        if (!primed) {
          error(span, "prime-misuse", "primed name " + n + " is not allowed here");
        } else if (!primed->count(base)) {
          if (forbidden && forbidden->count(base))
            error(span, scope_rule, "name " + n + " is out of scope here");
          else if (plain.count(base) || context_.count(base))
            error(span, "prime-misuse", "name " + base + " cannot be primed here");
          else
            error(span, "unbound-name", "unbound name " + n);
        }
        continue;
      }
      if (plain.count(n) || context_.count(n)) continue;
      if (forbidden && forbidden->count(n))
        error(span, scope_rule, "name " + n + " is out of scope here");
      else
        error(span, "unbound-name", "unbound name " + n);
    }
  }

  void check_axioms() {
    for (const auto& a : m_.context.axioms)
      check_expr(*a.pred, {}, nullptr, a.span, "axiom-scope", &globals_);
  }

  void warn_untyped(const ScopeContext& scope, const std::vector<VarDecl>& decls) {
    for (const auto& d : decls)
      if (!find_typing(scope, d.name).set)
        warning(d.span, "untyped-variable",
                "variable " + d.name + " has no typing invariant; the INT bound is used");
  }

  void check_globals() {
    for (const auto& i : m_.invariants) check_expr(*i.pred, globals_, nullptr, i.span);
    warn_untyped(global_scope(m_), m_.globals);
    if (m_.initialisation) check_substitution(*m_.initialisation, globals_, globals_);
  }

  void check_rg(const std::vector<LabeledPredicate>& items, const Names* locals) {
    for (const auto& r : items) check_expr(*r.pred, globals_, &globals_, r.span, "rely-scope", locals);
  }

  void check_environment(const EnvironmentDef& env) {
    std::map<std::string, int> seen;
    for (const auto* list : {&env.relies, &env.guarantees})
      for (const auto& r : *list)
        if (seen[r.label]++) error(r.span, "dup-label", "label " + r.label + " is used twice");
    check_rg(env.relies, nullptr);
    check_rg(env.guarantees, nullptr);
  }

  void label(const std::string& l, const SourceSpan& span) {
    if (l.empty() || !labels_) return;
    if ((*labels_)[l]++) error(span, "dup-label", "label " + l + " is used twice");
  }

  void check_process(const ProcessDef& p) {
    std::map<std::string, int> labels;
    labels_ = &labels;
    Names locals;
    for (const auto& u : p.locals) {
      if (context_.count(u.name) || globals_.count(u.name) || locals.count(u.name))
        error(u.span, "distinct-vars", "local " + u.name + " must be distinct from other names");
      locals.insert(u.name);
    }
    for (const auto* list : {&p.relies, &p.guarantees})
      for (const auto& r : *list) label(r.label, r.span);
    for (const auto& i : p.invariants) label(i.label, i.span);
    check_rg(p.relies, &locals);
    check_rg(p.guarantees, &locals);
    Names visible = globals_;
    visible.insert(locals.begin(), locals.end());
    for (const auto& i : p.invariants) check_expr(*i.pred, visible, nullptr, i.span);
    ScopeContext scope = process_scope(m_, p);
    warn_untyped(scope, p.locals);
    if (p.body) check_block(*p.body, visible, scope);
    labels_ = nullptr;
  }

  void check_substitution(const Stmt& s, const Names& visible, const Names& writable) {
    if (s.kind == Stmt::Kind::Parallel) {
      Names written;
      for (const auto& part : s.children) {
        if (part->label) label(*part->label, part->span);
        check_substitution(*part, visible, writable);
        for (const auto& t : part->targets)
          if (!written.insert(t).second)
            error(part->span, "parallel-write-clash", "variable " + t + " is written by two parts");
      }
      return;
    }
    Names targets;
    for (const auto& t : s.targets) {
      if (!writable.count(t))
        error(s.span, "assign-target", t + " is not a variable in scope");
      if (!targets.insert(t).second)
        error(s.span, "assign-target", t + " appears twice as a target");
    }
    if (s.kind == Stmt::Kind::BecomesSuchThat)
      check_expr(*s.expr, visible, &targets, s.span);
    else
      check_expr(*s.expr, visible, nullptr, s.span);
  }

  void check_block(const Stmt& block, const Names& visible, const ScopeContext& scope) {
    for (const auto& item : block.children) check_stmt(*item, visible, scope);
  }

  void check_stmt(const Stmt& s, const Names& visible, const ScopeContext& scope) {
    if (s.label && s.kind != Stmt::Kind::Parallel) label(*s.label, s.span);
    switch (s.kind) {
      case Stmt::Kind::Assign:
      case Stmt::Kind::BecomesIn:
      case Stmt::Kind::BecomesSuchThat:
      case Stmt::Kind::Parallel:
        check_substitution(s, visible, visible);
        break;
      case Stmt::Kind::Seq:
        check_block(s, visible, scope);
        break;
      case Stmt::Kind::If:
        for (const auto& g : s.guards) check_expr(*g, visible, nullptr, s.span);
        for (const auto& c : s.children) check_block(*c, visible, scope);
        break;
      case Stmt::Kind::While: {
        check_expr(*s.expr, visible, nullptr, s.span);
        check_expr(*s.variant, visible, nullptr, s.span);
        for (const auto& i : s.invariants) {
          label(i.label, i.span);
          check_expr(*i.pred, visible, nullptr, i.span);
        }
        ScopeContext inner = scope.with_layer({ScopeLayer::Kind::Loop, {}, s.invariants}, "/loop");
        check_block(*s.body(), visible, inner);
        break;
      }
      case Stmt::Kind::Begin: {
        Names inner_names = visible;
        std::vector<std::string> locals;
        for (const auto& w : s.locals) {
          if (context_.count(w.name) || inner_names.count(w.name))
            error(w.span, "distinct-vars", "block variable " + w.name + " shadows another name");
          inner_names.insert(w.name);
          locals.push_back(w.name);
        }
        for (const auto& i : s.invariants) {
          label(i.label, i.span);
          check_expr(*i.pred, inner_names, nullptr, i.span);
        }
        ScopeContext inner =
            scope.with_layer({ScopeLayer::Kind::Block, locals, s.invariants}, "/block");
        warn_untyped(inner, s.locals);
        check_block(*s.body(), inner_names, inner);
        break;
      }
      case Stmt::Kind::Assert:
        for (const auto& c : s.conjuncts) {
          label(c.label, c.span);
          check_expr(*c.pred, visible, nullptr, c.span);
        }
        break;
      case Stmt::Kind::Stop:
        break;
    }
  }

  void check_machine(const EventBMachine& mc) {
    Names vars;
    for (const auto& v : mc.variables) {
      if (context_.count(v.name) || vars.count(v.name))
        error(v.span, "distinct-vars", "machine variable " + v.name + " clashes with another name");
      vars.insert(v.name);
    }
    for (const auto& i : mc.invariants) check_expr(*i.pred, vars, nullptr, i.span);
    std::map<std::string, int> labels;
    labels_ = &labels;
    if (mc.initialisation) check_substitution(*mc.initialisation, vars, vars);
    for (const auto& e : mc.events) {
      label(e.label, e.span);
      check_expr(*e.guard, vars, nullptr, e.span);
      std::map<std::string, int> part_labels;
      labels_ = &part_labels;
      check_substitution(*e.action, vars, vars);
      labels_ = &labels;
    }
    labels_ = nullptr;
  }

  static void collect_labels(const Stmt& s, Names& out) {
    if (s.label) out.insert(*s.label);
    for (const auto& c : s.children) collect_labels(*c, out);
  }

  void check_refmap(const RefMap& r) {
    Names sources;
    const ProcessDef* p = m_.find_process(r.unit);
    const EnvironmentDef* env = m_.find_environment(r.unit);
    if (!p && !env) {
      error(r.span, "refmap-unit", "REFMAP names no process or environment " + r.unit);
      return;
    }
    if (!m_.machine) {
      error(r.span, "no-machine", "REFMAP needs a MACHINE section");
      return;
    }
    if (p && p->body) {
      collect_labels(*p->body, sources);
    } else {
      for (const auto& g : p ? p->guarantees : env->guarantees) sources.insert(g.label);
    }
    for (const auto& [from, to] : r.entries) {
      if (!sources.count(from))
        error(r.span, "refmap-label", "REFMAP source " + from + " is not a label of " + r.unit);
      if (!m_.machine->find_event(to))
        error(r.span, "refmap-event", "REFMAP target " + to + " is not an event");
    }
  }

  const SlpModel& m_;
  std::vector<Diagnostic> out_;
  Names context_;
  Names globals_;
  std::map<std::string, int>* labels_ = nullptr;
};

}  // namespace

std::string Diagnostic::str() const {
  return span.str() + ": " + (is_error() ? "error" : "warning") + " [" + rule + "] " + message;
}

std::vector<Diagnostic> validate_model(const SlpModel& model) { return Validator(model).run(); }

bool has_errors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) { return d.is_error(); });
}

}  // namespace slp
