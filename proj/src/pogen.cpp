#include "slp/pogen.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "slp/render.hpp"
#include "slp/semantics.hpp"

namespace slp {

namespace {

bool is_true(const ExprPtr& e) { return !e || (e->op == Op::BoolLit && e->number == 1); }

ExprPtr truth() { return ex::boolean(true); }

ExprPtr and_(const ExprPtr& a, const ExprPtr& b) {
  if (is_true(a)) return b ? b : truth();
  if (is_true(b)) return a;
  return ex::binary(Op::And, a, b);
}

ExprPtr conj_of(const std::vector<LabeledPredicate>& items) {
  std::vector<ExprPtr> parts;
  for (const auto& i : items) parts.push_back(i.pred);
  return ex::conj(parts);
}

ExprPtr conj_of(const std::vector<InvariantDef>& items) {
  std::vector<ExprPtr> parts;
  for (const auto& i : items)
    if (!i.is_theorem()) parts.push_back(i.pred);
  return ex::conj(parts);
}

std::set<std::string> as_set(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }

/// x' -> x'' and x -> x' for every name in `vars`.
ExprPtr shift(ExprPtr e, const std::vector<std::string>& vars) {
  for (const auto& v : vars) e = substitute(e, v, true, ex::name(v + "'", true));
  for (const auto& v : vars) e = substitute(e, v, false, ex::name(v, true));
  return e;
}

/// x' -> x'' only.
ExprPtr reprime(ExprPtr e, const std::vector<std::string>& vars) {
  for (const auto& v : vars) e = substitute(e, v, true, ex::name(v + "'", true));
  return e;
}

/// x' -> x for every name in `vars`.
ExprPtr unprime(ExprPtr e, const std::vector<std::string>& vars) {
  for (const auto& v : vars) e = substitute(e, v, true, ex::name(v));
  return e;
}

/// Before-after predicate of a simple substitution.
ExprPtr before_after(const Stmt& s) {
  switch (s.kind) {
    case Stmt::Kind::Assign:
      return ex::binary(Op::Eq, ex::name(s.targets[0], true), s.expr);
    case Stmt::Kind::BecomesIn:
      return ex::binary(Op::In, ex::name(s.targets[0], true), s.expr);
    case Stmt::Kind::BecomesSuchThat:
      return s.expr;
    case Stmt::Kind::Parallel: {
      std::vector<ExprPtr> parts;
      for (const auto& p : s.children) parts.push_back(before_after(*p));
      return ex::conj(parts);
    }
    default:
      return truth();
  }
}

/// Feasibility of a simple substitution.
ExprPtr feasibility(const Stmt& s) {
  switch (s.kind) {
    case Stmt::Kind::BecomesIn:
      return ex::binary(Op::Neq, s.expr, ex::nary(Op::EmptySet, {}));
    case Stmt::Kind::BecomesSuchThat: {
      ExprPtr body = s.expr;
      std::vector<std::string> bound;
      for (const auto& t : s.targets) {
        bound.push_back(t + "_post");
        body = substitute(body, t, true, ex::name(t + "_post"));
      }
      return ex::quant(Op::Exists, bound, body);
    }
    case Stmt::Kind::Parallel: {
      ExprPtr acc = truth();
      for (const auto& p : s.children) acc = and_(acc, feasibility(*p));
      return acc;
    }
    default:
      return truth();
  }
}

std::map<std::string, ExprPtr> assignments(const Stmt& s) {
  std::map<std::string, ExprPtr> out;
  if (s.kind == Stmt::Kind::Assign) {
    out[s.targets[0]] = s.expr;
  } else if (s.kind == Stmt::Kind::Parallel) {
    for (const auto& p : s.children) {
      if (p->kind != Stmt::Kind::Assign) return {};
      out[p->targets[0]] = p->expr;
    }
  }
  return out;
}

/// Goal `p` (in before-after form) as seen after action `a`: assigned
/// names are substituted, other written names stay primed, unwritten names
/// lose their prime. Sets `needs_ba` when primed names remain.
ExprPtr post_view(ExprPtr p, const Stmt& a, const std::vector<std::string>& vars, bool& needs_ba) {
  auto written = write_set(a);
  auto assigned = assignments(a);
  needs_ba = false;
  for (const auto& v : vars) {
    if (!written.count(v)) {
      p = substitute(p, v, true, ex::name(v));
    } else if (auto it = assigned.find(v); it != assigned.end()) {
      p = substitute(p, v, true, it->second);
    } else {
      needs_ba = true;
    }
  }
  return p;
}

std::string action_label(const Stmt& s, const StmtPath& path) {
  if (!s.label && s.kind == Stmt::Kind::Parallel && !s.children.empty() && s.children[0]->label)
    return *s.children[0]->label;
  return stmt_label(s, path);
}

ExprPtr after_item(const Stmt& s) {
  if (s.kind == Stmt::Kind::Assert) return conj_of(s.conjuncts);
  if (s.kind == Stmt::Kind::While) return and_(ex::negate(s.expr), conj_of(s.invariants));
  return truth();
}

ExprPtr branch_context(const Stmt& ifs, std::size_t j, const ExprPtr& outer) {
  ExprPtr g = j < ifs.guards.size() ? ifs.guards[j] : truth();
  for (std::size_t k = 0; k < j && k < ifs.guards.size(); ++k) g = and_(g, ex::negate(ifs.guards[k]));
  return and_(outer, g);
}

/// Context of the head of child block `j` of `s`, given the context `a` in
/// force before `s`.
ExprPtr child_context(const Stmt& s, std::size_t j, const ExprPtr& a) {
  switch (s.kind) {
    case Stmt::Kind::If:
      return branch_context(s, j, a);
    case Stmt::Kind::While:
      return s.expr;
    default:
      return a;
  }
}

class Generator {
 public:
  Generator(const SlpModel& m, RefMode mode) : m_(m), mode_(mode) {}

  std::vector<ProofObligation> run() {
    axiom_obligations();
    invariant_theorems();
    for (const auto& env : m_.environments) rely_obligations(env.label, env.relies);
    for (const auto& p : m_.processes) process(p);
    compatibility();
    for (const auto& r : m_.refmaps) {
      const ProcessDef* p = m_.find_process(r.unit);
      if (p && p->body) continue;
      std::vector<std::string> events;
      for (const auto& [from, to] : r.entries)
        if (std::find(events.begin(), events.end(), to) == events.end()) events.push_back(to);
      out_.push_back(ref_grt(r.unit, events));
    }
    return std::move(out_);
  }

  ProofObligation ref_grt(const std::string& unit, const std::vector<std::string>& events) {
    if (!m_.machine) throw SlpError("no-machine", "REF_GRT needs a MACHINE section");
    const auto* env = m_.find_environment(unit);
    const auto* proc = m_.find_process(unit);
    if (!env && !proc) throw SlpError("refmap-unit", "no environment or process named " + unit);
    const auto& guars = env ? env->guarantees : proc->guarantees;
    ProofObligation po = base(unit + "." + m_.machine->name + ".REF_GRT", Family::REF_GRT, unit,
                              global_scope(m_), env ? env->span : proc->span);
    po.source = conj_of(guars);
    po.events = events;
    po.hypotheses.push_back({"G", po.source, {}});
    auto gvars = po.scope.vars();
    po.hypotheses.push_back({"I'", prime_names(conj_of(po.scope.invariants()), as_set(gvars)), {}});
    std::vector<std::string> mvars;
    for (const auto& v : m_.machine->variables) mvars.push_back(v.name);
    ExprPtr goal;
    for (const auto& name : events) {
      const Event* e = m_.machine->find_event(name);
      if (!e) throw SlpError("refmap-event", "no machine event named " + name);
      ExprPtr ba = and_(e->guard, before_after(*e->action));
      auto written = write_set(*e->action);
      for (const auto& v : mvars)
        if (!written.count(v)) ba = and_(ba, ex::binary(Op::Eq, ex::name(v, true), ex::name(v)));
      if (!goal) goal = ba;
      else goal = ex::binary(mode_ == RefMode::Inter ? Op::And : Op::Or, goal, ba);
    }
    po.goal = goal ? goal : truth();
    po.relational_form = std::string("{(s,s') : [G] | s : [I]} <: ") +
                         (mode_ == RefMode::Inter ? "[e1]_R /\\ ... /\\ [en]_R"
                                                  : "[e1]_R \\/ ... \\/ [en]_R");
    return po;
  }

  ExprPtr context_at(const ProcessDef& p, const StmtPath& path) const {
    if (!p.body) throw SlpError("no-such-position", "process " + p.label + " has no body");
    const Stmt* block = p.body.get();
    ExprPtr head = truth();
    for (std::size_t d = 0; d < path.size(); ++d) {
      auto i = static_cast<std::size_t>(path[d]);
      if (i >= block->children.size())
        throw SlpError("no-such-position", "no statement at " + p.label + "." + path_str(path));
      ExprPtr a = i == 0 ? head : after_item(*block->children[i - 1]);
      if (d + 1 == path.size()) return a;
      const Stmt& item = *block->children[i];
      auto j = static_cast<std::size_t>(path[++d]);
      if (j >= item.children.size())
        throw SlpError("no-such-position", "no statement at " + p.label + "." + path_str(path));
      head = child_context(item, j, a);
      block = item.children[j].get();
    }
    return head;
  }

 private:
  ProofObligation base(std::string id, Family f, const std::string& unit, ScopeContext scope,
                       const SourceSpan& origin) {
    ProofObligation po;
    po.id = std::move(id);
    po.family = f;
    po.unit = unit;
    po.scope = std::move(scope);
    po.origin = origin;
    add_context_hyps(po);
    return po;
  }

  static void add_context_hyps(ProofObligation& po) {
    for (const auto& a : po.scope.axioms)
      if (!a.is_theorem()) po.hypotheses.push_back({a.label, a.pred, a.span});
    for (const auto& i : po.scope.invariants()) po.hypotheses.push_back({i.label, i.pred, i.span});
    po.context_hyps = po.hypotheses.size();
  }

  void axiom_obligations() {
    ProofObligation po;
    po.id = m_.name + ".axioms.AXM_SAT";
    po.family = Family::AXM_SAT;
    po.unit = m_.name;
    po.scope = global_scope(m_);
    po.origin = m_.span;
    po.goal = conj_of(m_.context.axioms);
    po.relational_form = "the CHECK interpretation satisfies every axiom";
    out_.push_back(po);

    std::vector<LabeledPredicate> prior;
    for (const auto& a : m_.context.axioms) {
      if (a.is_theorem()) {
        ProofObligation t;
        t.id = m_.name + "." + a.label + ".THM";
        t.family = Family::THM;
        t.unit = m_.name;
        t.scope = global_scope(m_);
        t.scope.layers.front().vars.clear();
        t.scope.layers.front().invariants.clear();
        t.scope.key += "/axioms";
        t.origin = a.span;
        t.hypotheses = prior;
        t.context_hyps = prior.size();
        t.goal = a.pred;
        t.target = a.pred;
        t.relational_form = "axioms |- theorem";
        out_.push_back(t);
      }
      prior.push_back({a.label, a.pred, a.span});
    }
  }

  void theorem_list(const std::string& unit, const ScopeContext& scope,
                    const std::vector<InvariantDef>& invs, std::vector<LabeledPredicate> prior) {
    for (const auto& i : invs) {
      if (i.is_theorem()) {
        ProofObligation t;
        t.id = unit + "." + i.label + ".THM";
        t.family = Family::THM;
        t.unit = unit;
        t.scope = scope;
        t.origin = i.span;
        t.hypotheses = prior;
        t.context_hyps = prior.size();
        t.goal = i.pred;
        t.target = i.pred;
        t.relational_form = "[hypotheses] <: [theorem] over the typed states";
        out_.push_back(t);
      }
      prior.push_back({i.label, i.pred, i.span});
    }
  }

  std::vector<LabeledPredicate> axioms_as_hyps() const {
    std::vector<LabeledPredicate> out;
    for (const auto& a : m_.context.axioms) out.push_back({a.label, a.pred, a.span});
    return out;
  }

  void invariant_theorems() {
    auto scope = global_scope(m_);
    theorem_list(m_.name, scope, m_.invariants, axioms_as_hyps());
  }

  void rely_obligations(const std::string& unit, const std::vector<LabeledPredicate>& relies) {
    ScopeContext scope = global_scope(m_);
    auto vars = scope.vars();
    ExprPtr inv_primed = prime_names(conj_of(scope.invariants()), as_set(vars));
    for (const auto& r : relies) {
      ProofObligation fis = base(unit + "." + r.label + ".FIS_RELY", Family::FIS_RELY, unit, scope, r.span);
      fis.target = r.pred;
      fis.hypotheses.push_back({r.label, r.pred, r.span});
      fis.goal = inv_primed;
      fis.relational_form = "[I] <| [R] <: [I] * [I]";
      out_.push_back(fis);

      ProofObligation refl =
          base(unit + "." + r.label + ".CLO_RELY_REFL", Family::CLO_RELY_REFL, unit, scope, r.span);
      refl.target = r.pred;
      refl.goal = unprime(r.pred, vars);
      refl.relational_form = "id([I]) <: [R]";
      out_.push_back(refl);

      ProofObligation trans =
          base(unit + "." + r.label + ".CLO_RELY_TRANS", Family::CLO_RELY_TRANS, unit, scope, r.span);
      trans.target = r.pred;
      trans.hypotheses.push_back({r.label, r.pred, r.span});
      trans.hypotheses.push_back({"I'", inv_primed, {}});
      trans.hypotheses.push_back({r.label + "'", shift(r.pred, vars), r.span});
      trans.goal = reprime(r.pred, vars);
      trans.relational_form = "[R] ; [R] <: [R]";
      out_.push_back(trans);
    }
  }

  void process(const ProcessDef& p) {
    rely_obligations(p.label, p.relies);
    ScopeContext scope = process_scope(m_, p);
    auto prior = axioms_as_hyps();
    for (const auto& i : m_.invariants)
      if (!i.is_theorem()) prior.push_back({i.label, i.pred, i.span});
    theorem_list(p.label, scope, p.invariants, prior);
    if (p.body) block(p, *p.body, scope, truth(), {});
  }

  void block(const ProcessDef& p, const Stmt& b, const ScopeContext& scope, const ExprPtr& head,
             const StmtPath& path) {
    const auto& items = b.children;
    for (std::size_t i = 0; i < items.size(); ++i) {
      const StmtPtr& item = items[i];
      StmtPath here = path;
      here.push_back(static_cast<int>(i));
      ExprPtr a = i == 0 ? head : after_item(*items[i - 1]);
      std::string label = action_label(*item, here);
      StmtPtr prev = i == 0 ? nullptr : items[i - 1];
      action(p, item, scope, a, label);
      switch (item->kind) {
        case Stmt::Kind::Assert:
          assertion(p, item, scope, a, prev, conj_of(item->conjuncts), label + ".ASN");
          break;
        case Stmt::Kind::While: {
          assertion(p, item, scope, a, prev, conj_of(item->invariants), label + ".ASN");
          variant(p, item, scope, label);
          StmtPath inner = here;
          inner.push_back(0);
          block(p, *item->body(), enter(scope, *item), item->expr, inner);
          break;
        }
        case Stmt::Kind::If:
          for (std::size_t j = 0; j < item->children.size(); ++j) {
            StmtPath inner = here;
            inner.push_back(static_cast<int>(j));
            block(p, *item->children[j], scope, branch_context(*item, j, a), inner);
          }
          break;
        case Stmt::Kind::Begin: {
          StmtPath inner = here;
          inner.push_back(0);
          block(p, *item->body(), enter(scope, *item), a, inner);
          break;
        }
        case Stmt::Kind::Seq: {
          StmtPath inner = here;
          block(p, *item, scope, a, inner);
          break;
        }
        default:
          break;
      }
    }
  }

  ProofObligation action_base(const std::string& id, Family f, const ProcessDef& p,
                              const StmtPtr& s, const ScopeContext& scope, const ExprPtr& a) {
    ProofObligation po = base(id, f, p.label, scope, s->span);
    po.stmt = s;
    po.context = a;
    if (!is_true(a)) po.hypotheses.push_back({"A", a, {}});
    return po;
  }

  void action(const ProcessDef& p, const StmtPtr& s, const ScopeContext& scope, const ExprPtr& a,
              const std::string& label) {
    const std::string prefix = p.label + "." + label;
    auto vars = scope.vars();
    bool simple = s->is_substitution();

    ProofObligation wd = action_base(prefix + ".WD", Family::WD, p, s, scope, a);
    wd.goal = simple ? feasibility(*s) : truth();
    wd.exportable = false;
    wd.relational_form = "([I] /\\ [A]) <| [[a]] /= {}";
    out_.push_back(wd);

    std::vector<ExprPtr> inv_conjuncts;
    for (const auto& i : scope.invariants())
      for (const auto& c : conjuncts(i.pred)) inv_conjuncts.push_back(c);
    if (inv_conjuncts.empty()) inv_conjuncts.push_back(truth());
    for (std::size_t n = 0; n < inv_conjuncts.size(); ++n) {
      ProofObligation inv =
          action_base(prefix + ".INV." + std::to_string(n + 1), Family::INV, p, s, scope, a);
      inv.target = inv_conjuncts[n];
      finish_post(inv, *s, prime_names(inv_conjuncts[n], as_set(vars)), vars);
      inv.relational_form = "[[a]][[I] /\\ [A]] <: [I]";
      out_.push_back(inv);
    }

    if (!p.guarantees.empty()) {
      ProofObligation grt = action_base(prefix + ".GRT", Family::GRT, p, s, scope, a);
      grt.target = conj_of(p.guarantees);
      finish_post(grt, *s, grt.target, vars);
      grt.relational_form = "globals(([I] /\\ [A]) <| [[a]]) <: [G]";
      out_.push_back(grt);
    }
  }

  // Goal `primed_goal` after action `s`, adding BA(s) when needed.
  static void finish_post(ProofObligation& po, const Stmt& s, const ExprPtr& primed_goal,
                          const std::vector<std::string>& vars) {
    if (s.is_substitution()) {
      bool needs_ba = false;
      po.goal = post_view(primed_goal, s, vars, needs_ba);
      if (needs_ba) po.hypotheses.push_back({"BA", before_after(s), s.span});
    } else {
      auto written = write_set(s);
      ExprPtr g = primed_goal;
      for (const auto& v : vars)
        if (!written.count(v)) g = substitute(g, v, true, ex::name(v));
      po.goal = g;
      po.exportable = false;
    }
  }

  void assertion(const ProcessDef& p, const StmtPtr& s, const ScopeContext& scope,
                 const ExprPtr& head, const StmtPtr& prev, const ExprPtr& target,
                 const std::string& suffix) {
    ProofObligation po = base(p.label + "." + suffix, Family::ASN, p.label, scope, s->span);
    po.stmt = s;
    po.prev = prev;
    po.target = target;
    po.context = head;
    auto vars = scope.vars();
    auto globals = as_set(scope.globals());
    if (!p.relies.empty()) po.rely = conj_of(p.relies);
    if (!prev) po.asn_case = AsnCase::BlockHead;
    else if (prev->kind == Stmt::Kind::Assert) po.asn_case = AsnCase::AfterAssert;
    else po.asn_case = AsnCase::AfterAction;

    ExprPtr inv = conj_of(scope.invariants());
    std::vector<std::string> locals;
    for (const auto& v : vars)
      if (!globals.count(v)) locals.push_back(v);
    auto add_rely = [&](int level) {
      // R over levels (level-1, level), identity on locals.
      ExprPtr r = po.rely;
      ExprPtr i = prime_names(inv, as_set(vars));
      if (level == 2) {
        r = shift(r, vars);
        i = reprime(i, vars);
      }
      for (const auto& u : locals) {
        ExprPtr from = level == 2 ? ex::name(u, true) : ex::name(u);
        ExprPtr to = level == 2 ? ex::name(u + "'", true) : ex::name(u, true);
        r = and_(r, ex::binary(Op::Eq, to, from));
      }
      po.hypotheses.push_back({"R", r, {}});
      po.hypotheses.push_back({"I'", i, {}});
    };

    switch (po.asn_case) {
      case AsnCase::AfterAssert:
        for (const auto& c : prev->conjuncts) po.hypotheses.push_back(c);
        if (po.rely) {
          add_rely(1);
          po.goal = prime_names(target, as_set(vars));
        } else {
          po.goal = target;
        }
        po.relational_form = "([P] <| [R])[[I]] <: [A]";
        break;
      case AsnCase::BlockHead:
        if (!is_true(head)) po.hypotheses.push_back({"A", head, {}});
        if (po.rely) {
          add_rely(1);
          po.goal = prime_names(target, as_set(vars));
        } else {
          po.goal = target;
        }
        po.relational_form = "[R][[I] /\\ [A0]] <: [A]";
        break;
      case AsnCase::AfterAction:
        if (po.rely) {
          if (prev->is_substitution()) po.hypotheses.push_back({"BA", before_after(*prev), prev->span});
          auto written = write_set(*prev);
          for (const auto& v : vars)
            if (!written.count(v))
              po.hypotheses.push_back({"", ex::binary(Op::Eq, ex::name(v, true), ex::name(v)), {}});
          add_rely(2);
          po.goal = reprime(prime_names(target, as_set(vars)), vars);
          po.exportable = prev->is_substitution();
        } else {
          finish_post(po, *prev, prime_names(target, as_set(vars)), vars);
        }
        po.relational_form = "([R] o [[a]])[[I]] <: [A]";
        break;
    }
    out_.push_back(po);
  }

  void variant(const ProcessDef& p, const StmtPtr& s, const ScopeContext& scope,
               const std::string& label) {
    ProofObligation po = base(p.label + "." + label + ".VAR", Family::VAR, p.label, scope, s->span);
    po.stmt = s;
    po.target = s->variant;
    for (const auto& i : s->invariants)
      if (!i.is_theorem()) po.hypotheses.push_back({i.label, i.pred, i.span});
    po.context_hyps = po.hypotheses.size();
    po.hypotheses.push_back({"c", s->expr, s->span});
    auto written = write_set(*s->body());
    ExprPtr after = s->variant;
    for (const auto& v : written) after = substitute(after, v, false, ex::name(v, true));
    po.goal = and_(ex::binary(Op::In, s->variant, ex::nary(Op::BaseNat, {})),
                   ex::binary(Op::Lt, after, s->variant));
    po.exportable = false;
    po.relational_form = "V : [I] /\\ [c] --> NAT and V decreases along [[b]]";
    out_.push_back(po);
  }

  void compatibility() {
    ScopeContext scope = global_scope(m_);
    auto vars = scope.vars();
    ExprPtr inv_primed = prime_names(conj_of(scope.invariants()), as_set(vars));
    auto emit = [&](const ProcessDef& a, const std::string& b, const std::vector<LabeledPredicate>& relies) {
      ProofObligation po = base(a.label + "." + b + ".CMP", Family::CMP, a.label, scope, a.span);
      po.source = conj_of(a.guarantees);
      po.target = relies.empty() ? nullptr : conj_of(relies);
      po.hypotheses.push_back({"G", po.source, {}});
      po.hypotheses.push_back({"I'", inv_primed, {}});
      po.goal = po.target ? po.target : truth();
      po.relational_form = "[I] <| [G_A] <: [R_B]";
      out_.push_back(po);
    };
    for (const auto& a : m_.processes) {
      for (const auto& b : m_.processes)
        if (&a != &b) emit(a, b.label, b.relies);
      for (const auto& e : m_.environments) emit(a, e.label, e.relies);
    }
  }

  const SlpModel& m_;
  RefMode mode_;
  std::vector<ProofObligation> out_;
};

}  // namespace

const char* family_name(Family f) {
  switch (f) {
    case Family::WD: return "WD";
    case Family::INV: return "INV";
    case Family::GRT: return "GRT";
    case Family::ASN: return "ASN";
    case Family::FIS_RELY: return "FIS_RELY";
    case Family::CLO_RELY_REFL: return "CLO_RELY_REFL";
    case Family::CLO_RELY_TRANS: return "CLO_RELY_TRANS";
    case Family::VAR: return "VAR";
    case Family::CMP: return "CMP";
    case Family::THM: return "THM";
    case Family::AXM_SAT: return "AXM_SAT";
    case Family::REF_GRT: return "REF_GRT";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  for (int i = 0; i <= static_cast<int>(Family::REF_GRT); ++i)
    if (name == family_name(static_cast<Family>(i))) return static_cast<Family>(i);
  throw SlpError("unknown-family", "unknown PO family " + name);
}

std::vector<ProofObligation> generate(const SlpModel& model, const Interpretation&) {
  return Generator(model, RefMode::Inter).run();
}

std::vector<ProofObligation> generate(const SlpModel& model, const Interpretation&, RefMode mode) {
  return Generator(model, mode).run();
}

ExprPtr assertion_context(const SlpModel& model, const std::string& process, const StmtPath& path) {
  const ProcessDef* p = model.find_process(process);
  if (!p) throw SlpError("no-such-position", "no process named " + process);
  return Generator(model, RefMode::Inter).context_at(*p, path);
}

ProofObligation refinement_guarantee(const SlpModel& model, const std::string& unit,
                                     const std::vector<std::string>& events,
                                     const Interpretation&, RefMode mode) {
  return Generator(model, mode).ref_grt(unit, events);
}

ProofObligation refinement_guarantee(const SlpModel& model, const std::string& unit,
                                     const std::vector<std::string>& events,
                                     const Interpretation& interp) {
  return refinement_guarantee(model, unit, events, interp, RefMode::Inter);
}

std::string display_sequent(const ProofObligation& po) {
  std::ostringstream out;
  bool first = true;
  if (po.context_hyps > 0) {
    out << "HYP";
    first = false;
  }
  for (std::size_t i = po.context_hyps; i < po.hypotheses.size(); ++i) {
    out << (first ? "" : ", ") << render_expr(po.hypotheses[i].pred);
    first = false;
  }
  out << (first ? "|- " : " |- ") << render_expr(po.goal);
  return out.str();
}

std::string render_sequent(const ProofObligation& po) {
  std::ostringstream out;
  for (const auto& h : po.hypotheses)
    out << "  " << (h.label.empty() ? "" : h.label + ": ") << render_expr(h.pred) << "\n";
  out << "  |- " << render_expr(po.goal) << "\n";
  return out.str();
}

bool glob_match(const std::string& pattern, const std::string& text) {
  std::size_t p = 0, t = 0, star = std::string::npos, mark = 0;
  while (t < text.size()) {
    if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
      ++p;
      ++t;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = t;
    } else if (star != std::string::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

}  // namespace slp
