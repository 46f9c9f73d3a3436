// SMT-LIB v2 export of proof obligation sequents.
#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "slp/discharge.hpp"
#include "slp/render.hpp"

namespace slp {

namespace {

[[noreturn]] void unsupported(const std::string& what) {
  throw SlpError("unsupported-construct", "cannot export " + what + " to SMT-LIB");
}

// Types with unification variables.
struct Type {
  enum class K { Var, Int, Bool, Atom, Set, Pair } k = K::Var;
  std::string atom;
  std::vector<int> args;
};

class Types {
 public:
  int fresh() { return add({}); }
  int integer() { return add({Type::K::Int, "", {}}); }
  int boolean() { return add({Type::K::Bool, "", {}}); }
  int atom(const std::string& s) { return add({Type::K::Atom, s, {}}); }
  int set(int elem) { return add({Type::K::Set, "", {elem}}); }
  int pair(int a, int b) { return add({Type::K::Pair, "", {a, b}}); }

  int find(int t) {
    while (parent_[t] != t) t = parent_[t] = parent_[parent_[t]];
    return t;
  }
  const Type& at(int t) { return types_[find(t)]; }

  void unify(int a, int b, const Expr& where) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    Type ta = types_[a], tb = types_[b];
    if (ta.k == Type::K::Var) {
      parent_[a] = b;
      return;
    }
    if (tb.k == Type::K::Var) {
      parent_[b] = a;
      return;
    }
    if (ta.k != tb.k || ta.atom != tb.atom)
      throw SlpError("type-error", "ill-typed expression " + render_expr(std::make_shared<Expr>(where)));
    parent_[a] = b;
    for (std::size_t i = 0; i < ta.args.size(); ++i) unify(ta.args[i], tb.args[i], where);
  }

  /// Resolves remaining variables to Int.
  void close(int t) {
    t = find(t);
    if (types_[t].k == Type::K::Var) {
      types_[t].k = Type::K::Int;
      return;
    }
    for (int a : std::vector<int>(types_[t].args)) close(a);
  }

  std::string sort(int t) {
    const Type& ty = at(t);
    switch (ty.k) {
      case Type::K::Var:
      case Type::K::Int: return "Int";
      case Type::K::Bool: return "Bool";
      case Type::K::Atom: return ty.atom;
      case Type::K::Set: return "(Array " + sort(ty.args[0]) + " Bool)";
      case Type::K::Pair: return pair_name(t);
    }
    return "Int";
  }

  std::string mangle(int t) {
    const Type& ty = at(t);
    switch (ty.k) {
      case Type::K::Var:
      case Type::K::Int: return "Int";
      case Type::K::Bool: return "Bool";
      case Type::K::Atom: return ty.atom;
      case Type::K::Set: return "Set_" + mangle(ty.args[0]);
      case Type::K::Pair: return "P_" + mangle(ty.args[0]) + "_" + mangle(ty.args[1]);
    }
    return "Int";
  }

  std::string pair_name(int t) {
    std::string name = mangle(t);
    if (!declared_.count(name)) {
      const Type ty = at(t);
      std::string a = sort(ty.args[0]), b = sort(ty.args[1]);
      declared_.insert(name);
      decls_.push_back("(declare-datatypes ((" + name + " 0)) (((mk-" + name + " (fst-" + name + " " +
                       a + ") (snd-" + name + " " + b + ")))))");
    }
    return name;
  }

  const std::vector<std::string>& pair_decls() const { return decls_; }

 private:
  int add(Type t) {
    types_.push_back(std::move(t));
    parent_.push_back(static_cast<int>(parent_.size()));
    return parent_.back();
  }

  std::vector<Type> types_;
  std::vector<int> parent_;
  std::set<std::string> declared_;
  std::vector<std::string> decls_;
};

std::string ref_name(const Expr& e) { return e.primed ? e.name + "'" : e.name; }

std::string symbol(const std::string& name) {
  bool simple = !name.empty() && !std::isdigit(static_cast<unsigned char>(name[0]));
  for (char c : name)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.')) simple = false;
  return simple ? name : "|" + name + "|";
}

class Exporter {
 public:
  Exporter(const SlpModel& model, const ProofObligation& po, const Interpretation* interp)
      : po_(po), interp_(interp) {
    for (const auto& s : model.context.sets) carriers_.insert(s.name);
    if (interp)
      for (const auto& [name, v] : interp->constants)
        if (v.is_atom() && v.atom_name() == name) atoms_[name] = v.atom_set();
  }

  std::string run() {
    std::vector<ExprPtr> all;
    for (const auto& h : po_.hypotheses) all.push_back(h.pred);
    all.push_back(po_.goal);
    for (const auto& e : all) unify(infer(*e), types_.boolean(), *e);
    for (const auto& [n, t] : names_) types_.close(t);
    for (const auto& [e, t] : nodes_) types_.close(t);

    std::vector<std::string> asserts;
    for (const auto& h : po_.hypotheses)
      asserts.push_back((h.label.empty() ? "" : "; " + h.label + "\n") + "(assert " + pred(*h.pred) + ")");
    asserts.push_back("; goal\n(assert (not " + pred(*po_.goal) + "))");
    std::vector<std::string> bounds = bounded_mode();

    std::vector<std::string> decls;
    for (const auto& [n, t] : names_) {
      if (carriers_.count(n) || atoms_.count(n)) continue;
      decls.push_back("(declare-const " + symbol(n) + " " + types_.sort(t) + ")");
    }
    for (const auto& [f, t] : applied_) {
      const Type ty = types_.at(t);
      const Type pr = types_.at(ty.args[0]);
      std::string p = types_.sort(ty.args[0]);
      std::string dom = types_.sort(pr.args[0]), ran = types_.sort(pr.args[1]);
      std::string app = symbol("app." + f);
      decls.push_back("(declare-fun " + app + " (" + dom + ") " + ran + ")");
      decls.push_back("(assert (forall ((a " + dom + ") (b " + ran + ")) (=> (select " + symbol(f) +
                      " (mk-" + p + " a b)) (= (" + app + " a) b))))");
    }

    std::ostringstream out;
    out << "; " << po_.id << "\n";
    if (!po_.exportable) out << "; approximate: the relational form is stronger than this sequent\n";
    out << "(set-logic ALL)\n";
    for (const auto& s : used_carriers_) out << carrier_decl(s) << "\n";
    for (const auto& d : types_.pair_decls()) out << d << "\n";
    for (const auto& d : decls) out << d << "\n";
    for (const auto& b : bounds) out << b << "\n";
    for (const auto& a : asserts) out << a << "\n";
    out << "(check-sat)\n";
    return out.str();
  }

 private:
  void unify(int a, int b, const Expr& e) { types_.unify(a, b, e); }

  int name_type(const std::string& n) {
    auto it = names_.find(n);
    if (it != names_.end()) return it->second;
    return names_[n] = types_.fresh();
  }

  int infer(const Expr& e) {
    int t = infer_node(e);
    nodes_[&e] = t;
    return t;
  }

  int infer_node(const Expr& e) {
    auto arg = [&](std::size_t i) { return infer(*e.args[i]); };
    switch (e.op) {
      case Op::IntLit: return types_.integer();
      case Op::BoolLit: return types_.boolean();
      case Op::Name: {
        for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
          if (it->first == e.name && !e.primed) return it->second;
        if (!e.primed && carriers_.count(e.name)) {
          used_carriers_.insert(e.name);
          return types_.set(types_.atom(e.name));
        }
        if (!e.primed && atoms_.count(e.name)) {
          used_carriers_.insert(atoms_[e.name]);
          return types_.atom(atoms_[e.name]);
        }
        if (!e.primed && interp_) {
          if (const Value* v = interp_->lookup(e.name)) {
            int t = name_type(e.name);
            unify(t, value_type(*v), e);
            return t;
          }
        }
        return name_type(ref_name(e));
      }
      case Op::EmptySet: return types_.set(types_.fresh());
      case Op::SetLit: {
        int el = types_.fresh();
        for (std::size_t i = 0; i < e.args.size(); ++i) unify(arg(i), el, e);
        return types_.set(el);
      }
      case Op::BaseInt:
      case Op::BaseNat:
      case Op::BaseNat1: return types_.set(types_.integer());
      case Op::BaseBool: return types_.set(types_.boolean());
      case Op::Neg:
        unify(arg(0), types_.integer(), e);
        return types_.integer();
      case Op::Not:
      case Op::BoolOf:
        unify(arg(0), types_.boolean(), e);
        return types_.boolean();
      case Op::Add:
      case Op::Sub:
      case Op::Mul:
      case Op::Div:
      case Op::Mod:
        unify(arg(0), types_.integer(), e);
        unify(arg(1), types_.integer(), e);
        return types_.integer();
      case Op::Lt:
      case Op::Le:
      case Op::Gt:
      case Op::Ge:
        unify(arg(0), types_.integer(), e);
        unify(arg(1), types_.integer(), e);
        return types_.boolean();
      case Op::Eq:
      case Op::Neq:
        unify(arg(0), arg(1), e);
        return types_.boolean();
      case Op::In:
      case Op::NotIn:
        unify(types_.set(arg(0)), arg(1), e);
        return types_.boolean();
      case Op::Subset: {
        int a = arg(0);
        unify(a, arg(1), e);
        unify(a, types_.set(types_.fresh()), e);
        return types_.boolean();
      }
      case Op::And:
      case Op::Or:
      case Op::Implies:
      case Op::Iff:
        for (std::size_t i = 0; i < e.args.size(); ++i) unify(arg(i), types_.boolean(), e);
        return types_.boolean();
      case Op::Union:
      case Op::Inter:
      case Op::Diff: {
        int s = types_.set(types_.fresh());
        for (std::size_t i = 0; i < e.args.size(); ++i) unify(arg(i), s, e);
        return s;
      }
      case Op::Range:
        unify(arg(0), types_.integer(), e);
        unify(arg(1), types_.integer(), e);
        return types_.set(types_.integer());
      case Op::Maplet: return types_.pair(arg(0), arg(1));
      case Op::Apply: {
        if (e.args[0]->op != Op::Name) unsupported("application of a non-name");
        int dom = types_.fresh(), ran = types_.fresh();
        unify(arg(0), types_.set(types_.pair(dom, ran)), e);
        unify(arg(1), dom, e);
        applied_[ref_name(*e.args[0])] = nodes_[e.args[0].get()];
        return ran;
      }
      case Op::Forall:
      case Op::Exists: {
        std::vector<int> vs;
        for (const auto& b : e.bound) {
          vs.push_back(types_.fresh());
          bound_.emplace_back(b, vs.back());
        }
        unify(arg(0), types_.boolean(), e);
        bound_types_[&e] = vs;
        bound_.resize(bound_.size() - e.bound.size());
        return types_.boolean();
      }
    }
    unsupported(op_name(e.op));
  }

  int value_type(const Value& v) {
    switch (v.kind()) {
      case Value::Kind::Int: return types_.integer();
      case Value::Kind::Bool: return types_.boolean();
      case Value::Kind::Atom:
        used_carriers_.insert(v.atom_set());
        return types_.atom(v.atom_set());
      case Value::Kind::Pair: return types_.pair(value_type(v.first()), value_type(v.second()));
      case Value::Kind::Set: {
        int el = types_.fresh();
        for (const auto& x : v.elements()) types_.unify(el, value_type(x), Expr{});
        return types_.set(el);
      }
    }
    return types_.integer();
  }

  std::string carrier_decl(const std::string& s) {
    if (interp_) {
      auto it = interp_->sets.find(s);
      if (it != interp_->sets.end() && !it->second.elements().empty()) {
        std::string out = "(declare-datatypes ((" + s + " 0)) ((";
        for (const auto& a : it->second.elements()) out += "(" + symbol(s + "." + a.atom_name()) + ")";
        return out + ")))";
      }
    }
    return "(declare-sort " + s + " 0)";
  }

  std::string value(const Value& v, int t) {
    const Type ty = types_.at(t);
    switch (v.kind()) {
      case Value::Kind::Int:
        return v.as_int() < 0 ? "(- " + std::to_string(-v.as_int()) + ")" : std::to_string(v.as_int());
      case Value::Kind::Bool: return v.as_bool() ? "true" : "false";
      case Value::Kind::Atom: return symbol(v.atom_set() + "." + v.atom_name());
      case Value::Kind::Pair:
        return "(mk-" + types_.sort(t) + " " + value(v.first(), ty.args[0]) + " " +
               value(v.second(), ty.args[1]) + ")";
      case Value::Kind::Set: {
        std::string out = "((as const " + types_.sort(t) + ") false)";
        for (const auto& x : v.elements()) out = "(store " + out + " " + value(x, ty.args[0]) + " true)";
        return out;
      }
    }
    return "0";
  }

  std::vector<std::string> bounded_mode() {
    std::vector<std::string> out;
    if (!interp_) return out;
    for (const auto& [n, t] : names_) {
      if (carriers_.count(n) || atoms_.count(n)) continue;
      if (const Value* v = interp_->lookup(n)) {
        out.push_back("(assert (= " + symbol(n) + " " + value(*v, t) + "))");
        continue;
      }
      std::string base = n.substr(0, n.find('\''));
      auto vars = po_.scope.vars();
      if (std::find(vars.begin(), vars.end(), base) == vars.end()) continue;
      auto dom = variable_domain(po_.scope, base, *interp_);
      const Type ty = types_.at(t);
      std::string s = symbol(n);
      if (ty.k == Type::K::Int) {
        std::vector<std::int64_t> xs;
        for (const auto& d : dom)
          if (d.is_int()) xs.push_back(d.as_int());
        if (xs.empty()) continue;
        bool contiguous = xs.back() - xs.front() + 1 == static_cast<std::int64_t>(xs.size());
        if (contiguous) {
          out.push_back("(assert (and (<= " + value(Value::integer(xs.front()), t) + " " + s + ") (<= " + s +
                        " " + value(Value::integer(xs.back()), t) + ")))");
        } else {
          std::string o = "(assert (or";
          for (auto x : xs) o += " (= " + s + " " + value(Value::integer(x), t) + ")";
          out.push_back(o + "))");
        }
      } else if (ty.k == Type::K::Set) {
        std::set<Value> all;
        for (const auto& d : dom)
          if (d.is_set())
            for (const auto& x : d.elements()) all.insert(x);
        std::string el = types_.sort(ty.args[0]);
        std::string v = fresh_var();
        std::string o = "(assert (forall ((" + v + " " + el + ")) (=> (select " + s + " " + v + ") (or false";
        for (const auto& x : all) o += " (= " + v + " " + value(x, ty.args[0]) + ")";
        out.push_back(o + "))))");
      }
    }
    return out;
  }

  int type_of(const Expr& e) { return nodes_.at(&e); }

  std::string pred(const Expr& e) { return term(e); }

  std::string nary(const std::string& op, const Expr& e) {
    std::string out = "(" + op;
    for (const auto& a : e.args) out += " " + term(*a);
    return out + ")";
  }

  /// Division rounding toward zero and the matching remainder, as the
  /// evaluator computes them; SMT-LIB div and mod are Euclidean.
  std::string truncated(const Expr& e) {
    std::string q = "(ite (>= a! 0) (div a! b!) (- (div (- a!) b!)))";
    std::string body = e.op == Op::Div ? q : "(- a! (* b! " + q + "))";
    return "(let ((a! " + term(*e.args[0]) + ") (b! " + term(*e.args[1]) + ")) " + body + ")";
  }

  /// Characteristic predicate of `set` applied to the SMT term `x`.
  std::string member(const std::string& x, const Expr& set) {
    switch (set.op) {
      case Op::EmptySet: return "false";
      case Op::SetLit: {
        if (set.args.empty()) return "false";
        std::string out = "(or";
        for (const auto& a : set.args) out += " (= " + x + " " + term(*a) + ")";
        return out + ")";
      }
      case Op::BaseInt:
      case Op::BaseBool: return "true";
      case Op::BaseNat: return "(>= " + x + " 0)";
      case Op::BaseNat1: return "(>= " + x + " 1)";
      case Op::Range: return "(and (<= " + term(*set.args[0]) + " " + x + ") (<= " + x + " " + term(*set.args[1]) + "))";
      case Op::Union: {
        std::string out = "(or";
        for (const auto& a : set.args) out += " " + member(x, *a);
        return out + ")";
      }
      case Op::Inter: {
        std::string out = "(and";
        for (const auto& a : set.args) out += " " + member(x, *a);
        return out + ")";
      }
      case Op::Diff:
        return "(and " + member(x, *set.args[0]) + " (not " + member(x, *set.args[1]) + "))";
      case Op::Name:
        if (!set.primed && carriers_.count(set.name)) return "true";
        return "(select " + term(set) + " " + x + ")";
      default:
        return "(select " + term(set) + " " + x + ")";
    }
  }

  std::string fresh_var() { return "e!" + std::to_string(counter_++); }

  std::string set_compare(const Expr& a, const Expr& b, bool subset) {
    const Type ty = types_.at(type_of(a));
    std::string v = fresh_var();
    std::string el = types_.sort(ty.args[0]);
    return "(forall ((" + v + " " + el + ")) (" + (subset ? "=>" : "=") + " " + member(v, a) + " " +
           member(v, b) + "))";
  }

  std::string term(const Expr& e) {
    switch (e.op) {
      case Op::IntLit:
        return e.number < 0 ? "(- " + std::to_string(-e.number) + ")" : std::to_string(e.number);
      case Op::BoolLit: return e.number ? "true" : "false";
      case Op::Name: {
        if (!e.primed && atoms_.count(e.name)) {
          const Value* v = interp_->lookup(e.name);
          return symbol(v->atom_set() + "." + v->atom_name());
        }
        if (!e.primed && carriers_.count(e.name))
          return "((as const " + types_.sort(type_of(e)) + ") true)";
        for (auto it = bound_names_.rbegin(); it != bound_names_.rend(); ++it)
          if (*it == e.name && !e.primed) return symbol(e.name);
        return symbol(ref_name(e));
      }
      case Op::EmptySet: return "((as const " + types_.sort(type_of(e)) + ") false)";
      case Op::SetLit: {
        std::string out = "((as const " + types_.sort(type_of(e)) + ") false)";
        for (const auto& a : e.args) out = "(store " + out + " " + term(*a) + " true)";
        return out;
      }
      case Op::Neg: return "(- " + term(*e.args[0]) + ")";
      case Op::Not: return "(not " + term(*e.args[0]) + ")";
      case Op::BoolOf: return term(*e.args[0]);
      case Op::Add: return nary("+", e);
      case Op::Sub: return nary("-", e);
      case Op::Mul: return nary("*", e);
      case Op::Div:
      case Op::Mod: return truncated(e);
      case Op::Lt: return nary("<", e);
      case Op::Le: return nary("<=", e);
      case Op::Gt: return nary(">", e);
      case Op::Ge: return nary(">=", e);
      case Op::Eq:
      case Op::Neq: {
        std::string s;
        if (types_.at(type_of(*e.args[0])).k == Type::K::Set) s = set_compare(*e.args[0], *e.args[1], false);
        else s = nary("=", e);
        return e.op == Op::Eq ? s : "(not " + s + ")";
      }
      case Op::In: return member(term(*e.args[0]), *e.args[1]);
      case Op::NotIn: return "(not " + member(term(*e.args[0]), *e.args[1]) + ")";
      case Op::Subset: return set_compare(*e.args[0], *e.args[1], true);
      case Op::And: return nary("and", e);
      case Op::Or: return nary("or", e);
      case Op::Implies: return nary("=>", e);
      case Op::Iff: return nary("=", e);
      case Op::Union:
      case Op::Inter:
      case Op::Diff:
      case Op::Range:
      case Op::BaseInt:
      case Op::BaseNat:
      case Op::BaseNat1:
      case Op::BaseBool:
        unsupported(std::string("set-valued ") + op_name(e.op) + " outside membership or comparison");
      case Op::Maplet:
        return "(mk-" + types_.sort(type_of(e)) + " " + term(*e.args[0]) + " " + term(*e.args[1]) + ")";
      case Op::Apply:
        return "(" + symbol("app." + ref_name(*e.args[0])) + " " + term(*e.args[1]) + ")";
      case Op::Forall:
      case Op::Exists: {
        const auto& vs = bound_types_.at(&e);
        std::string out = e.op == Op::Forall ? "(forall (" : "(exists (";
        for (std::size_t i = 0; i < e.bound.size(); ++i) {
          out += (i ? " (" : "(") + symbol(e.bound[i]) + " " + types_.sort(vs[i]) + ")";
          bound_names_.push_back(e.bound[i]);
        }
        out += ") " + term(*e.args[0]) + ")";
        bound_names_.resize(bound_names_.size() - e.bound.size());
        return out;
      }
    }
    unsupported(op_name(e.op));
  }

  const ProofObligation& po_;
  const Interpretation* interp_;
  Types types_;
  std::set<std::string> carriers_;
  std::set<std::string> used_carriers_;
  std::map<std::string, std::string> atoms_;  // atom name -> carrier set
  std::map<std::string, int> names_;
  std::map<const Expr*, int> nodes_;
  std::map<const Expr*, std::vector<int>> bound_types_;
  std::map<std::string, int> applied_;
  std::vector<std::pair<std::string, int>> bound_;
  std::vector<std::string> bound_names_;
  int counter_ = 0;
};

}  // namespace

std::string export_solver(const SlpModel& model, const ProofObligation& po, const Interpretation* interp) {
  if (!po.goal) throw SlpError("unsupported-construct", po.id + " has no sequent form");
  return Exporter(model, po, interp).run();
}

}  // namespace slp
