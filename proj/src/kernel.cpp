#include "slp/kernel.hpp"

#include <algorithm>
#include <cstdlib>
#include <iterator>
#include <set>

namespace slp {

namespace {

Value interval(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) return Value::empty_set();
  auto n = static_cast<std::uint64_t>(hi - lo) + 1;
  if (n > state_cap())
    throw SlpError("state-space-exceeded",
                   "interval " + std::to_string(lo) + ".." + std::to_string(hi) + " is too large");
  std::vector<Value> elems;
  elems.reserve(static_cast<std::size_t>(n));
  for (std::int64_t v = lo; v <= hi; ++v) elems.push_back(Value::integer(v));
  return Value::sorted_set(std::move(elems));
}

[[noreturn]] void type_error(const Expr& e, const std::string& what) {
  throw SlpError("type-error", std::string(op_name(e.op)) + ": " + what, e.span);
}

std::int64_t int_of(const Value& v, const Expr& e) {
  if (!v.is_int()) type_error(e, "integer expected, got " + v.str());
  return v.as_int();
}

const Value& set_of(const Value& v, const Expr& e) {
  if (!v.is_set()) type_error(e, "set expected, got " + v.str());
  return v;
}

std::int64_t checked(bool overflowed, std::int64_t r, const Expr& e) {
  if (overflowed) throw SlpError("overflow", "integer overflow", e.span);
  return r;
}

Value eval(const Expr& e, Env& env);

bool truth(const Expr& e, Env& env) {
  Value v = eval(e, env);
  if (!v.is_bool()) type_error(e, "predicate expected, got " + v.str());
  return v.as_bool();
}

Value combine(Op op, const Value& a, const Value& b) {
  const auto& x = a.elements();
  const auto& y = b.elements();
  std::vector<Value> out;
  switch (op) {
    case Op::Union:
      std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
      break;
    case Op::Inter:
      std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
      break;
    default:
      std::set_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
      break;
  }
  return Value::sorted_set(std::move(out));
}

bool quantify(const Expr& q, std::size_t idx, Env& env, std::vector<std::string>& earlier) {
  bool universal = q.op == Op::Forall;
  if (idx == q.bound.size()) return truth(*q.args[0], env);
  const auto& var = q.bound[idx];
  auto domain = quantifier_domain(q, var, earlier, env);
  earlier.push_back(var);
  bool result = universal;
  for (const auto& d : domain) {
    env.push_bound(var, d);
    bool r;
    try {
      r = quantify(q, idx + 1, env, earlier);
    } catch (...) {
      env.pop_bound();
      earlier.pop_back();
      throw;
    }
    env.pop_bound();
    if (r != universal) {
      result = r;
      break;
    }
  }
  earlier.pop_back();
  return result;
}

Value eval(const Expr& e, Env& env) {
  const auto& a = e.args;
  switch (e.op) {
    case Op::IntLit:
      return Value::integer(e.number);
    case Op::BoolLit:
      return Value::boolean(e.number != 0);
    case Op::Name: {
      const Value* v = env.lookup(e.name, e.primed);
      if (!v) throw SlpError("unbound-name", "unbound name " + e.name + (e.primed ? "'" : ""), e.span);
      return *v;
    }
    case Op::EmptySet:
      return Value::empty_set();
    case Op::SetLit: {
      std::vector<Value> elems;
      elems.reserve(a.size());
      for (const auto& x : a) elems.push_back(eval(*x, env));
      return Value::set(std::move(elems));
    }
    case Op::BaseInt:
      return env.interp().int_domain();
    case Op::BaseNat:
      return env.interp().nat_domain();
    case Op::BaseNat1:
      return env.interp().nat1_domain();
    case Op::BaseBool:
      return Value::sorted_set({Value::boolean(false), Value::boolean(true)});
    case Op::Neg: {
      std::int64_t r;
      bool o = __builtin_sub_overflow(std::int64_t{0}, int_of(eval(*a[0], env), *a[0]), &r);
      return Value::integer(checked(o, r, e));
    }
    case Op::Not:
      return Value::boolean(!truth(*a[0], env));
    case Op::BoolOf:
      return Value::boolean(truth(*a[0], env));
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div:
    case Op::Mod: {
      std::int64_t x = int_of(eval(*a[0], env), *a[0]);
      std::int64_t y = int_of(eval(*a[1], env), *a[1]);
      std::int64_t r = 0;
      bool o = false;
      if (e.op == Op::Add) o = __builtin_add_overflow(x, y, &r);
      else if (e.op == Op::Sub) o = __builtin_sub_overflow(x, y, &r);
      else if (e.op == Op::Mul) o = __builtin_mul_overflow(x, y, &r);
      else {
        if (y == 0) throw SlpError("div-by-zero", "division by zero", e.span);
        if (x == INT64_MIN && y == -1) o = true;
        else r = e.op == Op::Div ? x / y : x % y;
      }
      return Value::integer(checked(o, r, e));
    }
    case Op::Eq:
      return Value::boolean(eval(*a[0], env) == eval(*a[1], env));
    case Op::Neq:
      return Value::boolean(eval(*a[0], env) != eval(*a[1], env));
    case Op::Lt:
    case Op::Le:
    case Op::Gt:
    case Op::Ge: {
      std::int64_t x = int_of(eval(*a[0], env), *a[0]);
      std::int64_t y = int_of(eval(*a[1], env), *a[1]);
      bool r = e.op == Op::Lt ? x < y : e.op == Op::Le ? x <= y : e.op == Op::Gt ? x > y : x >= y;
      return Value::boolean(r);
    }
    case Op::In:
      return Value::boolean(eval_member(eval(*a[0], env), *a[1], env));
    case Op::NotIn:
      return Value::boolean(!eval_member(eval(*a[0], env), *a[1], env));
    case Op::Subset: {
      Value x = set_of(eval(*a[0], env), *a[0]);
      switch (a[1]->op) {
        case Op::BaseInt:
        case Op::BaseNat:
        case Op::BaseNat1:
        case Op::BaseBool:
        case Op::Range:
          for (const auto& v : x.elements())
            if (!eval_member(v, *a[1], env)) return Value::boolean(false);
          return Value::boolean(true);
        default: {
          Value y = set_of(eval(*a[1], env), *a[1]);
          const auto& xe = x.elements();
          const auto& ye = y.elements();
          return Value::boolean(std::includes(ye.begin(), ye.end(), xe.begin(), xe.end()));
        }
      }
    }
    case Op::And:
      return Value::boolean(truth(*a[0], env) && truth(*a[1], env));
    case Op::Or:
      return Value::boolean(truth(*a[0], env) || truth(*a[1], env));
    case Op::Implies:
      return Value::boolean(!truth(*a[0], env) || truth(*a[1], env));
    case Op::Iff:
      return Value::boolean(truth(*a[0], env) == truth(*a[1], env));
    case Op::Union:
    case Op::Inter:
    case Op::Diff: {
      Value x = set_of(eval(*a[0], env), *a[0]);
      Value y = set_of(eval(*a[1], env), *a[1]);
      return combine(e.op, x, y);
    }
    case Op::Range:
      return interval(int_of(eval(*a[0], env), *a[0]), int_of(eval(*a[1], env), *a[1]));
    case Op::Maplet:
      return Value::pair(eval(*a[0], env), eval(*a[1], env));
    case Op::Apply: {
      Value f = set_of(eval(*a[0], env), *a[0]);
      Value x = eval(*a[1], env);
      const Value* r = f.apply(x);
      if (!r)
        throw SlpError("partial-application", "function applied outside its graph at " + x.str(),
                       e.span);
      return *r;
    }
    case Op::Forall:
    case Op::Exists: {
      std::vector<std::string> earlier;
      return Value::boolean(quantify(e, 0, env, earlier));
    }
  }
  type_error(e, "unknown operator");
}

bool references_any(const Expr& e, const std::set<std::string>& names) {
  for (const auto& n : free_names(e))
    if (names.count(n)) return true;
  return false;
}

}  // namespace

std::size_t state_cap() {
  if (const char* s = std::getenv("SLP_STATE_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && v > 0) return static_cast<std::size_t>(v);
  }
  return 10'000'000;
}

const Value* Interpretation::lookup(const std::string& name) const {
  if (auto it = constants.find(name); it != constants.end()) return &it->second;
  if (auto it = sets.find(name); it != sets.end()) return &it->second;
  return nullptr;
}

Value Interpretation::int_domain() const { return interval(lo, hi); }
Value Interpretation::nat_domain() const { return interval(std::max<std::int64_t>(0, lo), hi); }
Value Interpretation::nat1_domain() const { return interval(std::max<std::int64_t>(1, lo), hi); }

Interpretation build_interpretation(const SlpModel& model) {
  Interpretation interp;
  std::set<std::string> sets;
  std::set<std::string> constants;
  for (const auto& s : model.context.sets) sets.insert(s.name);
  for (const auto& c : model.context.constants) constants.insert(c.name);
  if (model.check) {
    const auto& check = *model.check;
    if (check.int_bound) {
      interp.lo = check.int_bound->first;
      interp.hi = check.int_bound->second;
    }
    for (const auto& s : check.sets) {
      if (!sets.count(s.name))
        throw SlpError("undeclared-constant", "CHECK binds undeclared set " + s.name, s.span);
      std::vector<Value> atoms;
      for (std::size_t i = 0; i < s.atoms.size(); ++i) {
        Value atom = Value::atom(s.name, s.atoms[i], static_cast<std::int64_t>(i));
        if (interp.constants.count(s.atoms[i]) || sets.count(s.atoms[i]) || constants.count(s.atoms[i]))
          throw SlpError("duplicate-atom", "atom " + s.atoms[i] + " is already bound", s.span);
        interp.constants.emplace(s.atoms[i], atom);
        atoms.push_back(atom);
      }
      interp.sets[s.name] = Value::set(std::move(atoms));
    }
    for (const auto& k : check.constants) {
      if (!constants.count(k.name))
        throw SlpError("undeclared-constant", "CHECK binds undeclared constant " + k.name, k.span);
      Env env(interp);
      Value v = eval_expression(*k.value, env);
      interp.constants[k.name] = std::move(v);
    }
  }
  for (const auto& s : model.context.sets)
    if (!interp.sets.count(s.name))
      throw SlpError("missing-interpretation", "carrier set " + s.name + " has no CHECK binding",
                     s.span);
  for (const auto& c : model.context.constants)
    if (!interp.constants.count(c.name))
      throw SlpError("missing-interpretation", "constant " + c.name + " has no CHECK binding",
                     c.span);
  return interp;
}

void Env::bind(const std::vector<std::string>& names, const State& values, int level) {
  Frame f;
  f.names = &names;
  f.values = &values;
  f.level = level;
  frames_.push_back(f);
}

void Env::bind(const std::map<std::string, Value>& store, int level) {
  Frame f;
  f.store = &store;
  f.level = level;
  frames_.push_back(f);
}

void Env::push_bound(const std::string& name, Value v) { bound_.emplace_back(name, std::move(v)); }

const Value* Env::lookup(const std::string& name, bool primed) const {
  int level = 0;
  std::size_t base_len = name.size();
  if (primed) {
    level = 1;
    while (base_len > 0 && name[base_len - 1] == '\'') {
      --base_len;
      ++level;
    }
  } else {
    for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
      if (it->first == name) return &it->second;
  }
  std::string_view base(name.data(), base_len);
  for (auto it = frames_.rbegin(); it != frames_.rend(); ++it) {
    if (it->level != level) continue;
    if (it->store) {
      auto found = it->store->find(std::string(base));
      if (found != it->store->end()) return &found->second;
      continue;
    }
    const auto& names = *it->names;
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == base) return &(*it->values)[i];
  }
  if (primed) return nullptr;
  return interp_->lookup(name);
}

Value eval_expression(const Expr& e, Env& env) { return eval(e, env); }

bool eval_predicate(const Expr& p, Env& env) { return truth(p, env); }

Value eval_set(const Expr& e, Env& env) { return set_of(eval(e, env), e); }

bool eval_member(const Value& x, const Expr& set, Env& env) {
  const auto& a = set.args;
  switch (set.op) {
    case Op::BaseInt:
      return x.is_int();
    case Op::BaseNat:
      return x.is_int() && x.as_int() >= 0;
    case Op::BaseNat1:
      return x.is_int() && x.as_int() >= 1;
    case Op::BaseBool:
      return x.is_bool();
    case Op::Range: {
      if (!x.is_int()) return false;
      std::int64_t lo = int_of(eval(*a[0], env), *a[0]);
      std::int64_t hi = int_of(eval(*a[1], env), *a[1]);
      return lo <= x.as_int() && x.as_int() <= hi;
    }
    case Op::Union:
      return eval_member(x, *a[0], env) || eval_member(x, *a[1], env);
    case Op::Inter:
      return eval_member(x, *a[0], env) && eval_member(x, *a[1], env);
    case Op::Diff:
      return eval_member(x, *a[0], env) && !eval_member(x, *a[1], env);
    case Op::EmptySet:
      return false;
    default:
      return set_of(eval(set, env), set).contains(x);
  }
}

Value powerset(const Value& set) {
  const auto& elems = set.elements();
  if (elems.size() >= 63 || (std::uint64_t{1} << elems.size()) > state_cap())
    throw SlpError("state-space-exceeded", "powerset of " + std::to_string(elems.size()) +
                                               " elements is too large");
  std::vector<Value> subsets;
  std::uint64_t n = std::uint64_t{1} << elems.size();
  subsets.reserve(static_cast<std::size_t>(n));
  for (std::uint64_t mask = 0; mask < n; ++mask) {
    std::vector<Value> sub;
    for (std::size_t i = 0; i < elems.size(); ++i)
      if (mask & (std::uint64_t{1} << i)) sub.push_back(elems[i]);
    subsets.push_back(Value::sorted_set(std::move(sub)));
  }
  return Value::set(std::move(subsets));
}

std::vector<Value> quantifier_domain(const Expr& quant, const std::string& var,
                                     const std::vector<std::string>& earlier, Env& env) {
  const Expr& body = *quant.args[0];
  const ExprPtr& head = body.op == Op::Implies ? body.args[0] : quant.args[0];
  std::set<std::string> pending;
  for (const auto& b : quant.bound)
    if (std::find(earlier.begin(), earlier.end(), b) == earlier.end()) pending.insert(b);
  for (const auto& c : conjuncts(head)) {
    if ((c->op != Op::In && c->op != Op::Subset) || c->args[0]->op != Op::Name) continue;
    const auto& lhs = *c->args[0];
    if (lhs.primed || lhs.name != var || references_any(*c->args[1], pending)) continue;
    Value s = eval_set(*c->args[1], env);
    if (c->op == Op::Subset) s = powerset(s);
    return s.elements();
  }
  return env.interp().int_domain().elements();
}

std::optional<Binding> falsifying_binding(const Expr& p, Env& env) {
  if (p.op != Op::Forall) {
    if (eval_predicate(p, env)) return std::nullopt;
    return Binding{};
  }
  std::vector<std::string> earlier;
  Binding current;
  std::optional<Binding> found;
  auto search = [&](auto&& self, std::size_t idx) -> void {
    if (found) return;
    if (idx == p.bound.size()) {
      if (auto inner = falsifying_binding(*p.args[0], env)) {
        Binding b = current;
        b.insert(b.end(), inner->begin(), inner->end());
        found = std::move(b);
      }
      return;
    }
    const auto& var = p.bound[idx];
    auto domain = quantifier_domain(p, var, earlier, env);
    earlier.push_back(var);
    for (const auto& d : domain) {
      env.push_bound(var, d);
      current.emplace_back(var, d);
      try {
        self(self, idx + 1);
      } catch (...) {
        env.pop_bound();
        throw;
      }
      current.pop_back();
      env.pop_bound();
      if (found) break;
    }
    earlier.pop_back();
  };
  search(search, 0);
  return found;
}

std::vector<AxiomViolation> check_interpretation(const Context& context,
                                                 const Interpretation& interp) {
  std::vector<AxiomViolation> out;
  for (const auto& ax : context.axioms) {
    if (ax.is_theorem()) continue;
    Env env(interp);
    try {
      if (auto w = falsifying_binding(*ax.pred, env))
        out.push_back({ax.label, std::move(*w), "axiom is false"});
    } catch (const SlpError& err) {
      out.push_back({ax.label, {}, err.code() + ": " + err.what()});
    }
  }
  return out;
}

}  // namespace slp
