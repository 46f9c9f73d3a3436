#include "slp/discharge.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>
#include <unordered_map>

#include <json.hpp>

namespace slp {

struct Checker::Image {
  std::vector<std::vector<long>> succ;  // per Σ index: -1 is ✓, >= 0 a Σ index, <= -2 outside
  std::vector<State> outside;

  const State& target(const std::vector<State>& sigma, long id) const {
    return id >= 0 ? sigma[static_cast<std::size_t>(id)] : outside[static_cast<std::size_t>(-id - 2)];
  }
};

namespace {

bool holds(const ExprPtr& p, Env& env) { return !p || eval_predicate(*p, env); }

struct Violation {
  Binding witness;
  std::string reason;
};

void append(Binding& b, const std::vector<std::string>& vars, const State& s, const std::string& suffix) {
  for (std::size_t i = 0; i < vars.size(); ++i) b.emplace_back(vars[i] + suffix, s[i]);
}

Binding witness_of(const std::vector<std::string>& vars, std::initializer_list<const State*> states) {
  Binding b;
  std::string suffix;
  for (const State* s : states) {
    if (s) append(b, vars, *s, suffix);
    suffix += "'";
  }
  return b;
}

class Budget {
 public:
  void spend() {
    if (++used_ > state_cap())
      throw SlpError("state-space-exceeded", "pair enumeration exceeds the state cap");
  }

 private:
  std::size_t used_ = 0;
};

/// Calls f(tau) for every tau with rel(from, tau), `from` being bound at
/// level 0 in `env`. Top-level conjuncts `x' = E` and `x' : S` narrow the
/// candidate values; tau ranges over Σ or, when `typed`, the typed product.
/// f returns false to stop.
template <class F>
bool for_each_partner(const ExprPtr& rel, const StateSpace& sp, Env& env, bool typed, Budget& budget,
                      F&& f) {
  const auto& vars = sp.vars();
  std::vector<std::vector<Value>> cand = sp.domains();
  if (rel) {
    for (const auto& c : conjuncts(rel)) {
      if (c->op != Op::Eq && c->op != Op::In) continue;
      const Expr* lhs = c->args[0].get();
      const Expr* rhs = c->args[1].get();
      if (c->op == Op::Eq && !(lhs->op == Op::Name && lhs->primed)) std::swap(lhs, rhs);
      if (lhs->op != Op::Name || !lhs->primed || mentions_primed(*rhs)) continue;
      auto it = std::find(vars.begin(), vars.end(), lhs->name);
      if (it == vars.end()) continue;
      auto& dom = cand[static_cast<std::size_t>(it - vars.begin())];
      try {
        std::vector<Value> kept;
        if (c->op == Op::Eq) {
          Value v = eval_expression(*rhs, env);
          for (const auto& d : dom)
            if (d == v) kept.push_back(d);
        } else {
          for (const auto& d : dom)
            if (eval_member(d, *rhs, env)) kept.push_back(d);
        }
        dom = std::move(kept);
      } catch (const SlpError&) {
      }
    }
  }
  for (const auto& d : cand)
    if (d.empty()) return true;
  std::vector<std::size_t> pos(vars.size(), 0);
  State tau(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) tau[i] = cand[i][0];
  for (;;) {
    budget.spend();
    if (typed || sp.index_of(tau) >= 0) {
      FrameGuard g(env, vars, tau, 1);
      if (holds(rel, env) && !f(static_cast<const State&>(tau))) return false;
    }
    std::size_t i = vars.size();
    for (;;) {
      if (i == 0) return true;
      --i;
      if (++pos[i] < cand[i].size()) {
        tau[i] = cand[i][pos[i]];
        break;
      }
      pos[i] = 0;
      tau[i] = cand[i][0];
    }
  }
}

std::vector<State> project_all(const std::vector<State>& states, const std::vector<std::size_t>& idx) {
  std::vector<State> out;
  out.reserve(states.size());
  for (const auto& s : states) {
    State p;
    for (auto i : idx) p.push_back(s[i]);
    out.push_back(std::move(p));
  }
  return out;
}

State project(const State& s, const std::vector<std::size_t>& idx) {
  State p;
  for (auto i : idx) p.push_back(s[i]);
  return p;
}

/// First (σ, τ, υ) with R(σ, τ), τ ∈ Σ, R(τ, υ) and not R(σ, υ); υ ranges
/// over the typed product. Images are computed once per state of Σ.
std::optional<Violation> transitivity(const ExprPtr& rel, const StateSpace& sp, Budget& budget) {
  const auto& vars = sp.vars();
  std::vector<State> typed;
  std::unordered_map<State, std::uint32_t, StateHash> typed_index;
  sp.for_each_typed([&](const State& s) {
    budget.spend();
    typed_index.emplace(s, static_cast<std::uint32_t>(typed.size()));
    typed.push_back(s);
  });
  const auto& states = sp.states();
  std::vector<std::vector<std::uint32_t>> img(states.size());
  Env env(sp.interp());
  for (std::size_t i = 0; i < states.size(); ++i) {
    FrameGuard g(env, vars, states[i]);
    for_each_partner(rel, sp, env, true, budget, [&](const State& t) {
      img[i].push_back(typed_index.at(t));
      return true;
    });
  }
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& row = img[i];
    for (auto t : row) {
      long k = sp.index_of(typed[t]);
      if (k < 0) continue;
      for (auto u : img[static_cast<std::size_t>(k)])
        if (!std::binary_search(row.begin(), row.end(), u))
          return Violation{witness_of(vars, {&states[i], &typed[t], &typed[u]}), "rely not transitive"};
    }
  }
  return std::nullopt;
}

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Discharged: return "discharged";
    case Verdict::Violated: return "violated";
    case Verdict::Skipped: return "skipped";
  }
  return "?";
}

Checker::Checker(const SlpModel& model, const Interpretation& interp, Options options)
    : model_(&model), interp_(&interp), options_(options), sem_(interp, options) {}

std::shared_ptr<const Checker::Image> Checker::image(const Stmt& s, const ScopeContext& scope,
                                                     const ExprPtr& context, bool raw) const {
  std::ostringstream key;
  key << scope.key << '#' << static_cast<const void*>(&s) << '#'
      << static_cast<const void*>(context.get()) << '#' << raw;
  std::promise<std::shared_ptr<const Image>> promise;
  std::shared_future<std::shared_ptr<const Image>> pending;
  {
    std::lock_guard lock(mu_);
    auto it = images_.find(key.str());
    if (it != images_.end()) pending = it->second;
    else images_.emplace(key.str(), promise.get_future().share());
  }
  if (pending.valid()) return pending.get();
  try {
    auto sp = sem_.space(scope);
    auto img = std::make_shared<Image>();
    Env env(*interp_);
    img->succ.resize(sp->states().size());
    for (std::size_t i = 0; i < sp->states().size(); ++i) {
      const State& sigma = sp->states()[i];
      if (context) {
        FrameGuard g(env, sp->vars(), sigma);
        if (!eval_predicate(*context, env)) continue;
      }
      Targets ts = raw ? sem_.raw_successors(s, scope, sigma) : sem_.successors(s, scope, sigma);
      auto& row = img->succ[i];
      for (auto& t : ts) {
        if (!t) {
          row.push_back(-1);
          continue;
        }
        long k = sp->index_of(*t);
        if (k < 0) {
          img->outside.push_back(std::move(*t));
          k = -static_cast<long>(img->outside.size()) - 1;
        }
        row.push_back(k);
      }
    }
    std::shared_ptr<const Image> done = img;
    promise.set_value(done);
    return done;
  } catch (...) {
    promise.set_exception(std::current_exception());
    throw;
  }
}

CheckResult Checker::check(const ProofObligation& po) const {
  auto t0 = std::chrono::steady_clock::now();
  CheckResult r;
  try {
    r = decide(po);
  } catch (const SlpError& e) {
    r = CheckResult{};
    r.verdict = e.code() == "state-space-exceeded" ? Verdict::Skipped : Verdict::Violated;
    r.reason = e.code() + ": " + e.what();
  }
  r.id = po.id;
  r.family = po.family;
  r.ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
             .count();
  return r;
}

CheckResult Checker::decide(const ProofObligation& po) const {
  CheckResult res;
  auto fail = [&](Binding w, std::string reason) {
    res.verdict = Verdict::Violated;
    res.witness = std::move(w);
    res.reason = std::move(reason);
    return res;
  };
  Env env(*interp_);
  Budget budget;

  switch (po.family) {
    case Family::AXM_SAT: {
      auto v = check_interpretation(model_->context, *interp_);
      if (!v.empty()) return fail(v.front().witness, v.front().label + ": " + v.front().reason);
      return res;
    }

    case Family::THM: {
      auto sp = sem_.space(po.scope);
      std::optional<Violation> bad;
      sp->for_each_typed([&](const State& s) {
        if (bad) return;
        FrameGuard g(env, sp->vars(), s);
        for (const auto& h : po.hypotheses)
          if (!eval_predicate(*h.pred, env)) return;
        if (!eval_predicate(*po.goal, env)) bad = Violation{witness_of(sp->vars(), {&s}), "theorem false"};
      });
      if (bad) return fail(bad->witness, bad->reason);
      return res;
    }

    case Family::WD: {
      auto sp = sem_.space(po.scope);
      auto img = image(*po.stmt, po.scope, po.context, true);
      const State* first = nullptr;
      bool any = false;
      for (std::size_t i = 0; i < sp->states().size(); ++i) {
        const State& sigma = sp->states()[i];
        if (po.context) {
          FrameGuard g(env, sp->vars(), sigma);
          if (!eval_predicate(*po.context, env)) continue;
        }
        if (img->succ[i].empty()) {
          if (options_.strict_feasibility)
            return fail(witness_of(sp->vars(), {&sigma}), "action not applicable");
          if (!first) first = &sigma;
        } else {
          any = true;
        }
      }
      if (!any && first) return fail(witness_of(sp->vars(), {first}), "action applicable nowhere");
      return res;
    }

    case Family::INV:
    case Family::GRT: {
      auto sp = sem_.space(po.scope);
      auto img = image(*po.stmt, po.scope, po.context, false);
      const auto& states = sp->states();
      for (std::size_t i = 0; i < states.size(); ++i) {
        for (long id : img->succ[i]) {
          if (id == -1) continue;
          const State& tau = img->target(states, id);
          bool ok;
          if (po.family == Family::INV) {
            FrameGuard g(env, sp->vars(), tau);
            ok = eval_predicate(*po.target, env);
          } else {
            FrameGuard g0(env, sp->vars(), states[i]);
            FrameGuard g1(env, sp->vars(), tau, 1);
            ok = eval_predicate(*po.target, env);
          }
          if (!ok)
            return fail(witness_of(sp->vars(), {&states[i], &tau}),
                        po.family == Family::INV ? "invariant broken" : "guarantee broken");
        }
      }
      return res;
    }

    case Family::ASN: {
      auto sp = sem_.space(po.scope);
      const auto& vars = sp->vars();
      auto globals = po.scope.globals();
      ExprPtr rely = po.rely;
      if (rely) {
        std::vector<ExprPtr> parts{rely};
        for (const auto& v : vars)
          if (std::find(globals.begin(), globals.end(), v) == globals.end())
            parts.push_back(ex::binary(Op::Eq, ex::name(v, true), ex::name(v)));
        rely = ex::conj(parts);
      }
      // target after interference from `from`; a violation fills `bad`
      std::optional<Violation> bad;
      auto after_rely = [&](const State* s0, const State* s1, const State& from) {
        if (!rely) {
          FrameGuard g(env, vars, from);
          if (!eval_predicate(*po.target, env))
            bad = Violation{witness_of(vars, {s0, s1}), "assertion false"};
          return;
        }
        FrameGuard g(env, vars, from);
        for_each_partner(rely, *sp, env, false, budget, [&](const State& ups) {
          FrameGuard g2(env, vars, ups);
          if (eval_predicate(*po.target, env)) return true;
          bad = Violation{witness_of(vars, {s0, s1, &ups}), "assertion false after interference"};
          if (!s1) bad->witness = witness_of(vars, {s0, &ups});
          return false;
        });
      };
      const auto& states = sp->states();
      if (po.asn_case == AsnCase::AfterAction) {
        bool raw = po.prev->kind == Stmt::Kind::While;
        auto img = image(*po.prev, po.scope, nullptr, raw);
        for (std::size_t i = 0; i < states.size() && !bad; ++i)
          for (long id : img->succ[i]) {
            if (id == -1) continue;
            after_rely(&states[i], &img->target(states, id), img->target(states, id));
            if (bad) break;
          }
      } else {
        ExprPtr pre = po.asn_case == AsnCase::AfterAssert ? nullptr : po.context;
        std::vector<ExprPtr> parts;
        if (po.asn_case == AsnCase::AfterAssert)
          for (const auto& c : po.prev->conjuncts) parts.push_back(c.pred);
        else if (pre)
          parts.push_back(pre);
        ExprPtr p = ex::conj(parts);
        for (const auto& sigma : states) {
          {
            FrameGuard g(env, vars, sigma);
            if (!eval_predicate(*p, env)) continue;
          }
          after_rely(&sigma, nullptr, sigma);
          if (bad) break;
        }
      }
      if (bad) return fail(bad->witness, bad->reason);
      return res;
    }

    case Family::VAR: {
      auto t = sem_.trm_holds(*po.stmt, po.scope);
      if (t.holds) return res;
      auto inner = sem_.space(enter(po.scope, *po.stmt));
      Binding w;
      if (t.pre) append(w, inner->vars(), *t.pre, "");
      if (t.post) append(w, inner->vars(), *t.post, "'");
      return fail(w, t.reason);
    }

    case Family::FIS_RELY:
    case Family::CLO_RELY_REFL:
    case Family::CLO_RELY_TRANS:
    case Family::CMP: {
      if (po.family == Family::CMP && !po.target) return res;
      auto sp = sem_.space(po.scope);
      const auto& vars = sp->vars();
      std::optional<Violation> bad;
      for (const auto& sigma : sp->states()) {
        if (po.family == Family::CLO_RELY_TRANS) break;
        FrameGuard g(env, vars, sigma);
        switch (po.family) {
          case Family::CLO_RELY_REFL: {
            FrameGuard g1(env, vars, sigma, 1);
            if (!eval_predicate(*po.target, env)) bad = Violation{witness_of(vars, {&sigma}), "rely not reflexive"};
            break;
          }
          case Family::FIS_RELY:
            for_each_partner(po.target, *sp, env, true, budget, [&](const State& tau) {
              if (sp->index_of(tau) >= 0) return true;
              bad = Violation{witness_of(vars, {&sigma, &tau}), "rely leaves the invariant"};
              return false;
            });
            break;
          case Family::CMP:
            for_each_partner(po.source, *sp, env, false, budget, [&](const State& tau) {
              if (eval_predicate(*po.target, env)) return true;
              bad = Violation{witness_of(vars, {&sigma, &tau}), "guarantee step not tolerated by rely"};
              return false;
            });
            break;
          default:
            break;
        }
        if (bad) break;
      }
      if (po.family == Family::CLO_RELY_TRANS) bad = transitivity(po.target, *sp, budget);
      if (bad) return fail(bad->witness, bad->reason);
      return res;
    }

    case Family::REF_GRT: {
      if (!model_->machine) throw SlpError("no-machine", "REF_GRT needs a MACHINE section");
      auto sp = sem_.space(po.scope);
      auto mscope = machine_scope(*model_);
      auto msp = sem_.space(mscope);
      const auto& vars = sp->vars();
      const auto& mvars = msp->vars();
      std::vector<std::size_t> uidx, midx;
      for (std::size_t i = 0; i < vars.size(); ++i) {
        auto it = std::find(mvars.begin(), mvars.end(), vars[i]);
        if (it == mvars.end()) continue;
        uidx.push_back(i);
        midx.push_back(static_cast<std::size_t>(it - mvars.begin()));
      }
      std::map<State, std::vector<std::size_t>> ext;
      auto proj = project_all(msp->states(), midx);
      for (std::size_t k = 0; k < proj.size(); ++k) ext[proj[k]].push_back(k);
      std::vector<const Event*> events;
      for (const auto& name : po.events) {
        const Event* e = model_->machine->find_event(name);
        if (!e) throw SlpError("refmap-event", "no machine event named " + name);
        events.push_back(e);
      }
      auto refined_by = [&](const Event& e, const State& sigma, const State& tau) {
        auto it = ext.find(project(sigma, uidx));
        if (it == ext.end()) return false;
        State want = project(tau, uidx);
        for (auto k : it->second)
          for (const auto& t : sem_.event_successors(e, mscope, msp->states()[k]))
            if (t && project(*t, midx) == want) return true;
        return false;
      };
      std::optional<Violation> bad;
      for (const auto& sigma : sp->states()) {
        FrameGuard g(env, vars, sigma);
        for_each_partner(po.source, *sp, env, false, budget, [&](const State& tau) {
          bool ok = options_.ref_mode == RefMode::Inter;
          for (const Event* e : events) {
            bool r = refined_by(*e, sigma, tau);
            if (options_.ref_mode == RefMode::Inter ? !r : r) {
              ok = r;
              break;
            }
          }
          if (events.empty()) ok = options_.ref_mode == RefMode::Inter;
          if (ok) return true;
          bad = Violation{witness_of(vars, {&sigma, &tau}), "guarantee step refines no matching event"};
          return false;
        });
        if (bad) break;
      }
      if (bad) return fail(bad->witness, bad->reason);
      return res;
    }
  }
  return res;
}

CheckResult check(const ProofObligation& po, const SlpModel& model, const Interpretation& interp,
                  Options options) {
  return Checker(model, interp, options).check(po);
}

Report check_obligations(const SlpModel& model, const Interpretation& interp,
                         const std::vector<ProofObligation>& pos, Options options, unsigned workers) {
  Checker checker(model, interp, options);
  Report rep;
  rep.model = model.name;
  rep.results.resize(pos.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < pos.size();) rep.results[i] = checker.check(pos[i]);
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(pos.size())));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  std::stable_sort(rep.results.begin(), rep.results.end(),
                   [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
  for (const auto& r : rep.results) {
    if (r.verdict == Verdict::Discharged) ++rep.summary.discharged;
    else if (r.verdict == Verdict::Violated) ++rep.summary.violated;
    else ++rep.summary.skipped;
  }
  return rep;
}

Report check_all(const SlpModel& model, const Interpretation& interp, const std::string& filter,
                 Options options, unsigned workers) {
  std::vector<ProofObligation> pos;
  for (auto& po : generate(model, interp, options.ref_mode))
    if (glob_match(filter, po.id)) pos.push_back(std::move(po));
  return check_obligations(model, interp, pos, options, workers);
}

std::string report_json(const Report& report, bool timings) {
  nlohmann::ordered_json j;
  j["model"] = report.model;
  j["pos"] = nlohmann::ordered_json::array();
  for (const auto& r : report.results) {
    nlohmann::ordered_json p;
    p["id"] = r.id;
    p["family"] = family_name(r.family);
    p["verdict"] = verdict_name(r.verdict);
    if (r.witness) {
      nlohmann::ordered_json w = nlohmann::ordered_json::object();
      for (const auto& [name, v] : *r.witness) w[name] = v.str();
      p["witness"] = w;
    } else {
      p["witness"] = nullptr;
    }
    p["ms"] = timings ? r.ms : 0;
    j["pos"].push_back(p);
  }
  j["summary"] = {{"discharged", report.summary.discharged},
                  {"violated", report.summary.violated},
                  {"skipped", report.summary.skipped},
                  {"total", report.results.size()}};
  return j.dump(2) + "\n";
}

std::string report_table(const Report& report) {
  std::size_t width = 2;
  for (const auto& r : report.results) width = std::max(width, r.id.size());
  std::ostringstream out;
  out << "model " << report.model << "\n";
  for (const auto& r : report.results) {
    out << r.id << std::string(width - r.id.size() + 2, ' ') << verdict_name(r.verdict);
    if (r.verdict != Verdict::Discharged && !r.reason.empty()) out << "  (" << r.reason << ")";
    out << "\n";
    if (r.witness && !r.witness->empty()) {
      out << "    witness:";
      for (const auto& [name, v] : *r.witness) out << " " << name << "=" << v.str();
      out << "\n";
    }
  }
  out << "discharged: " << report.summary.discharged << "  violated: " << report.summary.violated
      << "  skipped: " << report.summary.skipped << "\n";
  return out.str();
}

}  // namespace slp
