#include "slp/traces.hpp"

#include <algorithm>

#include "slp/discharge.hpp"
#include "slp/pogen.hpp"
#include "slp/scope.hpp"

namespace slp {

namespace {

std::vector<State> starting_states(const Semantics& sem, const Stmt* init, const ScopeContext& scope,
                                   const Store& fixed) {
  auto states = sem.initial_states(init, scope);
  if (fixed.empty()) return states;
  auto vars = scope.vars();
  std::vector<State> out;
  for (auto& s : states) {
    bool keep = true;
    for (std::size_t i = 0; i < vars.size() && keep; ++i) {
      auto it = fixed.find(vars[i]);
      if (it != fixed.end() && !(it->second == s[i])) keep = false;
    }
    if (keep) out.push_back(std::move(s));
  }
  return out;
}

TraceSet machine_from(const Semantics& sem, const EventBMachine& m, const ScopeContext& scope,
                      const std::vector<State>& starts, const std::set<std::string>& events,
                      std::size_t depth) {
  // States and traces are interned; traces form a trie of (parent, event) nodes.
  std::vector<State> states;
  std::map<State, std::size_t> state_ids;
  auto state_id = [&](const State& s) {
    auto [it, fresh] = state_ids.emplace(s, states.size());
    if (fresh) states.push_back(s);
    return it->second;
  };
  std::vector<std::pair<std::size_t, std::size_t>> nodes{{0, 0}};  // (parent, event index + 1)
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> children;
  auto extend = [&](std::size_t node, std::size_t event) {
    auto [it, fresh] = children.emplace(std::make_pair(node, event), nodes.size());
    if (fresh) nodes.emplace_back(node, event + 1);
    return it->second;
  };
  std::vector<bool> recorded;
  for (const auto& e : m.events) recorded.push_back(events.count(e.label) > 0);

  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> steps;  // per state: (event, target)
  std::vector<bool> expanded;
  auto steps_of = [&](std::size_t id) -> const std::vector<std::pair<std::size_t, std::size_t>>& {
    if (id >= steps.size()) {
      steps.resize(id + 1);
      expanded.resize(id + 1, false);
    }
    if (!expanded[id]) {
      std::vector<std::pair<std::size_t, std::size_t>> row;
      State s = states[id];
      for (std::size_t k = 0; k < m.events.size(); ++k)
        for (const auto& t : sem.event_successors(m.events[k], scope, s))
          if (t) row.emplace_back(k, state_id(*t));
      if (id >= steps.size()) steps.resize(id + 1);
      if (id >= expanded.size()) expanded.resize(id + 1, false);
      steps[id] = std::move(row);
      expanded[id] = true;
    }
    return steps[id];
  };

  std::set<std::size_t> reached{0};
  std::set<std::pair<std::size_t, std::size_t>> frontier;  // (state, trace node)
  for (const auto& s : starts) frontier.emplace(state_id(s), 0);
  for (std::size_t d = 0; d < depth && !frontier.empty(); ++d) {
    std::set<std::pair<std::size_t, std::size_t>> next;
    for (const auto& [s, node] : frontier) {
      auto row = steps_of(s);
      for (const auto& [k, t] : row) {
        std::size_t n = recorded[k] ? extend(node, k) : node;
        reached.insert(n);
        next.emplace(t, n);
      }
      if (next.size() > state_cap())
        throw SlpError("state-space-exceeded", "machine trace frontier exceeds the state cap");
    }
    frontier = std::move(next);
  }

  TraceSet out;
  for (std::size_t n : reached) {
    Trace t;
    for (std::size_t at = n; at != 0; at = nodes[at].first) t.push_back({m.events[nodes[at].second - 1].label});
    std::reverse(t.begin(), t.end());
    out.insert(std::move(t));
  }
  return out;
}

TraceSet process_from(const Stmt& body, const ScopeContext& scope, const State& start,
                      const Interpretation& interp, const TraceOptions& options) {
  TraceSet out{Trace{}};
  Executor ex(scope, interp);
  ex.set_tracing(
      [&](const Trace& t) {
        if (t.size() > options.depth) return false;
        out.insert(t);
        return true;
      },
      options.serialize_parallel);
  Store store;
  auto vars = scope.vars();
  for (std::size_t i = 0; i < vars.size(); ++i) store.emplace(vars[i], start[i]);
  Trace trace;
  ex.run(body, store, trace, [](const std::optional<Store>&, Trace&) {});
  return out;
}

const EventBMachine& machine_of(const SlpModel& model) {
  if (!model.machine) throw SlpError("no-machine", "model " + model.name + " has no MACHINE section");
  return *model.machine;
}

const ProcessDef& process_of(const SlpModel& model, const std::string& name) {
  const ProcessDef* p = model.find_process(name);
  if (!p) throw SlpError("no-such-process", "no process named " + name);
  return *p;
}

bool shorter(const Trace& a, const Trace& b) {
  return a.size() != b.size() ? a.size() < b.size() : a < b;
}

}  // namespace

TraceSet machine_traces(const SlpModel& model, const std::set<std::string>& events,
                        const Interpretation& interp, const TraceOptions& options) {
  const auto& m = machine_of(model);
  Semantics sem(interp);
  auto scope = machine_scope(model);
  auto starts = starting_states(sem, m.initialisation.get(), scope, options.fixed);
  return machine_from(sem, m, scope, starts, events, options.depth);
}

TraceSet process_traces(const SlpModel& model, const std::string& process,
                        const Interpretation& interp, const TraceOptions& options) {
  const auto& p = process_of(model, process);
  if (!p.body) return {Trace{}};
  Semantics sem(interp);
  auto scope = process_scope(model, p);
  TraceSet out{Trace{}};
  for (const auto& s : starting_states(sem, model.initialisation.get(), scope, options.fixed))
    out.merge(process_from(*p.body, scope, s, interp, options));
  return out;
}

Trace map_trace(const Trace& t, const AlphabetMap& f) {
  Trace out;
  for (const auto& el : t) {
    TraceElement m;
    for (const auto& l : el) {
      auto it = f.find(l);
      if (it == f.end()) throw SlpError("unmapped-label", "label " + l + " has no REFMAP entry");
      m.push_back(it->second);
    }
    out.push_back(std::move(m));
  }
  return out;
}

AlphabetMap refmap_of(const SlpModel& model, const std::string& unit) {
  const RefMap* r = model.find_refmap(unit);
  if (!r) throw SlpError("no-refmap", "no REFMAP for " + unit);
  AlphabetMap f;
  for (const auto& [from, to] : r->entries) f[from] = to;
  return f;
}

InclusionResult check_inclusion(const SlpModel& model, const std::string& process,
                                const AlphabetMap& f, const Interpretation& interp,
                                const TraceOptions& options,
                                std::optional<std::set<std::string>> events) {
  const auto& m = machine_of(model);
  const auto& p = process_of(model, process);
  std::set<std::string> e;
  if (events) e = *events;
  else
    for (const auto& [from, to] : f) e.insert(to);
  InclusionResult res;
  if (!p.body) return res;

  Semantics sem(interp);
  auto pscope = process_scope(model, p);
  auto mscope = machine_scope(model);
  auto pvars = pscope.vars();
  auto mvars = mscope.vars();
  std::vector<std::string> shared;
  std::set_intersection(pvars.begin(), pvars.end(), mvars.begin(), mvars.end(),
                        std::back_inserter(shared));
  auto key_of = [&](const std::vector<std::string>& vars, const State& s) {
    State k;
    for (const auto& v : shared)
      k.push_back(s[static_cast<std::size_t>(std::find(vars.begin(), vars.end(), v) - vars.begin())]);
    return k;
  };

  std::map<State, std::vector<State>> pgroups, mgroups;
  for (auto& s : starting_states(sem, model.initialisation.get(), pscope, options.fixed))
    pgroups[key_of(pvars, s)].push_back(std::move(s));
  for (auto& s : starting_states(sem, m.initialisation.get(), mscope, options.fixed))
    mgroups[key_of(mvars, s)].push_back(std::move(s));

  for (const auto& [key, starts] : pgroups) {
    TraceSet mapped;
    for (const auto& s : starts)
      for (const auto& t : process_from(*p.body, pscope, s, interp, options))
        mapped.insert(map_trace(t, f));
    auto mg = mgroups.find(key);
    TraceSet allowed = mg == mgroups.end() ? TraceSet{Trace{}}
                                           : machine_from(sem, m, mscope, mg->second, e, options.depth);
    res.process_traces += mapped.size();
    res.machine_traces += allowed.size();
    for (const auto& t : mapped) {
      if (allowed.count(t)) continue;
      if (!res.counter || shorter(t, *res.counter)) {
        res.included = false;
        res.counter = t;
        res.initial.clear();
        for (std::size_t i = 0; i < shared.size(); ++i) res.initial.emplace(shared[i], key[i]);
      }
    }
  }
  return res;
}

DivergenceResult check_divergence(const SlpModel& model, const std::string& process,
                                  const Interpretation& interp) {
  const auto& p = process_of(model, process);
  DivergenceResult res;
  if (!p.body) return res;
  Checker checker(model, interp);
  for (const auto& po : generate(model, interp)) {
    if (po.family != Family::VAR || po.unit != process) continue;
    auto r = checker.check(po);
    if (r.verdict != Verdict::Discharged) {
      res.discharged = false;
      res.reason = po.id + " " + verdict_name(r.verdict) + (r.reason.empty() ? "" : ": " + r.reason);
      return res;
    }
  }
  return res;
}

std::string render_trace(const Trace& t) {
  std::string out = "<";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ", ";
    if (t[i].size() == 1) {
      out += t[i][0];
      continue;
    }
    out += "{";
    for (std::size_t j = 0; j < t[i].size(); ++j) out += (j ? ", " : "") + t[i][j];
    out += "}";
  }
  return out + ">";
}

}  // namespace slp
