// End-to-end checks, one PASS/FAIL line each.
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

#include "oracle.hpp"
#include "properties.hpp"
#include "slp/discharge.hpp"
#include "slp/parser.hpp"
#include "slp/pogen.hpp"
#include "slp/scope.hpp"
#include "slp/traces.hpp"

using namespace slp;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Failed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void need(bool cond, const std::string& what) {
  if (!cond) throw Failed(what);
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
  auto at = text.find(from);
  if (at == std::string::npos) throw Failed("corpus text lacks `" + from + "`");
  return text.replace(at, from.size(), to);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("slp_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int cli(const std::string& args) {
  std::string cmd = "\"" SLP_CLI "\" " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string corpus_path(const std::string& file) { return std::string(SLP_CORPUS_DIR) + "/" + file; }

json check_json(const std::string& model, const std::string& extra, const std::string& out) {
  fs::path path = scratch() / out;
  cli("check \"" + model + "\" --json \"" + path.string() + "\" " + extra);
  need(fs::exists(path), "no JSON report for " + model);
  return json::parse(slurp(path));
}

long euclid(long a, long b) {
  while (b) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// --- 1 -----------------------------------------------------------------

void gcd_end_to_end() {
  for (const char* file : {"gcd0.slp", "gcd1a.slp"}) {
    json rep = check_json(corpus_path(file), "", std::string(file) + ".json");
    const auto& s = rep["summary"];
    need(s["violated"] == 0 && s["skipped"] == 0 && s["discharged"] == s["total"],
         std::string(file) + " not fully discharged");
  }

  auto t0 = std::chrono::steady_clock::now();
  json rep = check_json(corpus_path("gcd1b.slp"), "", "gcd1b.json");
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const auto& s = rep["summary"];
  need(s["total"].get<int>() > 0, "gcd1b produced no obligations");
  need(s["violated"] == 0 && s["skipped"] == 0 && s["discharged"] == s["total"],
       "gcd1b: " + s.dump());
  need(secs < 30, "gcd1b check took " + std::to_string(secs) + " s");

  SlpModel model = parse_model(props::corpus_text("gcd1b.slp"));
  Interpretation interp = build_interpretation(model);
  need(interp.lo == 0 && interp.hi == 16, "gcd1b INT bound is not 0 .. 16");
  need(*interp.lookup("N") == Value::integer(8), "gcd1b N is not 8");
  const Value* table = interp.lookup("gcd");
  need(table && table->is_set(), "gcd1b has no gcd table");
  need(table->elements().size() == 17 * 17, "gcd table size");
  for (long a = 0; a <= 16; ++a)
    for (long b = 0; b <= 16; ++b) {
      const Value* g = table->apply(Value::pair(Value::integer(a), Value::integer(b)));
      need(g && *g == Value::integer(euclid(a, b)),
           "gcd table entry " + std::to_string(a) + ", " + std::to_string(b));
    }

  const ProcessDef* main = model.find_process("main");
  ScopeContext scope = process_scope(model, *main);
  const auto& names = scope.vars();
  for (long a = 1; a <= 8; ++a)
    for (long b = 1; b <= 8; ++b) {
      State st;
      for (const auto& v : names)
        st.push_back(Value::integer(v == "x1" ? a : v == "x2" ? b : 0));
      Targets out = execute(*main->body, {st}, scope, interp);
      std::string pair = std::to_string(a) + ", " + std::to_string(b);
      need(out.size() == 1 && out[0], "executor result count for " + pair);
      std::size_t r = std::find(names.begin(), names.end(), "r") - names.begin();
      need((*out[0])[r] == Value::integer(euclid(a, b)), "executor r for " + pair);
    }
}

// --- 2 -----------------------------------------------------------------

std::vector<ProofObligation> asn_of(const std::vector<ProofObligation>& pos, const std::string& unit) {
  std::vector<ProofObligation> out;
  for (const auto& po : pos)
    if (po.family == Family::ASN && po.unit == unit) out.push_back(po);
  return out;
}

void assert_chain_shapes() {
  SlpModel model = parse_model(props::corpus_text("asserts.slp"));
  Interpretation interp = build_interpretation(model);
  auto pos = generate(model, interp);
  const std::pair<const char*, std::size_t> counts[] = {
      {"plain", 0}, {"one_assert", 1}, {"two_asserts", 2}, {"three_asserts", 3}};
  for (const auto& [unit, n] : counts)
    need(asn_of(pos, unit).size() == n, std::string(unit) + ": " + std::to_string(asn_of(pos, unit).size()) +
                                            " assertion obligations");

  auto chained = asn_of(pos, "chained");
  need(chained.size() == 2, "chained: two sequents expected");
  need(display_sequent(chained[0]) == "HYP |- e : s \\/ {e}", "chained first: " + display_sequent(chained[0]));
  need(display_sequent(chained[1]) == "HYP, e : s |- s /= {}", "chained second: " + display_sequent(chained[1]));

  auto composite = asn_of(pos, "composite");
  need(composite.size() == 1, "composite: one sequent expected");
  const auto& c = composite[0];
  need(c.hypotheses.size() == c.context_hyps, "composite: hypotheses beyond HYP");
  need(c.goal && c.goal->op == Op::And && c.goal->args.size() == 2, "composite: goal is not a conjunction");
  need(display_sequent(c) == "HYP |- e : s \\/ {e} & s \\/ {e} /= {}", "composite: " + display_sequent(c));
  std::cout << "  chained: " << display_sequent(chained[0]) << " / " << display_sequent(chained[1]) << "\n"
            << "  composite: " << display_sequent(c)
            << " (both conjuncts read after s := s \\/ {e}; the printed listing leaves the second as s /= {})\n";
}

// --- 3 -----------------------------------------------------------------

SlpModel small_gcd(bool mutated) {
  std::string text = props::corpus_text("gcd1b.slp");
  text = replace(text, "BOUND INT = 0 .. 16", "BOUND INT = 1 .. 5");
  text = replace(text, "CONST N = 8", "CONST N = 5");
  if (mutated) text = replace(text, "s1: y1 := y1 - y2", "s1: y1 := y1 + y2");
  return parse_model(text);
}

void trace_refinement() {
  TraceOptions opts;
  opts.depth = 18;
  {
    SlpModel model = small_gcd(false);
    Interpretation interp = build_interpretation(model);
    auto inc = check_inclusion(model, "main", refmap_of(model, "main"), interp, opts);
    need(inc.included, "gcd1b traces not included: " + (inc.counter ? render_trace(*inc.counter) : ""));
    need(inc.process_traces > 0 && inc.machine_traces > 0, "empty trace sets");
    auto div = check_divergence(model, "main", interp);
    need(div.discharged, "divergence: " + div.reason);
  }
  SlpModel model = small_gcd(true);
  Interpretation interp = build_interpretation(model);
  auto inc = check_inclusion(model, "main", refmap_of(model, "main"), interp, opts);
  need(!inc.included && inc.counter, "mutated subtraction still included");
  need(inc.counter->size() <= 4, "counter-trace " + render_trace(*inc.counter) + " longer than 4");
}

// --- 4 -----------------------------------------------------------------

// The witness must make every hypothesis true and the goal false.
void witness_refutes(const SlpModel& model, const ProofObligation& po, const Binding& w) {
  oracle::Oracle orc(model);
  oracle::Bind b;
  for (const auto& [name, v] : w) b.emplace_back(name, oracle::from(v));
  for (const auto& h : po.hypotheses)
    need(orc.holds(h.pred, b), po.id + ": witness falsifies hypothesis " + h.label);
  need(!orc.holds(po.goal, b), po.id + ": witness satisfies the goal");
}

void heater_coverage() {
  std::string text = props::corpus_text("heater.slp");
  {
    SlpModel model = parse_model(text);
    Interpretation interp = build_interpretation(model);
    need(interp.lo == -10 && interp.hi == 50, "heater INT bound");
    need(*interp.lookup("TEMP_LOW") == Value::integer(10) && *interp.lookup("TEMP_HIGH") == Value::integer(30) &&
             *interp.lookup("delta") == Value::integer(1) && *interp.lookup("Delta") == Value::integer(2),
         "heater constants");
    Report rep = check_all(model, interp);
    std::set<Family> seen;
    for (const auto& r : rep.results) {
      need(r.verdict == Verdict::Discharged, r.id + " " + verdict_name(r.verdict) + " " + r.reason);
      seen.insert(r.family);
    }
    for (Family f : {Family::WD, Family::INV, Family::GRT, Family::FIS_RELY, Family::CLO_RELY_REFL,
                     Family::CLO_RELY_TRANS, Family::CMP, Family::AXM_SAT})
      need(seen.count(f), std::string("no ") + family_name(f) + " obligation");
  }

  SlpModel model = parse_model(replace(text, "t' : t - Delta .. t + Delta &", "t' : t - Delta .. t + Delta + 100 &"));
  Interpretation interp = build_interpretation(model);
  auto pos = generate(model, interp);
  Report rep = check_obligations(model, interp, pos);
  std::size_t violated = 0;
  for (const auto& r : rep.results) {
    if (r.verdict != Verdict::Violated) continue;
    ++violated;
    need(r.witness.has_value(), r.id + " violated without a witness");
    for (const auto& po : pos)
      if (po.id == r.id) witness_refutes(model, po, *r.witness);
  }
  need(violated >= 1, "mutated sensor guarantee flips nothing");
}

// --- 5 -----------------------------------------------------------------

void property_suites() {
  auto outcomes = props::all(200);
  outcomes.push_back(props::corpus_agreement());
  for (const auto& o : outcomes) {
    std::cout << "  " << o.name << ": " << o.cases << " cases, " << o.failures << " failures\n";
    if (!o.first.empty()) std::cout << "    first failure: " << o.first << "\n";
  }
  for (std::size_t i = 0; i + 1 < outcomes.size(); ++i)
    need(outcomes[i].cases >= 200, outcomes[i].name + ": fewer than 200 cases");
  for (const auto& o : outcomes) need(o.ok(), o.name + " failed");
}

// --- 6 -----------------------------------------------------------------

void determinism() {
  for (const char* file : {"gcd1b.slp", "asserts.slp", "heater.slp"}) {
    std::string path = corpus_path(file);
    std::string a = (scratch() / (std::string(file) + ".a.json")).string();
    std::string b = (scratch() / (std::string(file) + ".b.json")).string();
    std::string c = (scratch() / (std::string(file) + ".c.json")).string();
    cli("check \"" + path + "\" --json \"" + a + "\"");
    cli("check \"" + path + "\" --json \"" + b + "\"");
    cli("check \"" + path + "\" --json \"" + c + "\" --workers 8");
    std::string ja = slurp(a);
    need(!ja.empty(), std::string(file) + ": empty report");
    need(ja == slurp(b), std::string(file) + ": consecutive runs differ");
    need(ja == slurp(c), std::string(file) + ": --workers 8 differs");
  }
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void()>> criteria[] = {
      {"gcd end-to-end", gcd_end_to_end},
      {"assert chain obligation shapes", assert_chain_shapes},
      {"trace refinement", trace_refinement},
      {"heater obligation coverage", heater_coverage},
      {"property suites", property_suites},
      {"determinism", determinism},
  };
  int failed = 0;
  int n = 0;
  for (const auto& [name, run] : criteria) {
    ++n;
    auto t0 = std::chrono::steady_clock::now();
    std::string why;
    try {
      run();
    } catch (const std::exception& e) {
      why = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream line;
    line.precision(2);
    line << std::fixed << (why.empty() ? "PASS" : "FAIL") << " " << n << " " << name << " (" << secs << " s)";
    if (!why.empty()) line << ": " << why;
    std::cout << line.str() << std::endl;
    if (!why.empty()) ++failed;
  }
  fs::remove_all(scratch());
  return failed ? 1 : 0;
}
