// slp: command-line front end.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "slp/discharge.hpp"
#include "slp/parser.hpp"
#include "slp/pogen.hpp"
#include "slp/render.hpp"
#include "slp/traces.hpp"
#include "slp/validate.hpp"

namespace fs = std::filesystem;
using namespace slp;

namespace {

enum Exit { kOk = 0, kViolated = 1, kInputError = 2, kResources = 3 };

struct Config {
  std::string input;
  std::size_t depth = 8;
  std::string po = "*";
  bool strict_paper = false;
  bool strict_feasibility = false;
  std::string ref_mode = "inter";
  std::string json;
  std::string smt;
  unsigned workers = 1;
  std::string solver;
  std::string process;
  bool multi_label = false;
};

struct Loaded {
  SlpModel model;
  Interpretation interp;
};

Loaded load(const Config& cfg) {
  std::ifstream in(cfg.input);
  if (!in) throw SlpError("io-error", "cannot read " + cfg.input);
  std::stringstream ss;
  ss << in.rdbuf();
  Loaded l{parse_model(ss.str()), {}};
  auto diags = validate_model(l.model);
  for (const auto& d : diags) std::cerr << cfg.input << ":" << d.str() << "\n";
  if (has_errors(diags)) throw SlpError("validation-error", "model has validation errors");
  l.interp = build_interpretation(l.model);
  return l;
}

Options options_of(const Config& cfg) {
  Options o;
  o.strict_paper = cfg.strict_paper;
  o.strict_feasibility = cfg.strict_feasibility;
  o.ref_mode = cfg.ref_mode == "union" ? RefMode::Union : RefMode::Inter;
  return o;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw SlpError("io-error", "cannot write " + path.string());
  out << text;
}

std::string run_solver(const std::string& cmd, const fs::path& script) {
  std::string line = cmd + " '" + script.string() + "' 2>&1";
  std::FILE* pipe = popen(line.c_str(), "r");
  if (!pipe) return "error";
  std::string out;
  char buf[256];
  while (std::fgets(buf, sizeof buf, pipe)) out += buf;
  pclose(pipe);
  while (!out.empty() && (out.back() == '\n' || out.back() == '\r')) out.pop_back();
  return out;
}

std::vector<ProofObligation> matching(const Loaded& l, const Config& cfg) {
  std::vector<ProofObligation> out;
  for (auto& po : generate(l.model, l.interp, options_of(cfg).ref_mode))
    if (glob_match(cfg.po, po.id)) out.push_back(std::move(po));
  return out;
}

// Writes scripts for `pos`; returns how many were exported.
std::size_t export_scripts(const Loaded& l, const Config& cfg, const std::vector<const ProofObligation*>& pos) {
  fs::create_directories(cfg.smt);
  std::size_t n = 0;
  for (const auto* po : pos) {
    try {
      fs::path path = fs::path(cfg.smt) / (po->id + ".smt2");
      write_file(path, export_solver(l.model, *po, &l.interp));
      ++n;
      if (!cfg.solver.empty()) std::cout << po->id << ": " << run_solver(cfg.solver, path) << "\n";
    } catch (const SlpError& e) {
      std::cerr << po->id << ": " << e.code() << ": " << e.what() << "\n";
    }
  }
  return n;
}

int cmd_check(const Config& cfg) {
  auto l = load(cfg);
  auto pos = matching(l, cfg);
  auto rep = check_obligations(l.model, l.interp, pos, options_of(cfg), cfg.workers);
  std::cout << report_table(rep);
  if (!cfg.json.empty()) write_file(cfg.json, report_json(rep));
  if (!cfg.smt.empty()) {
    std::vector<const ProofObligation*> open;
    for (const auto& po : pos)
      for (const auto& r : rep.results)
        if (r.id == po.id && r.verdict != Verdict::Discharged) open.push_back(&po);
    export_scripts(l, cfg, open);
  }
  if (rep.summary.violated) return kViolated;
  if (rep.summary.skipped) return kResources;
  return kOk;
}

int cmd_pos(const Config& cfg) {
  auto l = load(cfg);
  for (const auto& po : matching(l, cfg)) std::cout << po.id << "\n  " << display_sequent(po) << "\n";
  return kOk;
}

int cmd_export(const Config& cfg) {
  if (cfg.smt.empty()) throw SlpError("config-error", "export-smt needs --smt DIR");
  auto l = load(cfg);
  auto pos = matching(l, cfg);
  std::vector<const ProofObligation*> all;
  for (const auto& po : pos) all.push_back(&po);
  std::size_t n = export_scripts(l, cfg, all);
  std::cout << "exported " << n << " of " << pos.size() << " obligations to " << cfg.smt << "\n";
  return kOk;
}

int cmd_trace(const Config& cfg) {
  auto l = load(cfg);
  TraceOptions opts;
  opts.depth = cfg.depth;
  opts.serialize_parallel = !cfg.multi_label;
  int code = kOk;
  bool any = false;
  for (const auto& p : l.model.processes) {
    if (!cfg.process.empty() && p.label != cfg.process) continue;
    if (!p.body || !l.model.find_refmap(p.label)) continue;
    any = true;
    auto inc = check_inclusion(l.model, p.label, refmap_of(l.model, p.label), l.interp, opts);
    std::cout << p.label << " inclusion (depth " << cfg.depth << "): "
              << (inc.included ? "discharged" : "violated") << "\n";
    if (inc.counter) {
      std::cout << "  counter-trace: " << render_trace(*inc.counter) << "\n  from:";
      for (const auto& [k, v] : inc.initial) std::cout << " " << k << "=" << v.str();
      std::cout << "\n";
      code = kViolated;
    }
    auto div = check_divergence(l.model, p.label, l.interp);
    std::cout << p.label << " divergence: " << (div.discharged ? "discharged" : "violated") << "\n";
    if (!div.discharged) {
      std::cout << "  " << div.reason << "\n";
      code = kViolated;
    }
  }
  if (!any) std::cout << "no process with a body and a REFMAP\n";
  return code;
}

void rw_walk(const std::string& proc, const Stmt& s, const StmtPath& path) {
  for (std::size_t i = 0; i < s.children.size(); ++i) {
    const Stmt& c = *s.children[i];
    StmtPath here = path;
    here.push_back(static_cast<int>(i));
    if (s.kind == Stmt::Kind::Seq || path.empty()) {
      std::string ws;
      for (const auto& v : write_set(c)) ws += (ws.empty() ? "" : ", ") + v;
      std::cout << proc << "." << stmt_label(c, here) << "  {" << ws << "}\n";
    }
    if (!c.is_substitution()) rw_walk(proc, c, here);
  }
}

int cmd_rw(const Config& cfg) {
  auto l = load(cfg);
  for (const auto& p : l.model.processes) {
    if (!p.body) continue;
    std::string ws;
    for (const auto& v : write_set(*p.body)) ws += (ws.empty() ? "" : ", ") + v;
    std::cout << p.label << "  {" << ws << "}\n";
    rw_walk(p.label, *p.body, {});
  }
  return kOk;
}

int cmd_parse(const Config& cfg) {
  auto l = load(cfg);
  std::cout << "ok: model " << l.model.name << ", " << l.model.processes.size() << " processes, "
            << l.model.environments.size() << " environments\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SLP model checker"};
  app.require_subcommand(1);
  Config cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("input", cfg.input, "model file")->required();
    sub->add_option("--po", cfg.po, "glob on PO ids");
    sub->add_flag("--strict-paper", cfg.strict_paper, "union rule for parallel substitutions and the global variant rule");
    sub->add_flag("--strict-feasibility", cfg.strict_feasibility, "per-state well-definedness");
    sub->add_option("--ref-mode", cfg.ref_mode, "refinement guarantee mode")
        ->check(CLI::IsMember({"inter", "union"}));
    sub->add_option("--workers", cfg.workers, "checking threads")->check(CLI::PositiveNumber);
    sub->add_option("--smt", cfg.smt, "directory for SMT-LIB scripts");
    sub->add_option("--solver", cfg.solver, "solver command run on each exported script");
  };

  auto* check = app.add_subcommand("check", "generate and discharge proof obligations");
  add_common(check);
  check->add_option("--json", cfg.json, "JSON report path");
  auto* pos = app.add_subcommand("pos", "list proof obligations without checking");
  add_common(pos);
  auto* exp = app.add_subcommand("export-smt", "write SMT-LIB scripts");
  add_common(exp);
  auto* trace = app.add_subcommand("trace", "trace inclusion and divergence");
  trace->add_option("input", cfg.input, "model file")->required();
  trace->add_option("--depth", cfg.depth, "trace length bound");
  trace->add_option("--process", cfg.process, "only this process");
  trace->add_flag("--multi-label", cfg.multi_label, "one trace element per parallel substitution");
  auto* rw = app.add_subcommand("rw", "write sets per statement");
  rw->add_option("input", cfg.input, "model file")->required();
  auto* parse = app.add_subcommand("parse", "syntax and validation only");
  parse->add_option("input", cfg.input, "model file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*check) return cmd_check(cfg);
    if (*pos) return cmd_pos(cfg);
    if (*exp) return cmd_export(cfg);
    if (*trace) return cmd_trace(cfg);
    if (*rw) return cmd_rw(cfg);
    if (*parse) return cmd_parse(cfg);
  } catch (const SlpError& e) {
    std::cerr << cfg.input;
    if (e.span()) std::cerr << ":" << e.span()->begin.line << ":" << e.span()->begin.column;
    std::cerr << ": error: " << e.code() << ": " << e.what() << "\n";
    if (const auto* pe = dynamic_cast<const ParseError*>(&e); pe && !pe->expected().empty()) {
      std::cerr << "  expected:";
      for (const auto& x : pe->expected()) std::cerr << " " << x;
      std::cerr << "\n";
    }
    if (e.code() == "state-space-exceeded" || e.code() == "fuel-exhausted") return kResources;
    if (e.code() == "assert-failed" || e.code() == "stuck") return kViolated;
    return kInputError;
  }
  return kInputError;
}
