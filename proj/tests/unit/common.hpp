#pragma once

#include <string>

#include "properties.hpp"
#include "slp/discharge.hpp"
#include "slp/parser.hpp"

struct Loaded {
  slp::SlpModel model;
  slp::Interpretation interp;

  explicit Loaded(const std::string& text)
      : model(slp::parse_model(text)), interp(slp::build_interpretation(model)) {}
};

inline Loaded corpus(const std::string& name, bool reduced = false) {
  return Loaded(props::corpus_text(name, reduced));
}

inline const slp::ProcessDef& process(const slp::SlpModel& m, const std::string& label) {
  for (const auto& p : m.processes)
    if (p.label == label) return p;
  throw std::runtime_error("no process " + label);
}

/// Exit status of the command-line tool run with `args`, output discarded.
int run_cli(const std::string& args, const std::string& env = "");
