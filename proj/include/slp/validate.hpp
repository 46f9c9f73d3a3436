#pragma once

#include <string>
#include <vector>

#include "slp/ast.hpp"

namespace slp {

struct Diagnostic {
  enum class Severity { Error, Warning };
  SourceSpan span;
  Severity severity = Severity::Error;
  std::string rule;  // `distinct-vars`, `need-process`, ...
  std::string message;

  bool is_error() const { return severity == Severity::Error; }
  std::string str() const;
};

/// Structural and scoping checks, in source order. Pure and deterministic.
std::vector<Diagnostic> validate_model(const SlpModel& model);

bool has_errors(const std::vector<Diagnostic>& diags);

}  // namespace slp
