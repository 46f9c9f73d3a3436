#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "slp/ast.hpp"
#include "slp/error.hpp"

namespace slp {

/// First syntax error of an input. `expected()` lists the token kinds that
/// would have been accepted at the error position.
class ParseError : public SlpError {
 public:
  ParseError(const std::string& message, SourceSpan span, std::vector<std::string> expected)
      : SlpError("parse-error", message, span), expected_(std::move(expected)) {}

  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::vector<std::string> expected_;
};

SlpModel parse_model(std::string_view text);

ExprPtr parse_predicate(std::string_view text);
ExprPtr parse_expression(std::string_view text);

/// Parses a `;`-separated block. `declared` lists the names in scope; an
/// assert conjunct `x : ...` is read as a label only when `x` is not one.
StmtPtr parse_block(std::string_view text, const std::set<std::string>& declared = {});

}  // namespace slp
