#pragma once

#include <string>

#include "slp/ast.hpp"

namespace slp {

/// Canonical concrete syntax; parse_model(render(m)) is structurally equal to m.
std::string render(const SlpModel& model);

/// Expression text with the minimum parentheses the grammar needs.
std::string render_expr(const Expr& e);
std::string render_expr(const ExprPtr& e);

/// Statement text; nested blocks are indented by `indent` levels of two spaces.
std::string render_stmt(const Stmt& s, int indent = 0);

}  // namespace slp
