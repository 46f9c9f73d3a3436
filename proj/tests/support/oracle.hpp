#pragma once

// Naive reference evaluator used by the tests. Shares the AST and scope
// layout with the library but none of its evaluation code.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "slp/ast.hpp"
#include "slp/pogen.hpp"
#include "slp/scope.hpp"
#include "slp/value.hpp"

namespace oracle {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Val {
  enum K { Int, Bool, Atom, Set, Pair } k = Int;
  long long n = 0;  // int, bool, atom ordinal
  std::string tag;  // atom: set name
  std::vector<Val> el;

  static Val num(long long v) { return {Int, v, {}, {}}; }
  static Val truth(bool b) { return {Bool, b, {}, {}}; }
  static Val pair(Val a, Val b) { return {Pair, 0, {}, {std::move(a), std::move(b)}}; }
  static Val set(std::vector<Val> xs);

  auto key() const { return std::tie(k, n, tag, el); }
  bool operator<(const Val& o) const { return key() < o.key(); }
  bool operator==(const Val& o) const { return key() == o.key(); }
  bool operator!=(const Val& o) const { return !(*this == o); }
};

/// Library value in oracle form.
Val from(const slp::Value& v);

using OState = std::vector<Val>;
using Target = std::optional<OState>;  // nullopt is the terminated state
using Targets = std::set<Target>;

/// Names bound during evaluation; searched from the back.
using Bind = std::vector<std::pair<std::string, Val>>;

Bind bind_state(const std::vector<std::string>& vars, const OState& s, const std::string& suffix = "");

struct Space {
  std::vector<std::string> vars;
  std::vector<std::vector<Val>> doms;
  std::vector<OState> typed;
  std::vector<OState> states;  // Σ
  std::set<OState> index;

  bool in(const OState& s) const { return index.count(s) > 0; }
};

enum class Verdict { Discharged, Violated };

class Oracle {
 public:
  explicit Oracle(const slp::SlpModel& model);

  long long lo() const { return lo_; }
  long long hi() const { return hi_; }

  Val eval(const slp::Expr& e, const Bind& b) const;
  bool holds(const slp::Expr& e, const Bind& b) const;
  bool holds(const slp::ExprPtr& e, const Bind& b) const { return !e || holds(*e, b); }

  const Space& space(const slp::ScopeContext& scope) const;

  /// ⟦s⟧(σ) in `scope`; `raw` skips the outermost ◇ closure.
  Targets succ(const slp::Stmt& s, const slp::ScopeContext& scope, const OState& sigma,
               bool raw = false) const;

  Verdict decide(const slp::ProofObligation& po) const;

 private:
  bool member(const Val& x, const slp::Expr& set, const Bind& b) const;
  std::vector<Val> base(slp::Op op) const;
  std::vector<Val> quant_domain(const slp::Expr& q, std::size_t idx, const Bind& b) const;
  bool quant(const slp::Expr& q, std::size_t idx, Bind& b) const;
  std::vector<Val> typing(const slp::ScopeContext& scope, const std::string& var) const;
  bool invariant(const slp::ScopeContext& scope, const OState& s) const;
  Targets seq(const slp::Stmt& s, const slp::ScopeContext& scope, const OState& sigma) const;
  std::vector<OState> subst(const slp::Stmt& s, const slp::ScopeContext& scope,
                            const OState& sigma) const;
  std::vector<std::map<std::string, Val>> updates(const slp::Stmt& s, const slp::ScopeContext& scope,
                                                  const OState& sigma) const;
  Targets block(const slp::Stmt& s, const slp::ScopeContext& scope, const OState& sigma, bool raw) const;
  bool variant_ok(const slp::Stmt& loop, const slp::ScopeContext& scope) const;

  const slp::SlpModel* model_;
  long long lo_ = 0, hi_ = 8;
  std::map<std::string, Val> consts_;
  mutable std::map<std::string, Space> spaces_;
};

}  // namespace oracle
