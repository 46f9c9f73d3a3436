#pragma once

#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "slp/pogen.hpp"
#include "slp/semantics.hpp"

namespace slp {

enum class Verdict { Discharged, Violated, Skipped };

const char* verdict_name(Verdict v);

struct CheckResult {
  std::string id;
  Family family = Family::WD;
  Verdict verdict = Verdict::Discharged;
  std::optional<Binding> witness;  // Violated: plain, primed (x') and twice-primed (x'') names
  std::string reason;
  long ms = 0;
};

/// Decides obligations of one model by enumeration. Thread-safe.
class Checker {
 public:
  Checker(const SlpModel& model, const Interpretation& interp, Options options = {});

  CheckResult check(const ProofObligation& po) const;
  const Semantics& semantics() const { return sem_; }

 private:
  struct Image;
  CheckResult decide(const ProofObligation& po) const;
  std::shared_ptr<const Image> image(const Stmt& s, const ScopeContext& scope, const ExprPtr& context,
                                     bool raw) const;

  const SlpModel* model_;
  const Interpretation* interp_;
  Options options_;
  Semantics sem_;
  mutable std::mutex mu_;
  mutable std::map<std::string, std::shared_future<std::shared_ptr<const Image>>> images_;
};

CheckResult check(const ProofObligation& po, const SlpModel& model, const Interpretation& interp,
                  Options options = {});

struct Summary {
  std::size_t discharged = 0;
  std::size_t violated = 0;
  std::size_t skipped = 0;
};

struct Report {
  std::string model;
  std::vector<CheckResult> results;  // sorted by id
  Summary summary;
};

/// generate + check for POs whose id matches the glob `filter`, on
/// `workers` threads; the report does not depend on the worker count.
Report check_all(const SlpModel& model, const Interpretation& interp,
                 const std::string& filter = "*", Options options = {}, unsigned workers = 1);

/// Checks already generated obligations.
Report check_obligations(const SlpModel& model, const Interpretation& interp,
                         const std::vector<ProofObligation>& pos, Options options = {},
                         unsigned workers = 1);

std::string report_json(const Report& report, bool timings = false);

std::string report_table(const Report& report);

/// SMT-LIB v2 script whose `unsat` answer discharges the sequent. With an
/// interpretation, constants are fixed to their CHECK values and variables
/// to their finite domains. Errors: `unsupported-construct`.
std::string export_solver(const SlpModel& model, const ProofObligation& po,
                          const Interpretation* interp = nullptr);

}  // namespace slp
