#pragma once

#include <string>
#include <vector>

#include "slp/ast.hpp"
#include "slp/kernel.hpp"
#include "slp/scope.hpp"
#include "slp/semantics.hpp"

namespace slp {

enum class Family {
  WD,
  INV,
  GRT,
  ASN,
  FIS_RELY,
  CLO_RELY_REFL,
  CLO_RELY_TRANS,
  VAR,
  CMP,
  THM,
  AXM_SAT,
  REF_GRT,
};

const char* family_name(Family f);
Family family_from_name(const std::string& name);

/// Which predecessor an assertion obligation is discharged against.
enum class AsnCase { AfterAssert, AfterAction, BlockHead };

/// A labeled sequent plus what the finite checker needs to decide it.
struct ProofObligation {
  std::string id;
  Family family = Family::WD;
  std::vector<LabeledPredicate> hypotheses;
  std::size_t context_hyps = 0;  // leading hypotheses that are axioms or invariants (HYP)
  ExprPtr goal;
  std::string relational_form;
  SourceSpan origin;
  bool exportable = true;  // hypotheses ⊢ goal states the obligation exactly

  // Check data. Statements are shared with the model's AST.
  std::string unit;
  ScopeContext scope;
  StmtPtr stmt;             // action, assert, or loop
  StmtPtr prev;             // ASN: predecessor (assert or action) unless at a block head
  AsnCase asn_case = AsnCase::BlockHead;
  ExprPtr context;          // A: assertion context in force before `stmt`
  ExprPtr target;           // INV conjunct, guarantee, asserted predicate, rely, theorem
  ExprPtr source;           // CMP / REF_GRT: guarantee of the unit
  ExprPtr rely;             // ASN: process rely (null: identity)
  std::vector<std::string> events;  // REF_GRT
};

/// Every obligation of `model`, in a deterministic walk order: axioms,
/// theorems, environments, processes (relies, body, compatibility),
/// refinement guarantees.
std::vector<ProofObligation> generate(const SlpModel& model, const Interpretation& interp);
std::vector<ProofObligation> generate(const SlpModel& model, const Interpretation& interp,
                                      RefMode mode);

/// A of the action at `path` in `process`'s body: the preceding assert's
/// conjuncts, ¬c ∧ LI after a loop, the inherited context at a block head,
/// TRUE otherwise.
ExprPtr assertion_context(const SlpModel& model, const std::string& process, const StmtPath& path);

/// REF_GRT for a unit (environment or process) against refined machine
/// events. Errors: `no-machine`, `refmap-unit`, `refmap-event`.
ProofObligation refinement_guarantee(const SlpModel& model, const std::string& unit,
                                     const std::vector<std::string>& events,
                                     const Interpretation& interp);
ProofObligation refinement_guarantee(const SlpModel& model, const std::string& unit,
                                     const std::vector<std::string>& events,
                                     const Interpretation& interp, RefMode mode);

/// `HYP, extra... |- goal`, HYP standing for the axioms and invariants.
std::string display_sequent(const ProofObligation& po);

/// Full sequent, one hypothesis per line.
std::string render_sequent(const ProofObligation& po);

/// Glob match on PO ids (`*`, `?`).
bool glob_match(const std::string& pattern, const std::string& text);

}  // namespace slp
