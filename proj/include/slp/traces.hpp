#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "slp/ast.hpp"
#include "slp/kernel.hpp"
#include "slp/semantics.hpp"

namespace slp {

using TraceSet = std::set<Trace>;
using AlphabetMap = std::map<std::string, std::string>;

struct TraceOptions {
  std::size_t depth = 8;
  bool serialize_parallel = true;  // false: one multi-label element per parallel
  Store fixed;                     // restricts initial states to these values
};

/// Event traces of the model's machine from its initialisation, at most
/// `depth` events long, restricted to `events` (other events still run).
/// Errors: `no-machine`, `state-space-exceeded`.
TraceSet machine_traces(const SlpModel& model, const std::set<std::string>& events,
                        const Interpretation& interp, const TraceOptions& options = {});

/// Label traces of a process body run by the executor from the model's
/// initialisation, cut at `depth` elements. Errors: `unlabeled-substitution`.
TraceSet process_traces(const SlpModel& model, const std::string& process,
                        const Interpretation& interp, const TraceOptions& options = {});

/// Every element's labels sent through `f`. Errors: `unmapped-label`.
Trace map_trace(const Trace& t, const AlphabetMap& f);

/// The REFMAP of `unit` as an alphabet map. Errors: `no-refmap`.
AlphabetMap refmap_of(const SlpModel& model, const std::string& unit);

struct InclusionResult {
  bool included = true;
  std::optional<Trace> counter;  // mapped, shortest then lexicographically least
  Store initial;                 // shared variables of the offending run
  std::size_t process_traces = 0;
  std::size_t machine_traces = 0;
};

/// f(tr(P)) ⊆ tr(M) ↾ E, compared per valuation of the variables the
/// process and machine share. E defaults to the image of f.
InclusionResult check_inclusion(const SlpModel& model, const std::string& process,
                                const AlphabetMap& f, const Interpretation& interp,
                                const TraceOptions& options = {},
                                std::optional<std::set<std::string>> events = std::nullopt);

struct DivergenceResult {
  bool discharged = true;
  std::string reason;
};

/// Holds when every loop of the body has a discharged variant obligation.
DivergenceResult check_divergence(const SlpModel& model, const std::string& process,
                                  const Interpretation& interp);

std::string render_trace(const Trace& t);

}  // namespace slp
