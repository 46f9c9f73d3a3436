#pragma once

#include <functional>
#include <string>
#include <vector>

namespace props {

struct Outcome {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string first;  // description of the first failing case

  bool ok() const { return failures == 0 && cases > 0; }
};

Outcome write_set_soundness(int cases, unsigned seed = 1);
Outcome diamond_totality(int cases, unsigned seed = 2);
Outcome if_guard_partition(int cases, unsigned seed = 3);
Outcome seq_associativity(int cases, unsigned seed = 4);
Outcome forgetful_law(int cases, unsigned seed = 5);
Outcome operational_agreement(int cases, unsigned seed = 6);
Outcome trace_prefix_closure(int cases, unsigned seed = 7);
Outcome trace_depth_monotonicity(int cases, unsigned seed = 8);
Outcome evaluator_agreement(int cases, unsigned seed = 9);
Outcome obligation_agreement(int cases, unsigned seed = 10);

/// Kernel and oracle verdicts on every obligation of the corpus; gcd1b runs
/// with its bounds reduced so the naive oracle stays fast.
Outcome corpus_agreement();

/// Corpus file text, optionally with the reduced gcd1b bounds.
std::string corpus_text(const std::string& name, bool reduced = false);
const std::vector<std::string>& corpus_files();

/// Every suite above with `cases` cases each.
std::vector<Outcome> all(int cases);

}  // namespace props
