#include <doctest.h>

#include "properties.hpp"

namespace {

void expect(const props::Outcome& o) {
  INFO(o.name << ": " << o.failures << " of " << o.cases << " cases failed; first:\n" << o.first);
  CHECK(o.cases >= 200);
  CHECK(o.failures == 0);
}

}  // namespace

TEST_CASE("write sets cover every changed variable") { expect(props::write_set_soundness(200)); }
TEST_CASE("closed statements are total on the state space") { expect(props::diamond_totality(200)); }
TEST_CASE("branch contexts partition the state space") { expect(props::if_guard_partition(200)); }
TEST_CASE("assert-free sequencing is associative") { expect(props::seq_associativity(200)); }
TEST_CASE("an assert discards what ran before it") { expect(props::forgetful_law(200)); }
TEST_CASE("executor agrees with the relational semantics") { expect(props::operational_agreement(200)); }
TEST_CASE("trace sets are prefix closed") { expect(props::trace_prefix_closure(200)); }
TEST_CASE("deeper trace bounds only add longer traces") { expect(props::trace_depth_monotonicity(200)); }
TEST_CASE("kernel and reference evaluator agree on predicates") { expect(props::evaluator_agreement(200)); }
TEST_CASE("checker and reference decider agree on random models") { expect(props::obligation_agreement(200)); }
