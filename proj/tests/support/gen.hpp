#pragma once

#include <random>
#include <string>
#include <vector>

#include "slp/ast.hpp"

namespace gen {

/// What random statements may contain.
struct Shape {
  int depth = 4;
  bool loops = false;
  bool asserts = false;
  bool stops = false;
  bool blocks = false;
};

/// Random statements over x, y : 0 .. 3 and z : BOOL. Every value an
/// assignment can produce stays inside those domains.
class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}

  std::mt19937& rng() { return rng_; }
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  bool coin() { return pick(2) == 0; }

  slp::ExprPtr int_expr();
  slp::ExprPtr predicate();
  /// Before-after predicate over x, y, z and their primed forms.
  slp::ExprPtr relation();

  slp::StmtPtr substitution(const std::string& var);
  slp::StmtPtr action();  // substitution or parallel
  slp::StmtPtr stmt(const Shape& shape);
  slp::StmtPtr stmt(const Shape& shape, int depth);
  slp::StmtPtr if_stmt(const Shape& shape, int depth);
  slp::StmtPtr loop();

  std::vector<std::string> labels() const;

 private:
  std::string label() { return "l" + std::to_string(++labels_); }

  std::mt19937 rng_;
  int labels_ = 0;
};

/// Model with globals x, y, z, one process `p` running `body`, and INT
/// bounded to 0 .. 3.
slp::SlpModel model_with(slp::StmtPtr body);

/// Adds a machine over x, y, z with one event per label of the body; the
/// event guards and actions are random, so inclusion may or may not hold.
void add_machine(slp::SlpModel& model, Gen& g, const std::vector<std::string>& labels);

/// Adds relies and guarantees to `p` and a second process and an
/// environment, for obligation coverage.
void add_specs(slp::SlpModel& model, Gen& g);

}  // namespace gen
