#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace slp {

/// Runtime value of the mathematical subset.
///
/// Sets are kept sorted and duplicate-free so that structural equality is
/// plain element-wise comparison. Carrier-set atoms are tagged integers: the
/// ordinal inside their set, plus the set and atom names for printing.
class Value {
 public:
  enum class Kind : std::uint8_t { Int, Bool, Atom, Set, Pair };

  Value() = default;

  static Value integer(std::int64_t v);
  static Value boolean(bool v);
  static Value atom(std::string set, std::string name, std::int64_t ordinal);
  static Value set(std::vector<Value> elems);  // sorts and dedups
  static Value sorted_set(std::vector<Value> elems);  // caller guarantees order
  static Value pair(Value first, Value second);
  static Value empty_set();

  Kind kind() const { return kind_; }
  bool is_int() const { return kind_ == Kind::Int; }
  bool is_bool() const { return kind_ == Kind::Bool; }
  bool is_set() const { return kind_ == Kind::Set; }
  bool is_pair() const { return kind_ == Kind::Pair; }
  bool is_atom() const { return kind_ == Kind::Atom; }

  std::int64_t as_int() const { return num_; }
  bool as_bool() const { return num_ != 0; }
  const std::vector<Value>& elements() const;
  const Value& first() const { return elements()[0]; }
  const Value& second() const { return elements()[1]; }
  const std::string& atom_set() const;
  const std::string& atom_name() const;

  bool contains(const Value& v) const;

  /// Function application on a set of pairs: the unique image of `arg`,
  /// or nullptr when `arg` has zero or several images.
  const Value* apply(const Value& arg) const;

  std::string str() const;
  std::size_t hash() const;

  friend std::strong_ordering operator<=>(const Value& a, const Value& b);
  friend bool operator==(const Value& a, const Value& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

 private:
  struct Payload {
    std::vector<Value> elems;
    std::string set_name;
    std::string atom_name;
  };

  Kind kind_ = Kind::Int;
  std::int64_t num_ = 0;
  std::shared_ptr<const Payload> payload_;
};

struct ValueHash {
  std::size_t operator()(const Value& v) const { return v.hash(); }
};

/// An assignment of values to the variables of a state space, aligned with
/// the space's sorted variable list.
using State = std::vector<Value>;

struct StateHash {
  std::size_t operator()(const State& s) const;
};

std::string to_string(const State& s, const std::vector<std::string>& names);

}  // namespace slp
