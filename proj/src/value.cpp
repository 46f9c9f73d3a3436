#include "slp/value.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace slp {

namespace {

const std::vector<Value>& no_elems() {
  static const std::vector<Value> empty;
  return empty;
}

const std::string& no_name() {
  static const std::string empty;
  return empty;
}

void hash_combine(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace

Value Value::integer(std::int64_t v) {
  Value r;
  r.kind_ = Kind::Int;
  r.num_ = v;
  return r;
}

Value Value::boolean(bool v) {
  Value r;
  r.kind_ = Kind::Bool;
  r.num_ = v ? 1 : 0;
  return r;
}

Value Value::atom(std::string set, std::string name, std::int64_t ordinal) {
  Value r;
  r.kind_ = Kind::Atom;
  r.num_ = ordinal;
  r.payload_ = std::make_shared<const Payload>(Payload{{}, std::move(set), std::move(name)});
  return r;
}

Value Value::set(std::vector<Value> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  return sorted_set(std::move(elems));
}

Value Value::sorted_set(std::vector<Value> elems) {
  Value r;
  r.kind_ = Kind::Set;
  r.num_ = static_cast<std::int64_t>(elems.size());
  r.payload_ = std::make_shared<const Payload>(Payload{std::move(elems), {}, {}});
  return r;
}

Value Value::empty_set() { return sorted_set({}); }

Value Value::pair(Value first, Value second) {
  Value r;
  r.kind_ = Kind::Pair;
  std::vector<Value> e;
  e.reserve(2);
  e.push_back(std::move(first));
  e.push_back(std::move(second));
  r.payload_ = std::make_shared<const Payload>(Payload{std::move(e), {}, {}});
  return r;
}

const std::vector<Value>& Value::elements() const {
  return payload_ ? payload_->elems : no_elems();
}

const std::string& Value::atom_set() const {
  return payload_ ? payload_->set_name : no_name();
}

const std::string& Value::atom_name() const {
  return payload_ ? payload_->atom_name : no_name();
}

bool Value::contains(const Value& v) const {
  const auto& e = elements();
  return std::binary_search(e.begin(), e.end(), v);
}

const Value* Value::apply(const Value& arg) const {
  const auto& e = elements();
  // Pairs sort by first component, so all images of `arg` are adjacent.
  auto it = std::lower_bound(e.begin(), e.end(), arg, [](const Value& p, const Value& a) {
    if (!p.is_pair()) return p < a;
    return p.first() < a;
  });
  if (it == e.end() || !it->is_pair() || it->first() != arg) return nullptr;
  auto next = it + 1;
  if (next != e.end() && next->is_pair() && next->first() == arg) return nullptr;
  return &it->second();
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  switch (a.kind_) {
    case Value::Kind::Int:
    case Value::Kind::Bool:
      return a.num_ <=> b.num_;
    case Value::Kind::Atom: {
      if (auto c = a.atom_set() <=> b.atom_set(); c != 0) return c;
      return a.num_ <=> b.num_;
    }
    case Value::Kind::Set:
    case Value::Kind::Pair: {
      const auto& x = a.elements();
      const auto& y = b.elements();
      if (a.payload_ == b.payload_) return std::strong_ordering::equal;
      return std::lexicographical_compare_three_way(x.begin(), x.end(), y.begin(), y.end());
    }
  }
  return std::strong_ordering::equal;
}

std::size_t Value::hash() const {
  std::size_t h = static_cast<std::size_t>(kind_);
  switch (kind_) {
    case Kind::Int:
    case Kind::Bool:
      hash_combine(h, std::hash<std::int64_t>{}(num_));
      break;
    case Kind::Atom:
      hash_combine(h, std::hash<std::string>{}(atom_set()));
      hash_combine(h, std::hash<std::int64_t>{}(num_));
      break;
    case Kind::Set:
    case Kind::Pair:
      for (const auto& e : elements()) hash_combine(h, e.hash());
      break;
  }
  return h;
}

std::string Value::str() const {
  switch (kind_) {
    case Kind::Int:
      return std::to_string(num_);
    case Kind::Bool:
      return num_ ? "TRUE" : "FALSE";
    case Kind::Atom:
      return atom_name();
    case Kind::Pair:
      return "(" + first().str() + " |-> " + second().str() + ")";
    case Kind::Set: {
      std::string out = "{";
      bool sep = false;
      for (const auto& e : elements()) {
        if (sep) out += ", ";
        out += e.str();
        sep = true;
      }
      return out + "}";
    }
  }
  return {};
}

std::size_t StateHash::operator()(const State& s) const {
  std::size_t h = s.size();
  for (const auto& v : s) hash_combine(h, v.hash());
  return h;
}

std::string to_string(const State& s, const std::vector<std::string>& names) {
  std::ostringstream out;
  out << "{";
  for (std::size_t i = 0; i < s.size() && i < names.size(); ++i) {
    if (i) out << ", ";
    out << names[i] << "=" << s[i].str();
  }
  out << "}";
  return out.str();
}

}  // namespace slp
