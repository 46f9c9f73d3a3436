#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace slp {

struct SourcePos {
  std::size_t offset = 0;
  int line = 1;
  int column = 1;
};

/// Byte range of a syntax node, with 1-based line/column for both ends.
struct SourceSpan {
  SourcePos begin;
  SourcePos end;

  bool contains(const SourceSpan& other) const {
    return begin.offset <= other.begin.offset && other.end.offset <= end.offset;
  }
  std::string str() const;
};

/// Error raised by every toolkit layer. `code` is a stable kebab-case
/// identifier (`unbound-name`, `state-space-exceeded`, ...) that callers and
/// the CLI dispatch on; `message` is for humans.
class SlpError : public std::runtime_error {
 public:
  SlpError(std::string code, const std::string& message,
           std::optional<SourceSpan> span = std::nullopt)
      : std::runtime_error(message), code_(std::move(code)), span_(span) {}

  const std::string& code() const { return code_; }
  const std::optional<SourceSpan>& span() const { return span_; }

 private:
  std::string code_;
  std::optional<SourceSpan> span_;
};

}  // namespace slp
