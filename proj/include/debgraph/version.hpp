#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace debgraph {

// A Debian version "[epoch:]upstream[-revision]".
//
// Structural equality (operator==) compares the stored parts. Ordering
// equality is weaker: "1.0", "1.00" and "1.0-0" all compare Equal under
// compare_versions() while being distinct values.
struct DebVersion {
  std::uint32_t epoch = 0;
  std::string upstream;
  std::optional<std::string> revision;

  std::string str() const;

  friend bool operator==(const DebVersion&, const DebVersion&) = default;
};

// Throws Error{EmptyVersion, NonNumericEpoch, IllegalCharacter}; the error
// location is the offending character offset in s.
DebVersion parse_version(std::string_view s);

// Debian ordering of two version strings' components (dpkg's verrevcmp):
// alternating non-digit and digit runs, '~' sorting before everything
// including the end of the string, letters before other characters.
int compare_version_part(std::string_view a, std::string_view b) noexcept;

std::strong_ordering compare_versions(const DebVersion& a,
                                      const DebVersion& b) noexcept;

enum class ConstraintOp { Less, LessEqual, Equal, GreaterEqual, Greater };

std::string_view to_string(ConstraintOp op) noexcept;
std::optional<ConstraintOp> parse_constraint_op(std::string_view s) noexcept;

bool satisfies(const DebVersion& candidate, ConstraintOp op,
               const DebVersion& bound) noexcept;

// Strict weak ordering adaptor for sorted containers and algorithms.
struct VersionLess {
  bool operator()(const DebVersion& a, const DebVersion& b) const noexcept {
    return compare_versions(a, b) < 0;
  }
};

} // namespace debgraph
