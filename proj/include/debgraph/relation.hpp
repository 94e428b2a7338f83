#pragma once

#include <debgraph/version.hpp>

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace debgraph {

// The binary-package relation fields, in the order they are rendered and
// drawn.
enum class RelationKind {
  Depends,
  PreDepends,
  Recommends,
  Suggests,
  Enhances,
  Provides,
  Conflicts,
  Breaks,
  Replaces,
};

inline constexpr std::array<RelationKind, 9> all_relation_kinds{
    RelationKind::Depends,   RelationKind::PreDepends, RelationKind::Recommends,
    RelationKind::Suggests,  RelationKind::Enhances,   RelationKind::Provides,
    RelationKind::Conflicts, RelationKind::Breaks,     RelationKind::Replaces,
};

// Control-field spelling, e.g. "Pre-Depends".
std::string_view field_name(RelationKind kind) noexcept;

// Case-insensitive inverse of field_name().
std::optional<RelationKind> relation_kind_from_field(std::string_view name) noexcept;

struct VersionConstraint {
  ConstraintOp op;
  DebVersion version;

  friend bool operator==(const VersionConstraint&,
                         const VersionConstraint&) = default;
};

struct PackageAtom {
  std::string name;
  std::optional<VersionConstraint> constraint;
  std::vector<std::string> arch_qualifier;
  // Only under Provides: "foo (= 1.2)".
  std::optional<DebVersion> provided_version;

  friend bool operator==(const PackageAtom&, const PackageAtom&) = default;
};

using OrGroup = std::vector<PackageAtom>;

struct RelationExpr {
  std::vector<OrGroup> groups;

  bool empty() const noexcept { return groups.empty(); }

  friend bool operator==(const RelationExpr&, const RelationExpr&) = default;
};

// Package-name lexical rule: at least two characters, the first one
// [a-z0-9], the rest [a-z0-9+.-].
bool is_valid_package_name(std::string_view name) noexcept;

// Parses a relation field value. Error locations are character offsets
// into text.
RelationExpr parse_relation(RelationKind kind, std::string_view text);

std::string render_atom(const PackageAtom& atom);
std::string render_group(const OrGroup& group);
std::string render_relation(const RelationExpr& expr);

} // namespace debgraph
