#pragma once

#include <debgraph/relation.hpp>
#include <debgraph/version.hpp>

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace debgraph {

struct ControlField {
  std::string name;
  // First line trimmed; continuation lines joined with '\n', each with its
  // one leading space removed (so " ." is stored as ".").
  std::string value;
  bool multiline = false;

  friend bool operator==(const ControlField&, const ControlField&) = default;
};

// One deb822 paragraph. Field order and name casing are kept as parsed;
// lookups are case-insensitive.
class ControlStanza {
public:
  ControlStanza() = default;

  const std::vector<ControlField>& fields() const noexcept { return fields_; }
  bool empty() const noexcept { return fields_.empty(); }
  std::size_t size() const noexcept { return fields_.size(); }

  const ControlField* find(std::string_view name) const noexcept;
  std::optional<std::string> get(std::string_view name) const;
  bool contains(std::string_view name) const noexcept {
    return find(name) != nullptr;
  }

  // Appends a field. Throws Error{MalformedField} for an invalid name or a
  // value that cannot be rendered (padded first line, blank continuation
  // line, carriage return) and Error{DuplicateField} for a case-insensitive
  // repeat. The multiline flag follows from the value.
  void append(std::string name, std::string value);

  // Replaces the value of an existing field or appends a new one.
  void set(std::string name, std::string value);

  bool erase(std::string_view name) noexcept;

  friend bool operator==(const ControlStanza&, const ControlStanza&) = default;

private:
  std::vector<ControlField> fields_;
};

// deb822 field-name rule: printable US-ASCII without space or ':', not
// starting with '#' or '-'.
bool is_valid_field_name(std::string_view name) noexcept;

bool iequals(std::string_view a, std::string_view b) noexcept;

// Throws Error{MalformedField, DuplicateField, ContinuationWithoutField}
// carrying the 1-based line number.
std::vector<ControlStanza> parse_stanzas(std::string_view text);

std::string render_stanza(const ControlStanza& stanza);
std::string render_stanzas(const std::vector<ControlStanza>& stanzas);

struct PackageMeta {
  std::string name;
  DebVersion version;
  std::string architecture;
  std::map<RelationKind, RelationExpr> relations;
  std::optional<std::string> description;
  ControlStanza extra;

  const RelationExpr* relation(RelationKind kind) const noexcept;

  friend bool operator==(const PackageMeta&, const PackageMeta&) = default;
};

// Throws Error{MissingMandatoryField, BadPackageName} or the version and
// relation errors of the offending field, prefixed with its name.
PackageMeta to_package_meta(const ControlStanza& stanza);

// Canonical stanza for a package: Package, Version, Architecture, the
// extra fields in their original order, the present relations in
// RelationKind order, then Description.
ControlStanza to_stanza(const PackageMeta& meta);

} // namespace debgraph
