#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace debgraph {

enum class ErrorCode {
  // control stanzas
  MalformedField,
  DuplicateField,
  ContinuationWithoutField,
  MissingMandatoryField,
  BadPackageName,
  // versions
  EmptyVersion,
  NonNumericEpoch,
  IllegalCharacter,
  // relation fields
  BadAtomName,
  BadConstraintOp,
  UnbalancedParenthesis,
  AlternativesInProvides,
  BuildProfileRestriction,
  // .deb containers
  BadArMagic,
  BadMemberHeader,
  MissingDebianBinary,
  UnsupportedFormatVersion,
  MissingControlArchive,
  MissingDataArchive,
  MissingControlFile,
  UnsupportedCompression,
  MalformedTar,
  // repository and graph
  IoError,
  UnknownRoot,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library. The location is a 1-based line
// number for stanza errors and a 0-based character offset for version and
// relation errors; absent when the error has no textual position.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, std::string message,
        std::optional<std::size_t> location = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> location() const noexcept { return location_; }

  // Same error with extra context in front of the message, location kept.
  Error with_context(std::string_view context) const;

private:
  ErrorCode code_;
  std::optional<std::size_t> location_;
};

} // namespace debgraph
