#include <debgraph/error.hpp>

namespace debgraph {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
  case ErrorCode::MalformedField: return "MalformedField";
  case ErrorCode::DuplicateField: return "DuplicateField";
  case ErrorCode::ContinuationWithoutField: return "ContinuationWithoutField";
  case ErrorCode::MissingMandatoryField: return "MissingMandatoryField";
  case ErrorCode::BadPackageName: return "BadPackageName";
  case ErrorCode::EmptyVersion: return "EmptyVersion";
  case ErrorCode::NonNumericEpoch: return "NonNumericEpoch";
  case ErrorCode::IllegalCharacter: return "IllegalCharacter";
  case ErrorCode::BadAtomName: return "BadAtomName";
  case ErrorCode::BadConstraintOp: return "BadConstraintOp";
  case ErrorCode::UnbalancedParenthesis: return "UnbalancedParenthesis";
  case ErrorCode::AlternativesInProvides: return "AlternativesInProvides";
  case ErrorCode::BuildProfileRestriction: return "BuildProfileRestriction";
  case ErrorCode::BadArMagic: return "BadArMagic";
  case ErrorCode::BadMemberHeader: return "BadMemberHeader";
  case ErrorCode::MissingDebianBinary: return "MissingDebianBinary";
  case ErrorCode::UnsupportedFormatVersion: return "UnsupportedFormatVersion";
  case ErrorCode::MissingControlArchive: return "MissingControlArchive";
  case ErrorCode::MissingDataArchive: return "MissingDataArchive";
  case ErrorCode::MissingControlFile: return "MissingControlFile";
  case ErrorCode::UnsupportedCompression: return "UnsupportedCompression";
  case ErrorCode::MalformedTar: return "MalformedTar";
  case ErrorCode::IoError: return "IoError";
  case ErrorCode::UnknownRoot: return "UnknownRoot";
  }
  return "UnknownError";
}

Error::Error(ErrorCode code, std::string message,
             std::optional<std::size_t> location)
    : std::runtime_error(std::move(message)), code_(code), location_(location) {}

Error Error::with_context(std::string_view context) const {
  std::string msg(context);
  msg += ": ";
  msg += what();
  return Error(code_, std::move(msg), location_);
}

} // namespace debgraph
