#pragma once

// Classic Unix ar containers as used by .deb files: an 8-byte global magic
// followed by members, each a 60-byte ASCII header and a body padded to an
// even offset.

#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <string>
#include <string_view>

namespace debgraph::ar {

inline constexpr std::string_view global_magic = "!<arch>\n";
inline constexpr std::size_t header_size = 60;

struct MemberHeader {
  std::string name;
  std::uint64_t size = 0;
  // Offset of the member body from the start of the archive.
  std::uint64_t offset = 0;
};

// Sequential reader. It never consumes more than the global magic, the
// member headers and the declared bodies (plus padding) of the members it
// was asked to step over.
class Reader {
public:
  // Throws Error{BadArMagic}.
  explicit Reader(std::istream& in);

  // Skips whatever is left of the current member and reads the next
  // header. Returns nullopt at a clean end of archive. Throws
  // Error{BadMemberHeader}.
  std::optional<MemberHeader> next();

  // Streams the unread part of the current member body to sink in chunks.
  // Throws Error{BadMemberHeader} when the archive ends early.
  void read_body(const std::function<void(std::string_view)>& sink);

  std::string read_body();

  // Bytes consumed so far.
  std::uint64_t position() const noexcept { return position_; }

private:
  void skip(std::uint64_t n);

  std::istream& in_;
  std::uint64_t position_ = 0;
  std::uint64_t body_left_ = 0;
  bool pad_pending_ = false;
};

// Deterministic writer: zero timestamps and owner ids, mode 100644.
class Writer {
public:
  Writer();

  void add(std::string_view name, std::string_view body);

  const std::string& bytes() const noexcept { return out_; }
  std::string take() && { return std::move(out_); }

private:
  std::string out_;
};

} // namespace debgraph::ar
