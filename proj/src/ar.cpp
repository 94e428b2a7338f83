#include "ar.hpp"

#include <debgraph/error.hpp>

#include <array>
#include <charconv>
#include <cstdio>

namespace debgraph::ar {

namespace {

constexpr std::size_t chunk_size = 64 * 1024;

std::string_view trim_right(std::string_view s) noexcept {
  while (!s.empty() && s.back() == ' ')
    s.remove_suffix(1);
  return s;
}

// Reads up to n bytes; returns how many were actually read.
std::size_t read_some(std::istream& in, char* buf, std::size_t n) {
  in.read(buf, static_cast<std::streamsize>(n));
  return static_cast<std::size_t>(in.gcount());
}

} // namespace

Reader::Reader(std::istream& in) : in_(in) {
  std::array<char, 8> magic{};
  std::size_t got = read_some(in_, magic.data(), magic.size());
  position_ += got;
  if (got != magic.size() ||
      std::string_view(magic.data(), magic.size()) != global_magic)
    throw Error(ErrorCode::BadArMagic, "not an ar archive (bad magic)", 0);
}

void Reader::skip(std::uint64_t n) {
  std::array<char, 4096> buf{};
  while (n > 0) {
    std::size_t want = n < buf.size() ? static_cast<std::size_t>(n) : buf.size();
    std::size_t got = read_some(in_, buf.data(), want);
    position_ += got;
    if (got != want)
      throw Error(ErrorCode::BadMemberHeader,
                  "archive truncated inside a member", position_);
    n -= got;
  }
}

std::optional<MemberHeader> Reader::next() {
  skip(body_left_);
  body_left_ = 0;
  if (pad_pending_) {
    // The pad byte may be missing at the very end of the archive.
    char c;
    std::size_t got = read_some(in_, &c, 1);
    position_ += got;
    pad_pending_ = false;
    if (got == 0) {
      in_.clear(in_.rdstate() & ~std::ios::failbit);
      return std::nullopt;
    }
  }

  std::array<char, header_size> raw{};
  std::uint64_t header_at = position_;
  std::size_t got = read_some(in_, raw.data(), raw.size());
  position_ += got;
  if (got == 0)
    return std::nullopt;
  if (got != raw.size())
    throw Error(ErrorCode::BadMemberHeader, "truncated member header",
                header_at);

  std::string_view h(raw.data(), raw.size());
  if (h.substr(58, 2) != "`\n")
    throw Error(ErrorCode::BadMemberHeader,
                "member header at offset " + std::to_string(header_at) +
                    " lacks the terminator",
                header_at);

  std::string_view name = trim_right(h.substr(0, 16));
  if (!name.empty() && name.back() == '/' && name != "/")
    name.remove_suffix(1);
  if (name.empty())
    throw Error(ErrorCode::BadMemberHeader, "member with an empty name",
                header_at);

  std::string_view size_text = trim_right(h.substr(48, 10));
  std::uint64_t size = 0;
  auto [ptr, ec] =
      std::from_chars(size_text.data(), size_text.data() + size_text.size(), size);
  if (size_text.empty() || ec != std::errc{} ||
      ptr != size_text.data() + size_text.size())
    throw Error(ErrorCode::BadMemberHeader,
                "member '" + std::string(name) + "' has a bad size field",
                header_at);

  body_left_ = size;
  pad_pending_ = size % 2 != 0;
  return MemberHeader{std::string(name), size, position_};
}

void Reader::read_body(const std::function<void(std::string_view)>& sink) {
  std::array<char, chunk_size> buf;
  while (body_left_ > 0) {
    std::size_t want =
        body_left_ < buf.size() ? static_cast<std::size_t>(body_left_) : buf.size();
    std::size_t got = read_some(in_, buf.data(), want);
    position_ += got;
    body_left_ -= got;
    if (got != want)
      throw Error(ErrorCode::BadMemberHeader,
                  "archive truncated inside a member", position_);
    sink(std::string_view(buf.data(), got));
  }
}

std::string Reader::read_body() {
  std::string out;
  read_body([&](std::string_view chunk) { out.append(chunk); });
  return out;
}

Writer::Writer() : out_(global_magic) {}

void Writer::add(std::string_view name, std::string_view body) {
  // name(16) mtime(12) uid(6) gid(6) mode(8) size(10) fmag(2)
  char header[header_size + 1];
  std::snprintf(header, sizeof header, "%-16.16s%-12s%-6s%-6s%-8s%-10zu`\n",
                std::string(name).c_str(), "0", "0", "0", "100644", body.size());
  out_.append(header, header_size);
  out_.append(body);
  if (body.size() % 2 != 0)
    out_ += '\n';
}

} // namespace debgraph::ar
