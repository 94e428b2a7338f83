#pragma once

// Streaming ustar/GNU tar parsing and a minimal deterministic ustar writer.

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace debgraph::tar {

inline constexpr std::size_t block_size = 512;

struct Entry {
  std::string path;
  std::uint64_t size = 0;
  char type = '0';
  // Filled only for entries selected by the parser's predicate.
  std::string content;
};

// Push parser: feed() arbitrary chunks of the uncompressed archive, then
// finish(). Errors are Error{MalformedTar}.
class Parser {
public:
  using Selector = std::function<bool(std::string_view path)>;

  explicit Parser(Selector keep_content = {},
                  std::uint64_t max_content = 16u << 20);

  void feed(std::string_view chunk);
  void finish();

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::vector<Entry> take_entries() && { return std::move(entries_); }

private:
  enum class State { Header, Body, Padding, End };

  void on_header(std::string_view block);
  void on_body_done();

  Selector keep_;
  std::uint64_t max_content_;
  std::vector<Entry> entries_;

  State state_ = State::Header;
  std::string block_;
  std::uint64_t body_left_ = 0;
  std::uint64_t pad_left_ = 0;
  std::uint64_t offset_ = 0;

  Entry current_;
  bool keep_current_ = false;
  bool current_is_meta_ = false;
  std::string meta_buffer_;
  std::string long_name_;
  std::string pax_path_;
  bool pax_size_set_ = false;
  std::uint64_t pax_size_ = 0;
};

// Path normalised for comparisons: leading "./" and "/" removed.
std::string_view normalize_path(std::string_view path) noexcept;

class Writer {
public:
  void add_directory(std::string_view path);
  void add_file(std::string_view path, std::string_view content,
                unsigned mode = 0644);

  // Appends the two terminating zero blocks.
  std::string finish() &&;

private:
  void add_header(std::string_view path, char type, std::uint64_t size,
                  unsigned mode);

  std::string out_;
};

} // namespace debgraph::tar
