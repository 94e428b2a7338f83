#include "tar.hpp"

#include <debgraph/error.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <stdexcept>

namespace debgraph::tar {

namespace {

constexpr std::uint64_t max_meta_size = 1u << 20;

std::string_view cstr_field(std::string_view block, std::size_t off,
                            std::size_t len) {
  std::string_view f = block.substr(off, len);
  auto nul = f.find('\0');
  return nul == std::string_view::npos ? f : f.substr(0, nul);
}

[[noreturn]] void malformed(const std::string& what, std::uint64_t offset) {
  throw Error(ErrorCode::MalformedTar,
              "malformed tar at offset " + std::to_string(offset) + ": " + what,
              offset);
}

// Octal numeric field (NUL/space terminated) or GNU base-256 when the high
// bit of the first byte is set.
std::uint64_t numeric_field(std::string_view block, std::size_t off,
                            std::size_t len, std::uint64_t at) {
  std::string_view f = block.substr(off, len);
  auto first = static_cast<unsigned char>(f.front());
  if (first & 0x80) {
    std::uint64_t v = first & 0x3f;
    for (std::size_t i = 1; i < f.size(); ++i) {
      if (v >> 56)
        malformed("numeric field overflow", at);
      v = (v << 8) | static_cast<unsigned char>(f[i]);
    }
    return v;
  }
  while (!f.empty() && (f.front() == ' ' || f.front() == '\0'))
    f.remove_prefix(1);
  auto end = f.find_first_of(std::string_view(" \0", 2));
  if (end != std::string_view::npos)
    f = f.substr(0, end);
  std::uint64_t v = 0;
  if (f.empty())
    return 0;
  auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v, 8);
  if (ec != std::errc{} || ptr != f.data() + f.size())
    malformed("bad octal field", at);
  return v;
}

bool checksum_ok(std::string_view block, std::uint64_t at) {
  std::uint64_t stored = numeric_field(block, 148, 8, at);
  std::uint64_t usum = 0;
  std::int64_t ssum = 0;
  for (std::size_t i = 0; i < block_size; ++i) {
    char c = (i >= 148 && i < 156) ? ' ' : block[i];
    usum += static_cast<unsigned char>(c);
    ssum += static_cast<signed char>(c);
  }
  return stored == usum || static_cast<std::int64_t>(stored) == ssum;
}

bool has_body(char type) noexcept {
  return !(type >= '1' && type <= '6');
}

} // namespace

std::string_view normalize_path(std::string_view path) noexcept {
  for (;;) {
    if (path.starts_with("./"))
      path.remove_prefix(2);
    else if (path.starts_with("/"))
      path.remove_prefix(1);
    else
      return path;
  }
}

Parser::Parser(Selector keep_content, std::uint64_t max_content)
    : keep_(std::move(keep_content)), max_content_(max_content) {}

void Parser::feed(std::string_view chunk) {
  while (!chunk.empty()) {
    switch (state_) {
    case State::Header: {
      std::size_t n = std::min(chunk.size(), block_size - block_.size());
      block_.append(chunk.substr(0, n));
      chunk.remove_prefix(n);
      offset_ += n;
      if (block_.size() == block_size) {
        std::string block = std::move(block_);
        block_.clear();
        on_header(block);
      }
      break;
    }
    case State::Body: {
      std::size_t n = static_cast<std::size_t>(
          std::min<std::uint64_t>(chunk.size(), body_left_));
      if (current_is_meta_)
        meta_buffer_.append(chunk.substr(0, n));
      else if (keep_current_)
        current_.content.append(chunk.substr(0, n));
      chunk.remove_prefix(n);
      offset_ += n;
      body_left_ -= n;
      if (body_left_ == 0) {
        on_body_done();
        state_ = pad_left_ > 0 ? State::Padding : State::Header;
      }
      break;
    }
    case State::Padding: {
      std::size_t n = static_cast<std::size_t>(
          std::min<std::uint64_t>(chunk.size(), pad_left_));
      chunk.remove_prefix(n);
      offset_ += n;
      pad_left_ -= n;
      if (pad_left_ == 0)
        state_ = State::Header;
      break;
    }
    case State::End:
      return;
    }
  }
}

void Parser::finish() {
  if (state_ == State::End || (state_ == State::Header && block_.empty()))
    return;
  malformed("archive ends inside an entry", offset_);
}

void Parser::on_header(std::string_view block) {
  std::uint64_t at = offset_ - block_size;
  if (std::all_of(block.begin(), block.end(), [](char c) { return c == '\0'; })) {
    state_ = State::End;
    return;
  }
  if (!checksum_ok(block, at))
    malformed("header checksum mismatch", at);

  char type = block[156];
  std::uint64_t size = numeric_field(block, 124, 12, at);

  std::string path(cstr_field(block, 0, 100));
  if (block.substr(257, 6) == std::string_view("ustar\0", 6)) {
    std::string_view prefix = cstr_field(block, 345, 155);
    if (!prefix.empty())
      path = std::string(prefix) + "/" + path;
  }

  current_is_meta_ = type == 'L' || type == 'K' || type == 'x' || type == 'g';
  if (current_is_meta_) {
    if (size > max_meta_size)
      malformed("oversized extended header", at);
    meta_buffer_.clear();
  } else {
    if (!long_name_.empty())
      path = std::move(long_name_);
    if (!pax_path_.empty())
      path = std::move(pax_path_);
    if (pax_size_set_)
      size = pax_size_;
    long_name_.clear();
    pax_path_.clear();
    pax_size_set_ = false;
    if (!has_body(type))
      size = 0;
  }

  current_ = Entry{std::move(path), size, type == '\0' ? '0' : type, {}};
  keep_current_ = !current_is_meta_ && keep_ && keep_(current_.path);
  if (keep_current_ && size > max_content_)
    malformed("member '" + current_.path + "' too large to extract", at);

  body_left_ = size;
  pad_left_ = (block_size - size % block_size) % block_size;
  if (size == 0) {
    on_body_done();
    state_ = State::Header;
  } else {
    state_ = State::Body;
  }
}

void Parser::on_body_done() {
  if (!current_is_meta_) {
    entries_.push_back(std::move(current_));
    return;
  }
  char type = current_.type;
  if (type == 'L') {
    long_name_ = std::string(cstr_field(meta_buffer_, 0, meta_buffer_.size()));
  } else if (type == 'x') {
    // "<len> <key>=<value>\n" records
    std::string_view rest = meta_buffer_;
    while (!rest.empty()) {
      auto space = rest.find(' ');
      std::size_t len = 0;
      auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + space, len);
      if (space == std::string_view::npos || ec != std::errc{} ||
          ptr != rest.data() + space || len <= space + 1 || len > rest.size())
        malformed("bad pax record", offset_);
      std::string_view record = rest.substr(space + 1, len - space - 2);
      rest.remove_prefix(len);
      auto eq = record.find('=');
      if (eq == std::string_view::npos)
        malformed("bad pax record", offset_);
      std::string_view key = record.substr(0, eq);
      std::string_view value = record.substr(eq + 1);
      if (key == "path") {
        pax_path_ = std::string(value);
      } else if (key == "size") {
        auto [p, e] = std::from_chars(value.data(), value.data() + value.size(),
                                      pax_size_);
        if (e != std::errc{} || p != value.data() + value.size())
          malformed("bad pax size", offset_);
        pax_size_set_ = true;
      }
    }
  }
  meta_buffer_.clear();
  current_is_meta_ = false;
}

void Writer::add_directory(std::string_view path) {
  std::string p(path);
  if (p.empty() || p.back() != '/')
    p += '/';
  add_header(p, '5', 0, 0755);
}

void Writer::add_file(std::string_view path, std::string_view content,
                      unsigned mode) {
  add_header(path, '0', content.size(), mode);
  out_.append(content);
  out_.append((block_size - content.size() % block_size) % block_size, '\0');
}

void Writer::add_header(std::string_view path, char type, std::uint64_t size,
                        unsigned mode) {
  std::string_view name = path, prefix;
  if (path.size() > 100) {
    std::size_t slash = std::string_view::npos;
    for (std::size_t i = path.find('/'); i != std::string_view::npos && i <= 155;
         i = path.find('/', i + 1)) {
      if (i + 1 < path.size() && path.size() - i - 1 <= 100) {
        slash = i;
        break;
      }
    }
    if (slash == std::string_view::npos)
      throw std::length_error("tar path too long: " + std::string(path));
    prefix = path.substr(0, slash);
    name = path.substr(slash + 1);
  }

  char h[block_size];
  std::memset(h, 0, sizeof h);
  auto put = [&](std::size_t off, std::string_view s) {
    std::memcpy(h + off, s.data(), s.size());
  };
  auto put_octal = [&](std::size_t off, std::size_t width, std::uint64_t v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%0*llo", static_cast<int>(width - 1),
                  static_cast<unsigned long long>(v));
    put(off, std::string_view(buf, width - 1));
  };

  put(0, name);
  put_octal(100, 8, mode);
  put_octal(108, 8, 0);
  put_octal(116, 8, 0);
  put_octal(124, 12, size);
  put_octal(136, 12, 0);
  h[156] = type;
  put(257, std::string_view("ustar\0", 6));
  put(263, "00");
  put(265, "root");
  put(297, "root");
  put(345, prefix);

  std::memset(h + 148, ' ', 8);
  unsigned sum = 0;
  for (char c : h)
    sum += static_cast<unsigned char>(c);
  char chk[8];
  std::snprintf(chk, sizeof chk, "%06o", sum);
  std::memcpy(h + 148, chk, 7); // six digits and a NUL, then the space
  out_.append(h, block_size);
}

std::string Writer::finish() && {
  out_.append(2 * block_size, '\0');
  return std::move(out_);
}

} // namespace debgraph::tar
