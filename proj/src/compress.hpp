#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace debgraph::compress {

enum class Format { None, Gzip, Xz, Zstd };

// Format named by a member suffix: "control.tar.gz" -> Gzip, "data.tar" ->
// None. nullopt for an unknown suffix.
std::optional<Format> format_from_member(std::string_view member,
                                         std::string_view stem);

std::string_view extension(Format f) noexcept;

bool supported(Format f) noexcept;

using Sink = std::function<void(std::string_view)>;

// Incremental decoder writing decompressed chunks to a sink.
class Decoder {
public:
  virtual ~Decoder() = default;
  virtual void write(std::string_view input) = 0;
  // Throws if the stream was truncated.
  virtual void finish() = 0;
};

// Throws Error{UnsupportedCompression} when no decoder is built in.
std::unique_ptr<Decoder> make_decoder(Format f, Sink sink);

// Deterministic gzip: zero mtime, no file name, OS byte 3.
std::string gzip(std::string_view data);

} // namespace debgraph::compress
