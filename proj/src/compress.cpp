#include "compress.hpp"

#include <debgraph/error.hpp>

#include <array>
#include <cstring>

#include <zlib.h>
#if defined(DEBGRAPH_HAVE_LZMA)
#include <lzma.h>
#endif

namespace debgraph::compress {

namespace {

constexpr std::size_t out_chunk = 64 * 1024;

[[noreturn]] void corrupt(std::string_view format, std::string_view detail) {
  throw Error(ErrorCode::MalformedTar, "corrupt " + std::string(format) +
                                           " stream: " + std::string(detail));
}

class PassThrough final : public Decoder {
public:
  explicit PassThrough(Sink sink) : sink_(std::move(sink)) {}
  void write(std::string_view input) override { sink_(input); }
  void finish() override {}

private:
  Sink sink_;
};

class GzipDecoder final : public Decoder {
public:
  explicit GzipDecoder(Sink sink) : sink_(std::move(sink)) {
    std::memset(&zs_, 0, sizeof zs_);
    if (inflateInit2(&zs_, 16 + MAX_WBITS) != Z_OK)
      throw std::bad_alloc();
  }
  ~GzipDecoder() override { inflateEnd(&zs_); }

  void write(std::string_view input) override {
    zs_.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(input.data()));
    zs_.avail_in = static_cast<uInt>(input.size());
    std::array<char, out_chunk> out;
    while (zs_.avail_in > 0) {
      if (ended_) {
        // Concatenated gzip members decode as one stream.
        inflateReset(&zs_);
        ended_ = false;
      }
      zs_.next_out = reinterpret_cast<Bytef*>(out.data());
      zs_.avail_out = static_cast<uInt>(out.size());
      int rc = inflate(&zs_, Z_NO_FLUSH);
      if (rc != Z_OK && rc != Z_STREAM_END && rc != Z_BUF_ERROR)
        corrupt("gzip", zs_.msg ? zs_.msg : "inflate failed");
      std::size_t produced = out.size() - zs_.avail_out;
      if (produced > 0)
        sink_(std::string_view(out.data(), produced));
      if (rc == Z_STREAM_END)
        ended_ = true;
      else if (rc == Z_BUF_ERROR && produced == 0)
        break;
    }
  }

  void finish() override {
    if (!ended_)
      corrupt("gzip", "unexpected end of data");
  }

private:
  Sink sink_;
  z_stream zs_;
  bool ended_ = false;
};

#if defined(DEBGRAPH_HAVE_LZMA)
class XzDecoder final : public Decoder {
public:
  explicit XzDecoder(Sink sink) : sink_(std::move(sink)) {
    if (lzma_stream_decoder(&ls_, UINT64_MAX, LZMA_CONCATENATED) != LZMA_OK)
      throw std::bad_alloc();
  }
  ~XzDecoder() override { lzma_end(&ls_); }

  void write(std::string_view input) override {
    ls_.next_in = reinterpret_cast<const std::uint8_t*>(input.data());
    ls_.avail_in = input.size();
    run(LZMA_RUN);
  }

  void finish() override {
    ls_.next_in = nullptr;
    ls_.avail_in = 0;
    if (!run(LZMA_FINISH))
      corrupt("xz", "unexpected end of data");
  }

private:
  bool run(lzma_action action) {
    std::array<std::uint8_t, out_chunk> out;
    for (;;) {
      ls_.next_out = out.data();
      ls_.avail_out = out.size();
      lzma_ret rc = lzma_code(&ls_, action);
      std::size_t produced = out.size() - ls_.avail_out;
      if (produced > 0)
        sink_(std::string_view(reinterpret_cast<const char*>(out.data()), produced));
      if (rc == LZMA_STREAM_END)
        return true;
      if (rc != LZMA_OK) {
        if (rc == LZMA_BUF_ERROR && action == LZMA_FINISH)
          return false;
        corrupt("xz", "lzma error " + std::to_string(static_cast<int>(rc)));
      }
      if (ls_.avail_in == 0 && ls_.avail_out != 0 && action == LZMA_RUN)
        return false;
    }
  }

  Sink sink_;
  lzma_stream ls_ = LZMA_STREAM_INIT;
};
#endif

} // namespace

std::optional<Format> format_from_member(std::string_view member,
                                         std::string_view stem) {
  if (!member.starts_with(stem))
    return std::nullopt;
  std::string_view ext = member.substr(stem.size());
  if (ext.empty())
    return Format::None;
  if (ext == ".gz")
    return Format::Gzip;
  if (ext == ".xz")
    return Format::Xz;
  if (ext == ".zst")
    return Format::Zstd;
  return std::nullopt;
}

std::string_view extension(Format f) noexcept {
  switch (f) {
  case Format::None: return "";
  case Format::Gzip: return ".gz";
  case Format::Xz: return ".xz";
  case Format::Zstd: return ".zst";
  }
  return "";
}

bool supported(Format f) noexcept {
  switch (f) {
  case Format::None:
  case Format::Gzip:
    return true;
  case Format::Xz:
#if defined(DEBGRAPH_HAVE_LZMA)
    return true;
#else
    return false;
#endif
  case Format::Zstd:
    return false;
  }
  return false;
}

std::unique_ptr<Decoder> make_decoder(Format f, Sink sink) {
  switch (f) {
  case Format::None:
    return std::make_unique<PassThrough>(std::move(sink));
  case Format::Gzip:
    return std::make_unique<GzipDecoder>(std::move(sink));
  case Format::Xz:
#if defined(DEBGRAPH_HAVE_LZMA)
    return std::make_unique<XzDecoder>(std::move(sink));
#else
    break;
#endif
  case Format::Zstd:
    break;
  }
  throw Error(ErrorCode::UnsupportedCompression,
              "unsupported compression '" +
                  std::string(extension(f).substr(1)) + "'");
}

std::string gzip(std::string_view data) {
  z_stream zs;
  std::memset(&zs, 0, sizeof zs);
  if (deflateInit2(&zs, 9, Z_DEFLATED, 16 + MAX_WBITS, 8,
                   Z_DEFAULT_STRATEGY) != Z_OK)
    throw std::bad_alloc();
  gz_header header;
  std::memset(&header, 0, sizeof header);
  header.os = 3;
  deflateSetHeader(&zs, &header);

  std::string out;
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  zs.avail_in = static_cast<uInt>(data.size());
  std::array<char, out_chunk> buf;
  int rc;
  do {
    zs.next_out = reinterpret_cast<Bytef*>(buf.data());
    zs.avail_out = static_cast<uInt>(buf.size());
    rc = deflate(&zs, Z_FINISH);
    out.append(buf.data(), buf.size() - zs.avail_out);
  } while (rc == Z_OK);
  deflateEnd(&zs);
  if (rc != Z_STREAM_END)
    throw std::runtime_error("gzip compression failed");
  return out;
}

} // namespace debgraph::compress
