#include <debgraph/deb.hpp>

#include <debgraph/error.hpp>

#include "ar.hpp"
#include "compress.hpp"
#include "tar.hpp"

#include <fstream>
#include <set>
#include <streambuf>

namespace debgraph {

namespace {

constexpr std::uint64_t max_debian_binary_size = 1024;

class SpanBuf : public std::streambuf {
public:
  explicit SpanBuf(std::span<const char> bytes) {
    char* p = const_cast<char*>(bytes.data());
    setg(p, p, p + bytes.size());
  }
};

// Next member whose name does not start with '_' (reserved for
// vendor additions the reader ignores).
std::optional<ar::MemberHeader> next_payload_member(ar::Reader& reader) {
  for (;;) {
    auto m = reader.next();
    if (!m || !m->name.starts_with('_'))
      return m;
  }
}

compress::Format member_format(const std::string& name, std::string_view stem) {
  auto format = compress::format_from_member(name, stem);
  if (!format)
    throw Error(ErrorCode::UnsupportedCompression,
                "unsupported archive member '" + name + "'");
  if (!compress::supported(*format))
    throw Error(ErrorCode::UnsupportedCompression,
                "unsupported compression '" +
                    std::string(compress::extension(*format).substr(1)) +
                    "' in member '" + name + "'");
  return *format;
}

void stream_tar(ar::Reader& reader, compress::Format format, tar::Parser& parser) {
  auto decoder = compress::make_decoder(
      format, [&](std::string_view chunk) { parser.feed(chunk); });
  reader.read_body([&](std::string_view chunk) { decoder->write(chunk); });
  decoder->finish();
  parser.finish();
}

} // namespace

DebArchive read_deb(std::istream& in) {
  ar::Reader reader(in);
  DebArchive deb;

  auto member = reader.next();
  if (!member || member->name != "debian-binary")
    throw Error(ErrorCode::MissingDebianBinary,
                "first member is not 'debian-binary'");
  if (member->size > max_debian_binary_size)
    throw Error(ErrorCode::UnsupportedFormatVersion,
                "oversized 'debian-binary' member");
  std::string version = reader.read_body();
  if (auto nl = version.find('\n'); nl != std::string::npos)
    version.resize(nl);
  if (version != "2.0")
    throw Error(ErrorCode::UnsupportedFormatVersion,
                "unsupported .deb format version '" + version + "'");
  deb.format_version = std::move(version);

  member = next_payload_member(reader);
  if (!member || !member->name.starts_with("control.tar"))
    throw Error(ErrorCode::MissingControlArchive,
                "missing control archive member");
  deb.control_member_name = member->name;
  {
    tar::Parser parser([](std::string_view path) {
      return tar::normalize_path(path) == "control";
    });
    stream_tar(reader, member_format(member->name, "control.tar"), parser);

    const tar::Entry* control = nullptr;
    for (const auto& e : parser.entries())
      if (tar::normalize_path(e.path) == "control" && e.type == '0')
        control = &e;
    if (control == nullptr)
      throw Error(ErrorCode::MissingControlFile,
                  "control archive has no './control' file");

    auto stanzas = parse_stanzas(control->content);
    if (stanzas.size() != 1)
      throw Error(ErrorCode::MalformedField,
                  "control file holds " + std::to_string(stanzas.size()) +
                      " stanzas instead of one");
    deb.control = std::move(stanzas.front());
    to_package_meta(deb.control); // mandatory fields and their syntax
  }

  member = next_payload_member(reader);
  if (!member || !member->name.starts_with("data.tar"))
    throw Error(ErrorCode::MissingDataArchive, "missing data archive member");
  deb.data_member_name = member->name;
  {
    tar::Parser parser;
    stream_tar(reader, member_format(member->name, "data.tar"), parser);
    for (auto& e : std::move(parser).take_entries())
      deb.data_members.push_back(DataMember{std::move(e.path), e.size});
  }

  deb.raw_size = reader.position() + (member->size % 2);
  return deb;
}

DebArchive read_deb(std::span<const char> bytes) {
  SpanBuf buf(bytes);
  std::istream in(&buf);
  return read_deb(in);
}

DebArchive read_deb_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  return read_deb(in);
}

std::string build_fixture_deb(const PackageMeta& meta,
                              std::span<const FixtureFile> files) {
  tar::Writer control;
  control.add_directory("./");
  control.add_file("./control", render_stanza(to_stanza(meta)));

  tar::Writer data;
  data.add_directory("./");
  std::set<std::string> dirs;
  for (const auto& f : files) {
    std::string_view rel = tar::normalize_path(f.path);
    for (auto slash = rel.find('/'); slash != std::string_view::npos;
         slash = rel.find('/', slash + 1)) {
      std::string dir = "./" + std::string(rel.substr(0, slash + 1));
      if (dirs.insert(dir).second)
        data.add_directory(dir);
    }
    data.add_file("./" + std::string(rel), f.content);
  }

  ar::Writer deb;
  deb.add("debian-binary", "2.0\n");
  deb.add("control.tar.gz", compress::gzip(std::move(control).finish()));
  deb.add("data.tar.gz", compress::gzip(std::move(data).finish()));
  return std::move(deb).take();
}

} // namespace debgraph
