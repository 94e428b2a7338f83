#pragma once

#include <debgraph/control.hpp>

#include <cstdint>
#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace debgraph {

struct DataMember {
  std::string path;
  std::uint64_t size = 0;

  friend bool operator==(const DataMember&, const DataMember&) = default;
};

// A binary package container: "debian-binary", control.tar[.gz|.xz|.zst]
// and data.tar[.*], in that order.
struct DebArchive {
  std::string format_version;
  ControlStanza control;
  std::vector<DataMember> data_members;
  std::string control_member_name;
  std::string data_member_name;
  std::uint64_t raw_size = 0;
};

// Reads a .deb from a stream. Data member contents are listed, never
// extracted. The reader stops after the data member, so it consumes no
// byte beyond the declared member sizes.
//
// Throws Error{BadArMagic, BadMemberHeader, MissingDebianBinary,
// UnsupportedFormatVersion, MissingControlArchive, MissingDataArchive,
// MissingControlFile, UnsupportedCompression, MalformedTar} and the
// stanza errors of a malformed control file.
DebArchive read_deb(std::istream& in);
DebArchive read_deb(std::span<const char> bytes);
DebArchive read_deb_file(const std::filesystem::path& path);

struct FixtureFile {
  std::string path;
  std::string content;
};

// Builds a reproducible .deb for tests and fixtures: gzip-compressed ustar
// members, zero timestamps, root ownership.
std::string build_fixture_deb(const PackageMeta& meta,
                              std::span<const FixtureFile> files = {});

} // namespace debgraph
