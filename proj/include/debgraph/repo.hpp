#pragma once

#include <debgraph/control.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace debgraph {

struct IndexEntry {
  PackageMeta meta;
  // Relative to the scanned root, '/'-separated.
  std::string filename;
  std::uint64_t size = 0;
  std::string sha256;

  friend bool operator==(const IndexEntry&, const IndexEntry&) = default;
};

struct ScanError {
  std::string path;
  std::string message;

  friend bool operator==(const ScanError&, const ScanError&) = default;
};

struct ScanResult {
  // Sorted by name, then version descending, then filename.
  std::vector<IndexEntry> entries;
  // Files that could not be indexed, sorted by path.
  std::vector<ScanError> errors;
};

// Indexes one .deb: control stanza, size and SHA-256.
IndexEntry index_deb(const std::filesystem::path& root,
                     const std::filesystem::path& file);

// .deb files below root in path order, skipping hidden directories.
// Throws Error{IoError} when root cannot be listed.
std::vector<std::filesystem::path> find_debs(const std::filesystem::path& root);

// Indexes every .deb below root, reading and hashing files on all OpenMP
// threads. A file that fails is reported in errors and does not stop the
// scan. Throws Error{IoError} when root cannot be listed.
ScanResult scan_repository(const std::filesystem::path& root);

// Single-threaded reference of scan_repository(); same result.
ScanResult scan_repository_serial(const std::filesystem::path& root);

// Packages index text: each entry's canonical stanza followed by Filename,
// Size and SHA256.
std::string render_index(std::span<const IndexEntry> entries);

// Inverse of render_index(). Throws the stanza and package errors, and
// Error{MissingMandatoryField} when Filename, Size or SHA256 is absent.
std::vector<IndexEntry> parse_index(std::string_view text);

struct Provider {
  std::size_t package = 0; // index into PackageUniverse::packages()
  std::optional<DebVersion> provided_version;

  friend bool operator==(const Provider&, const Provider&) = default;
};

// An immutable-after-load set of packages with name and Provides indexes.
class PackageUniverse {
public:
  const std::vector<PackageMeta>& packages() const noexcept { return packages_; }
  const std::map<std::string, std::vector<std::size_t>>& by_name() const noexcept {
    return by_name_;
  }
  const std::map<std::string, std::vector<Provider>>& provides_index() const noexcept {
    return provides_;
  }

  bool empty() const noexcept { return packages_.empty(); }
  std::size_t size() const noexcept { return packages_.size(); }
  const PackageMeta& operator[](std::size_t i) const { return packages_[i]; }

  // Indices of the real packages called name, in load order.
  std::span<const std::size_t> versions_of(std::string_view name) const;
  std::span<const Provider> providers_of(std::string_view name) const;

  // Highest version of name; nullopt when no real package has that name.
  std::optional<std::size_t> newest(std::string_view name) const;

  // Adds a package unless (name, version, architecture) is already present,
  // in which case the first occurrence wins and false is returned.
  bool add(PackageMeta meta);

  friend bool operator==(const PackageUniverse&, const PackageUniverse&) = default;

private:
  std::vector<PackageMeta> packages_;
  std::map<std::string, std::vector<std::size_t>> by_name_;
  std::map<std::string, std::vector<Provider>> provides_;
};

// Loads Packages index texts in order. Errors carry the input ordinal and
// stanza number in their message.
PackageUniverse load_universe(std::span<const std::string> index_texts);

} // namespace debgraph
