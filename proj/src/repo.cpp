#include <debgraph/repo.hpp>

#include <debgraph/deb.hpp>
#include <debgraph/error.hpp>
#include <debgraph/sha256.hpp>

#include <algorithm>
#include <charconv>
#include <variant>

namespace debgraph {

namespace fs = std::filesystem;

namespace {

bool entry_order(const IndexEntry& a, const IndexEntry& b) {
  if (a.meta.name != b.meta.name)
    return a.meta.name < b.meta.name;
  if (auto c = compare_versions(a.meta.version, b.meta.version); c != 0)
    return c > 0;
  return a.filename < b.filename;
}

using Outcome = std::variant<IndexEntry, ScanError>;

Outcome index_one(const fs::path& root, const fs::path& file) {
  try {
    return index_deb(root, file);
  } catch (const std::exception& e) {
    return ScanError{file.lexically_relative(root).generic_string(), e.what()};
  }
}

ScanResult assemble(std::vector<Outcome> outcomes) {
  ScanResult result;
  for (auto& o : outcomes) {
    if (auto* e = std::get_if<IndexEntry>(&o))
      result.entries.push_back(std::move(*e));
    else
      result.errors.push_back(std::move(std::get<ScanError>(o)));
  }
  std::sort(result.entries.begin(), result.entries.end(), entry_order);
  std::sort(result.errors.begin(), result.errors.end(),
            [](const ScanError& a, const ScanError& b) { return a.path < b.path; });
  return result;
}

const std::vector<std::string_view> index_fields{"Filename", "Size", "SHA256"};

} // namespace

IndexEntry index_deb(const fs::path& root, const fs::path& file) {
  DebArchive deb = read_deb_file(file);
  IndexEntry entry;
  entry.meta = to_package_meta(deb.control);
  entry.filename = file.lexically_relative(root).generic_string();
  std::error_code ec;
  entry.size = fs::file_size(file, ec);
  if (ec)
    throw Error(ErrorCode::IoError,
                "cannot stat '" + file.string() + "': " + ec.message());
  entry.sha256 = sha256_file(file);
  return entry;
}

std::vector<fs::path> find_debs(const fs::path& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec))
    throw Error(ErrorCode::IoError,
                "cannot read repository root '" + root.string() + "'");

  std::vector<fs::path> files;
  fs::recursive_directory_iterator it(root, ec), end;
  if (ec)
    throw Error(ErrorCode::IoError, "cannot read repository root '" +
                                        root.string() + "': " + ec.message());
  for (; it != end; it.increment(ec)) {
    if (ec)
      throw Error(ErrorCode::IoError,
                  "error while listing '" + root.string() + "': " + ec.message());
    const auto& p = it->path();
    bool hidden = p.filename().string().starts_with('.');
    if (it->is_directory(ec)) {
      if (hidden)
        it.disable_recursion_pending();
      continue;
    }
    if (it->is_regular_file(ec) && p.extension() == ".deb")
      files.push_back(p);
  }
  std::sort(files.begin(), files.end());
  return files;
}

ScanResult scan_repository(const fs::path& root) {
  std::vector<fs::path> files = find_debs(root);
  std::vector<Outcome> outcomes(files.size());

  const auto n = static_cast<std::ptrdiff_t>(files.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    outcomes[static_cast<std::size_t>(i)] =
        index_one(root, files[static_cast<std::size_t>(i)]);

  return assemble(std::move(outcomes));
}

ScanResult scan_repository_serial(const fs::path& root) {
  std::vector<fs::path> files = find_debs(root);
  std::vector<Outcome> outcomes;
  outcomes.reserve(files.size());
  for (const auto& f : files)
    outcomes.push_back(index_one(root, f));
  return assemble(std::move(outcomes));
}

std::string render_index(std::span<const IndexEntry> entries) {
  std::vector<ControlStanza> stanzas;
  stanzas.reserve(entries.size());
  for (const auto& e : entries) {
    ControlStanza s = to_stanza(e.meta);
    for (auto f : index_fields)
      s.erase(f);
    s.append("Filename", e.filename);
    s.append("Size", std::to_string(e.size));
    s.append("SHA256", e.sha256);
    stanzas.push_back(std::move(s));
  }
  return render_stanzas(stanzas);
}

std::vector<IndexEntry> parse_index(std::string_view text) {
  std::vector<IndexEntry> out;
  for (const auto& stanza : parse_stanzas(text)) {
    IndexEntry e;
    e.meta = to_package_meta(stanza);
    auto take = [&](std::string_view name) {
      auto v = e.meta.extra.get(name);
      if (!v)
        throw Error(ErrorCode::MissingMandatoryField,
                    "package '" + e.meta.name + "' lacks field '" +
                        std::string(name) + "'");
      e.meta.extra.erase(name);
      return *v;
    };
    e.filename = take("Filename");
    std::string size = take("Size");
    auto [ptr, ec] = std::from_chars(size.data(), size.data() + size.size(), e.size);
    if (size.empty() || ec != std::errc{} || ptr != size.data() + size.size())
      throw Error(ErrorCode::MalformedField,
                  "package '" + e.meta.name + "' has a bad Size '" + size + "'");
    e.sha256 = take("SHA256");
    out.push_back(std::move(e));
  }
  return out;
}

std::span<const std::size_t> PackageUniverse::versions_of(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end())
    return {};
  return it->second;
}

std::span<const Provider> PackageUniverse::providers_of(std::string_view name) const {
  auto it = provides_.find(std::string(name));
  if (it == provides_.end())
    return {};
  return it->second;
}

std::optional<std::size_t> PackageUniverse::newest(std::string_view name) const {
  std::optional<std::size_t> best;
  for (std::size_t i : versions_of(name))
    if (!best || compare_versions(packages_[i].version, packages_[*best].version) > 0)
      best = i;
  return best;
}

bool PackageUniverse::add(PackageMeta meta) {
  for (std::size_t i : versions_of(meta.name)) {
    const auto& p = packages_[i];
    if (p.architecture == meta.architecture &&
        compare_versions(p.version, meta.version) == 0)
      return false;
  }

  std::size_t index = packages_.size();
  by_name_[meta.name].push_back(index);
  if (const auto* provides = meta.relation(RelationKind::Provides))
    for (const auto& group : provides->groups)
      for (const auto& atom : group)
        provides_[atom.name].push_back(Provider{index, atom.provided_version});
  packages_.push_back(std::move(meta));
  return true;
}

PackageUniverse load_universe(std::span<const std::string> index_texts) {
  PackageUniverse universe;
  for (std::size_t i = 0; i < index_texts.size(); ++i) {
    std::string where = "index #" + std::to_string(i + 1);
    std::vector<ControlStanza> stanzas;
    try {
      stanzas = parse_stanzas(index_texts[i]);
    } catch (const Error& e) {
      throw e.with_context(where);
    }
    for (std::size_t j = 0; j < stanzas.size(); ++j) {
      try {
        universe.add(to_package_meta(stanzas[j]));
      } catch (const Error& e) {
        throw e.with_context(where + ", stanza #" + std::to_string(j + 1));
      }
    }
  }
  return universe;
}

} // namespace debgraph
