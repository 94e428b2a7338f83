#pragma once

// Synthetic packages and repositories shared by several test programs.

#include <debgraph/control.hpp>
#include <debgraph/deb.hpp>

#include "temp_dir.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifndef DEBGRAPH_TEST_DATA
#error "DEBGRAPH_TEST_DATA must name the test data directory"
#endif

namespace debgraph::testing {

inline std::filesystem::path test_data(std::string_view name) {
  return std::filesystem::path(DEBGRAPH_TEST_DATA) / name;
}

inline std::string read_test_data(std::string_view name) {
  std::ifstream in(test_data(name), std::ios::binary);
  if (!in)
    throw std::runtime_error("missing test data " + std::string(name));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// extra: further control lines, e.g. "Depends: chrony\n".
inline PackageMeta make_meta(std::string name, std::string version,
                             std::string arch = "all", std::string extra = "") {
  return to_package_meta(parse_stanzas("Package: " + name + "\nVersion: " + version +
                                       "\nArchitecture: " + arch + "\n" + extra)
                             .at(0));
}

// The three-package repository used by the end-to-end pipeline.
inline std::vector<PackageMeta> pipeline_packages() {
  return {
      make_meta("maratona-desktop", "2.0.0", "all",
                "Depends: maratona-kairos, maratona-usuario-icpc, time-daemon\n"
                "Description: Maratona Linux contest desktop\n"),
      make_meta("maratona-kairos", "1.0.1", "all",
                "Depends: chrony\nProvides: time-daemon\nConflicts: systemd-timesyncd\n"
                "Description: time synchronization with the Brazilian Legal Time\n"),
      make_meta("maratona-usuario-icpc", "1.0.2", "all",
                "Pre-Depends: adduser\nDescription: contestant user account\n"),
  };
}

// Writes <dir>/pool/<first letter>/<name>_<version>_<arch>.deb for each
// package and returns the relative file names in input order.
inline std::vector<std::string> write_repo(const TempDir& dir, const std::string& sub,
                                           const std::vector<PackageMeta>& packages) {
  std::vector<std::string> names;
  for (const auto& m : packages) {
    std::string rel = "pool/" + m.name.substr(0, 1) + "/" + m.name + "_" + m.version.str() +
                      "_" + m.architecture + ".deb";
    std::vector<FixtureFile> files{{"usr/share/doc/" + m.name + "/README", m.name + "\n"}};
    dir.write(std::filesystem::path(sub) / rel, build_fixture_deb(m, files));
    names.push_back(rel);
  }
  return names;
}

} // namespace debgraph::testing
