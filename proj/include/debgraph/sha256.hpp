#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace debgraph {

// Lowercase hex SHA-256 digests.
std::string sha256_hex(std::string_view data);

// Throws Error{IoError}.
std::string sha256_file(const std::filesystem::path& path);

} // namespace debgraph
