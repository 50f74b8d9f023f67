#pragma once

#include <string>
#include <string_view>

namespace wwaudit::util {

/// Lowercase hex SHA-256 digest of the input bytes.
std::string sha256_hex(std::string_view data);

} // namespace wwaudit::util
