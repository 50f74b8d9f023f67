#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace wwaudit::util {

std::string read_file(const std::filesystem::path& path);

/// Write-temp-then-rename so concurrent readers never observe a partial file
/// and interrupted runs leave no half-written artifacts behind.
void atomic_write_file(const std::filesystem::path& path, std::string_view content);

} // namespace wwaudit::util
