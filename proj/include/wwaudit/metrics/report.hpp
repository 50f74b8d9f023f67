#pragma once

#include "wwaudit/metrics/aggregate.hpp"

#include <filesystem>

namespace wwaudit::metrics {

/// Writes the CSV tables, the JSON summary and the SVG figures for one
/// aggregated report. Pure function of the report: equal inputs produce
/// byte-equal files. Numeric cells use fixed 6-decimal formatting; undefined
/// cells (empty groups) carry the NA marker.
void write_report(const AuditReport& report, const std::filesystem::path& out_dir);

} // namespace wwaudit::metrics
