#pragma once

#include <string>
#include <vector>

namespace wwaudit::report {

/// One labelled cluster of bars (stacked when `stacked` is set on render).
struct BarGroup {
    std::string label;
    std::vector<double> values; // one per series
};

/// Deterministic standalone SVG bar chart; series render side by side or
/// stacked. Values are clamped at zero for layout.
std::string bar_chart_svg(const std::string& title, const std::vector<std::string>& series,
                          const std::vector<BarGroup>& groups, bool stacked,
                          double y_max = 0.0);

struct ViolinGroup {
    std::string label;
    std::vector<double> samples; // must be sorted
};

/// Kernel-density violin per group (gaussian kernel, Silverman's bandwidth).
std::string violin_svg(const std::string& title, const std::vector<ViolinGroup>& groups,
                       double y_min, double y_max);

} // namespace wwaudit::report
