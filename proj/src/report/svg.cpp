#include "wwaudit/report/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace wwaudit::report {

namespace {

constexpr double kWidth = 760.0;
constexpr double kHeight = 360.0;
constexpr double kMarginLeft = 56.0;
constexpr double kMarginRight = 16.0;
constexpr double kMarginTop = 36.0;
constexpr double kMarginBottom = 48.0;

const char* kPalette[] = {"#4878a8", "#d06060", "#70a860", "#b08cc8",
                          "#c8a040", "#60b0b0", "#8a8a8a"};

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string rect(double x, double y, double w, double h, const char* fill) {
    return "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) +
           "\" height=\"" + num(h) + "\" fill=\"" + fill + "\"/>\n";
}

std::string text(double x, double y, const std::string& s, int size,
                 const char* anchor = "middle") {
    return "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-size=\"" +
           std::to_string(size) + "\" font-family=\"sans-serif\" text-anchor=\"" + anchor +
           "\">" + s + "</text>\n";
}

std::string header(const std::string& title) {
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) +
                      "\" height=\"" + num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) +
                      " " + num(kHeight) + "\">\n";
    out += rect(0, 0, kWidth, kHeight, "#ffffff");
    out += text(kWidth / 2, 20, title, 14);
    return out;
}

std::string axes(double y_max) {
    const double x0 = kMarginLeft;
    const double y0 = kHeight - kMarginBottom;
    const double y1 = kMarginTop;
    std::string out;
    out += "<line x1=\"" + num(x0) + "\" y1=\"" + num(y0) + "\" x2=\"" +
           num(kWidth - kMarginRight) + "\" y2=\"" + num(y0) +
           "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    out += "<line x1=\"" + num(x0) + "\" y1=\"" + num(y0) + "\" x2=\"" + num(x0) +
           "\" y2=\"" + num(y1) + "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double frac = i / 4.0;
        const double y = y0 - frac * (y0 - y1);
        out += text(x0 - 6, y + 4, num(frac * y_max), 10, "end");
        out += "<line x1=\"" + num(x0 - 3) + "\" y1=\"" + num(y) + "\" x2=\"" + num(x0) +
               "\" y2=\"" + num(y) + "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    }
    return out;
}

} // namespace

std::string bar_chart_svg(const std::string& title, const std::vector<std::string>& series,
                          const std::vector<BarGroup>& groups, bool stacked, double y_max) {
    if (y_max <= 0.0) {
        for (const auto& g : groups) {
            double total = 0.0;
            for (double v : g.values) {
                const double vv = std::isnan(v) ? 0.0 : std::max(v, 0.0);
                if (stacked) total += vv;
                else y_max = std::max(y_max, vv);
            }
            if (stacked) y_max = std::max(y_max, total);
        }
        if (y_max <= 0.0) y_max = 1.0;
    }

    std::string out = header(title);
    out += axes(y_max);
    const double x0 = kMarginLeft;
    const double y0 = kHeight - kMarginBottom;
    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = y0 - kMarginTop;
    const double group_w = groups.empty() ? plot_w : plot_w / groups.size();

    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const auto& g = groups[gi];
        const double gx = x0 + gi * group_w;
        out += text(gx + group_w / 2, y0 + 16, g.label, 10);
        if (stacked) {
            double acc = 0.0;
            const double bar_w = group_w * 0.6;
            for (std::size_t si = 0; si < g.values.size(); ++si) {
                const double v = std::isnan(g.values[si]) ? 0.0 : std::max(g.values[si], 0.0);
                const double h = v / y_max * plot_h;
                acc += h;
                out += rect(gx + group_w * 0.2, y0 - acc, bar_w, h,
                            kPalette[si % 7]);
            }
        } else {
            const std::size_t n = std::max<std::size_t>(g.values.size(), 1);
            const double bar_w = group_w * 0.8 / n;
            for (std::size_t si = 0; si < g.values.size(); ++si) {
                const double v = std::isnan(g.values[si]) ? 0.0 : std::max(g.values[si], 0.0);
                const double h = v / y_max * plot_h;
                out += rect(gx + group_w * 0.1 + si * bar_w, y0 - h, bar_w * 0.92, h,
                            kPalette[si % 7]);
            }
        }
    }

    double lx = kMarginLeft + 8;
    for (std::size_t si = 0; si < series.size(); ++si) {
        out += rect(lx, kMarginTop - 12, 10, 10, kPalette[si % 7]);
        out += text(lx + 14, kMarginTop - 3, series[si], 10, "start");
        lx += 18 + 7.0 * series[si].size();
    }
    out += "</svg>\n";
    return out;
}

std::string violin_svg(const std::string& title, const std::vector<ViolinGroup>& groups,
                       double y_min, double y_max) {
    std::string out = header(title);
    const double x0 = kMarginLeft;
    const double y0 = kHeight - kMarginBottom;
    const double y1 = kMarginTop;
    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double group_w = groups.empty() ? plot_w : plot_w / groups.size();
    if (y_max <= y_min) y_max = y_min + 1.0;

    // y axis labels
    for (int i = 0; i <= 4; ++i) {
        const double frac = i / 4.0;
        const double y = y0 - frac * (y0 - y1);
        out += text(x0 - 6, y + 4, num(y_min + frac * (y_max - y_min)), 10, "end");
    }
    out += "<line x1=\"" + num(x0) + "\" y1=\"" + num(y0) + "\" x2=\"" + num(x0) +
           "\" y2=\"" + num(y1) + "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const auto& g = groups[gi];
        const double cx = x0 + gi * group_w + group_w / 2;
        out += text(cx, y0 + 16, g.label, 10);
        if (g.samples.empty()) continue;

        // Silverman's rule on the sorted sample
        const std::size_t n = g.samples.size();
        double mean = 0.0;
        for (double v : g.samples) mean += v;
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (double v : g.samples) var += (v - mean) * (v - mean);
        const double sd = n > 1 ? std::sqrt(var / (n - 1)) : 0.0;
        const double q1 = g.samples[n / 4];
        const double q3 = g.samples[(3 * n) / 4];
        const double iqr = q3 - q1;
        double spread = std::min(sd, iqr / 1.34);
        if (spread <= 0.0) spread = sd > 0.0 ? sd : 0.05 * (y_max - y_min);
        double bandwidth = 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
        if (bandwidth <= 0.0) bandwidth = 0.05 * (y_max - y_min);

        constexpr int kSteps = 48;
        std::vector<double> density(kSteps + 1, 0.0);
        double max_density = 0.0;
        for (int i = 0; i <= kSteps; ++i) {
            const double y = y_min + (y_max - y_min) * i / kSteps;
            double d = 0.0;
            for (double v : g.samples) {
                const double z = (y - v) / bandwidth;
                d += std::exp(-0.5 * z * z);
            }
            density[static_cast<std::size_t>(i)] = d;
            max_density = std::max(max_density, d);
        }
        if (max_density <= 0.0) continue;
        const double half_w = group_w * 0.38;

        std::string right, left;
        for (int i = 0; i <= kSteps; ++i) {
            const double y = y0 - (y0 - y1) * i / kSteps;
            const double w = density[static_cast<std::size_t>(i)] / max_density * half_w;
            right += (i ? " " : "") + num(cx + w) + "," + num(y);
            left = num(cx - w) + "," + num(y) + (left.empty() ? "" : " ") + left;
        }
        out += "<polygon points=\"" + right + " " + left +
               "\" fill=\"#4878a8\" fill-opacity=\"0.55\" stroke=\"#2f5f8f\" "
               "stroke-width=\"1\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

} // namespace wwaudit::report
