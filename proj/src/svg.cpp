#include "isacmarket/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace isac {

namespace {

constexpr int kWidth = 800;
constexpr int kHeight = 560;
constexpr int kMarginLeft = 78;
constexpr int kMarginRight = 24;
constexpr int kMarginTop = 44;
constexpr int kMarginBottom = 56;

std::string fixed2(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    if (v == 0.0)
        v = 0.0;  // normalize -0
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Largest "nice" step ({1,2,5} x 10^k) giving at most ~6 ticks.
double nice_step(double range) {
    const double raw = range / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    double step;
    if (norm <= 1.0)
        step = 1.0;
    else if (norm <= 2.0)
        step = 2.0;
    else if (norm <= 5.0)
        step = 5.0;
    else
        step = 10.0;
    return step * mag;
}

struct AxisScale {
    double lo, hi;
    double to_px(double v, double px0, double px1) const {
        return px0 + (v - lo) / (hi - lo) * (px1 - px0);
    }
};

AxisScale fit_axis(double lo, double hi) {
    if (!(hi > lo)) {
        lo -= 1.0;
        hi += 1.0;
    }
    const double pad = 0.05 * (hi - lo);
    return {lo - pad, hi + pad};
}

}  // namespace

std::string render_line_chart(std::span<const double> xs, std::span<const double> ys,
                              const LineChartSpec& spec) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("render_line_chart: x/y size mismatch");

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    std::size_t finite = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!std::isfinite(xs[i]) || !std::isfinite(ys[i]))
            continue;
        ++finite;
        xmin = std::min(xmin, xs[i]);
        xmax = std::max(xmax, xs[i]);
        ymin = std::min(ymin, ys[i]);
        ymax = std::max(ymax, ys[i]);
    }
    if (finite == 0)
        throw std::invalid_argument("render_line_chart: no finite data point");

    const AxisScale ax = fit_axis(xmin, xmax);
    const AxisScale ay = fit_axis(ymin, ymax);
    const double px0 = kMarginLeft, px1 = kWidth - kMarginRight;
    const double py0 = kHeight - kMarginBottom, py1 = kMarginTop;  // y grows upward

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    svg << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";

    // gridlines + tick labels
    svg << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";
    const double xstep = nice_step(ax.hi - ax.lo);
    for (double t = std::ceil(ax.lo / xstep) * xstep; t <= ax.hi + 1e-12 * xstep; t += xstep) {
        const double px = ax.to_px(t, px0, px1);
        svg << "<line x1=\"" << fixed2(px) << "\" y1=\"" << fixed2(py0) << "\" x2=\""
            << fixed2(px) << "\" y2=\"" << fixed2(py1)
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << fixed2(px) << "\" y=\"" << fixed2(py0 + 18)
            << "\" text-anchor=\"middle\">" << tick_label(t) << "</text>\n";
    }
    const double ystep = nice_step(ay.hi - ay.lo);
    for (double t = std::ceil(ay.lo / ystep) * ystep; t <= ay.hi + 1e-12 * ystep; t += ystep) {
        const double py = ay.to_px(t, py0, py1);
        svg << "<line x1=\"" << fixed2(px0) << "\" y1=\"" << fixed2(py) << "\" x2=\""
            << fixed2(px1) << "\" y2=\"" << fixed2(py)
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << fixed2(px0 - 6) << "\" y=\"" << fixed2(py + 4)
            << "\" text-anchor=\"end\">" << tick_label(t) << "</text>\n";
    }
    svg << "</g>\n";

    // axes
    svg << "<line x1=\"" << fixed2(px0) << "\" y1=\"" << fixed2(py0) << "\" x2=\"" << fixed2(px1)
        << "\" y2=\"" << fixed2(py0) << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    svg << "<line x1=\"" << fixed2(px0) << "\" y1=\"" << fixed2(py0) << "\" x2=\"" << fixed2(px0)
        << "\" y2=\"" << fixed2(py1) << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";

    // data polyline, split at non-finite points
    std::vector<std::pair<double, double>> segment;
    auto flush_segment = [&]() {
        if (segment.size() >= 2) {
            svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
            for (std::size_t i = 0; i < segment.size(); ++i) {
                if (i) svg << ' ';
                svg << fixed2(segment[i].first) << ',' << fixed2(segment[i].second);
            }
            svg << "\"/>\n";
        } else if (segment.size() == 1) {
            svg << "<circle cx=\"" << fixed2(segment[0].first) << "\" cy=\""
                << fixed2(segment[0].second) << "\" r=\"2.5\" fill=\"#1f77b4\"/>\n";
        }
        segment.clear();
    };
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) {
            flush_segment();
            continue;
        }
        segment.emplace_back(ax.to_px(xs[i], px0, px1), ay.to_px(ys[i], py0, py1));
    }
    flush_segment();

    // labels
    svg << "<g font-family=\"sans-serif\" font-size=\"14\" fill=\"black\">\n";
    if (!spec.title.empty())
        svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
            << spec.title << "</text>\n";
    svg << "<text x=\"" << fixed2((px0 + px1) / 2) << "\" y=\"" << kHeight - 14
        << "\" text-anchor=\"middle\">" << spec.x_label << "</text>\n";
    svg << "<text x=\"20\" y=\"" << fixed2((py0 + py1) / 2)
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " << fixed2((py0 + py1) / 2)
        << ")\">" << spec.y_label << "</text>\n";
    svg << "</g>\n</svg>\n";
    return svg.str();
}

}  // namespace isac
