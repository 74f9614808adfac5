#include "dtmf/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "dtmf/error.hpp"

namespace dtmf {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string esc(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

}  // namespace

std::string render_scatter_svg(const std::vector<PlotPoint>& points, bool axis_cross) {
    if (points.empty()) fail("BadFormat", "nothing to plot");

    double xmin = points[0].x, xmax = points[0].x;
    double ymin = points[0].y, ymax = points[0].y;
    for (const PlotPoint& p : points) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    if (axis_cross) {
        xmin = std::min(xmin, 0.0);
        xmax = std::max(xmax, 0.0);
        ymin = std::min(ymin, 0.0);
        ymax = std::max(ymax, 0.0);
    }
    double xspan = xmax - xmin, yspan = ymax - ymin;
    if (xspan <= 0.0) xspan = 1.0;
    if (yspan <= 0.0) yspan = 1.0;
    xmin -= 0.05 * xspan;
    xmax += 0.05 * xspan;
    ymin -= 0.05 * yspan;
    ymax += 0.05 * yspan;

    const double size = 800.0, margin = 60.0;
    const double inner = size - 2.0 * margin;
    auto sx = [&](double x) { return margin + (x - xmin) / (xmax - xmin) * inner; };
    auto sy = [&](double y) { return size - margin - (y - ymin) / (ymax - ymin) * inner; };

    std::map<std::string, const char*> colors;
    for (const PlotPoint& p : points)
        if (!p.label.empty()) colors.emplace(p.label, nullptr);
    std::size_t ci = 0;
    for (auto& [label, color] : colors)
        color = kPalette[ci++ % (sizeof kPalette / sizeof kPalette[0])];

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
           "viewBox=\"0 0 800 800\">\n";
    svg << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
    svg << "<rect x=\"" << num(margin) << "\" y=\"" << num(margin) << "\" width=\"" << num(inner)
        << "\" height=\"" << num(inner)
        << "\" fill=\"none\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";

    if (axis_cross && xmin < 0.0 && xmax > 0.0)
        svg << "<line x1=\"" << num(sx(0)) << "\" y1=\"" << num(margin) << "\" x2=\"" << num(sx(0))
            << "\" y2=\"" << num(size - margin)
            << "\" stroke=\"#999999\" stroke-dasharray=\"4 3\"/>\n";
    if (axis_cross && ymin < 0.0 && ymax > 0.0)
        svg << "<line x1=\"" << num(margin) << "\" y1=\"" << num(sy(0)) << "\" x2=\""
            << num(size - margin) << "\" y2=\"" << num(sy(0))
            << "\" stroke=\"#999999\" stroke-dasharray=\"4 3\"/>\n";

    for (const PlotPoint& p : points) {
        const char* color = "#333333";
        if (!p.label.empty()) color = colors[p.label];
        svg << "<circle cx=\"" << num(sx(p.x)) << "\" cy=\"" << num(sy(p.y))
            << "\" r=\"4\" fill=\"" << color << "\"/>\n";
        if (!p.id.empty())
            svg << "<text x=\"" << num(sx(p.x) + 6.0) << "\" y=\"" << num(sy(p.y) - 6.0)
                << "\" font-size=\"11\" font-family=\"sans-serif\" fill=\"#333333\">" << esc(p.id)
                << "</text>\n";
    }

    // Legend swatches are rects so circles stay a one-to-one point count.
    double ly = margin + 16.0;
    for (const auto& [label, color] : colors) {
        svg << "<rect x=\"" << num(margin + 5.0) << "\" y=\"" << num(ly - 9.0)
            << "\" width=\"10\" height=\"10\" fill=\"" << color << "\"/>\n";
        svg << "<text x=\"" << num(margin + 22.0) << "\" y=\"" << num(ly)
            << "\" font-size=\"13\" font-family=\"sans-serif\" fill=\"#333333\">" << esc(label)
            << "</text>\n";
        ly += 18.0;
    }

    svg << "</svg>\n";
    return svg.str();
}

}  // namespace dtmf
