#pragma once

#include <string>
#include <vector>

namespace dtmf {

struct PlotPoint {
    std::string id;
    std::string label;  // empty = uncolored
    double x = 0.0;
    double y = 0.0;
};

// Fixed 800x800 scatter, one circle per point, colored by label, with an
// optional axis cross through the origin. Output is fully deterministic.
std::string render_scatter_svg(const std::vector<PlotPoint>& points, bool axis_cross);

}  // namespace dtmf
