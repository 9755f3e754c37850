#pragma once

#include <span>
#include "cyc/figure.hpp"

namespace cyc {

struct Viewport {
    double xmin = -5, xmax = 5, ymin = -5, ymax = 5;
    int size_px = 300;
    int grid_resolution = 256; // cells per axis, at least 32

    void validate() const;
    double cell_w() const { return (xmax - xmin) / grid_resolution; }
    double cell_h() const { return (ymax - ymin) / grid_resolution; }
};

// Deterministic SVG of a two-dimensional figure: zero-radius cycles become
// dots at their centre, everything else is traced as the zero set of its
// quadric by marching squares over the viewport grid.
std::string render_svg(const Figure& figure, const Viewport& viewport,
                       bool include_real_line = true);

// One frame per value: bind the parameter, re-solve, render, stamp
// "name=value" at the chosen corner ("bl", "br", "tl" or "tr").
std::vector<std::string> animate(const Figure& figure, const std::string& param,
                                 std::span<const double> values, const Viewport& viewport,
                                 bool include_real_line = true,
                                 const std::string& stamp_corner = "bl");

// Polyline extraction used by the renderer; exposed for the fidelity checks.
std::vector<std::vector<std::pair<double, double>>>
trace_contour(const std::function<double(double, double)>& f, const Viewport& viewport);

} // namespace cyc
