#include "cyc/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace cyc {

void Viewport::validate() const {
    if (!(xmin < xmax) || !(ymin < ymax))
        throw std::invalid_argument("viewport: empty range");
    if (size_px <= 0)
        throw std::invalid_argument("viewport: size must be positive");
    if (grid_resolution < 32)
        throw std::invalid_argument("viewport: grid resolution must be at least 32");
}

namespace {

using Point = std::pair<double, double>;

struct Segment {
    Point a, b;
};

Point edge_cross(double x0, double y0, double v0, double x1, double y1, double v1) {
    const double t = v0 / (v0 - v1);
    return {x0 + t * (x1 - x0), y0 + t * (y1 - y0)};
}

} // namespace

std::vector<std::vector<Point>>
trace_contour(const std::function<double(double, double)>& f, const Viewport& vp) {
    vp.validate();
    const int g = vp.grid_resolution;
    const double cw = vp.cell_w();
    const double ch = vp.cell_h();

    std::vector<std::vector<double>> val(static_cast<size_t>(g) + 1,
                                         std::vector<double>(static_cast<size_t>(g) + 1));
    for (int i = 0; i <= g; ++i)
        for (int j = 0; j <= g; ++j) {
            double v = f(vp.xmin + i * cw, vp.ymin + j * ch);
            if (v == 0.0)
                v = 1e-12; // grid nodes exactly on the contour break the chain walk
            val[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
        }

    std::vector<Segment> segs;
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            // corner coordinates always derive from the indices so that the
            // two cells sharing an edge emit bitwise-identical crossings
            const double x0 = vp.xmin + i * cw, x1 = vp.xmin + (i + 1) * cw;
            const double y0 = vp.ymin + j * ch, y1 = vp.ymin + (j + 1) * ch;
            const double bl = val[static_cast<size_t>(i)][static_cast<size_t>(j)];
            const double br = val[static_cast<size_t>(i) + 1][static_cast<size_t>(j)];
            const double tl = val[static_cast<size_t>(i)][static_cast<size_t>(j) + 1];
            const double tr = val[static_cast<size_t>(i) + 1][static_cast<size_t>(j) + 1];
            int config = 0;
            if (bl >= 0) config |= 1;
            if (br >= 0) config |= 2;
            if (tr >= 0) config |= 4;
            if (tl >= 0) config |= 8;
            if (config == 0 || config == 15)
                continue;
            const auto bottom = [&] { return edge_cross(x0, y0, bl, x1, y0, br); };
            const auto top = [&] { return edge_cross(x0, y1, tl, x1, y1, tr); };
            const auto left = [&] { return edge_cross(x0, y0, bl, x0, y1, tl); };
            const auto right = [&] { return edge_cross(x1, y0, br, x1, y1, tr); };
            switch (config) {
            case 1: case 14: segs.push_back({left(), bottom()}); break;
            case 2: case 13: segs.push_back({bottom(), right()}); break;
            case 3: case 12: segs.push_back({left(), right()}); break;
            case 4: case 11: segs.push_back({top(), right()}); break;
            case 6: case 9:  segs.push_back({bottom(), top()}); break;
            case 7: case 8:  segs.push_back({left(), top()}); break;
            case 5: case 10: {
                // saddle, disambiguated by the cell centre
                const double centre = f(x0 + cw / 2, y0 + ch / 2);
                const bool joined = (config == 5) == (centre >= 0);
                if (joined) {
                    segs.push_back({left(), bottom()});
                    segs.push_back({top(), right()});
                } else {
                    segs.push_back({left(), top()});
                    segs.push_back({bottom(), right()});
                }
                break;
            }
            default: break;
            }
        }

    // stitch segments into polylines; crossings on a shared cell edge are
    // computed from the same corner values, so endpoints match exactly
    std::map<Point, std::vector<size_t>> at;
    for (size_t s = 0; s < segs.size(); ++s) {
        at[segs[s].a].push_back(s);
        at[segs[s].b].push_back(s);
    }
    std::vector<bool> used(segs.size(), false);
    std::vector<std::vector<Point>> paths;

    const auto walk = [&](size_t start, bool from_a) {
        std::vector<Point> path;
        size_t s = start;
        Point cur = from_a ? segs[s].a : segs[s].b;
        path.push_back(cur);
        while (true) {
            used[s] = true;
            cur = (segs[s].a == cur) ? segs[s].b : segs[s].a;
            path.push_back(cur);
            size_t next = segs.size();
            for (size_t t : at[cur])
                if (!used[t]) {
                    next = t;
                    break;
                }
            if (next == segs.size())
                break;
            s = next;
        }
        return path;
    };

    // open curves start at odd-degree endpoints
    for (const auto& [pt, list] : at) {
        if (list.size() % 2 == 0)
            continue;
        for (size_t s : list)
            if (!used[s])
                paths.push_back(walk(s, segs[s].a == pt));
    }
    for (size_t s = 0; s < segs.size(); ++s)
        if (!used[s])
            paths.push_back(walk(s, true));
    return paths;
}

namespace {

std::string fmt_px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

struct Mapper {
    const Viewport& vp;
    int width, height;
    double px(double x) const { return (x - vp.xmin) / (vp.xmax - vp.xmin) * width; }
    double py(double y) const { return (vp.ymax - y) / (vp.ymax - vp.ymin) * height; }
};

std::string render_svg_impl(const Figure& figure, const Viewport& vp, bool include_real_line,
                            const std::string& stamp, const std::string& corner = "bl") {
    if (figure.dim() != 2)
        throw std::invalid_argument("render: drawing is possible for two-dimensional figures only");
    vp.validate();
    const int width = vp.size_px;
    const int height = static_cast<int>(std::lround(vp.size_px * (vp.ymax - vp.ymin) / (vp.xmax - vp.xmin)));
    const Mapper map{vp, width, height};

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

    for (const std::string& key : figure.get_all_keys()) {
        if (!include_real_line && key == figure.real_line_key())
            continue;
        const CycleNode& nd = figure.node(key);
        const bool multi = nd.values.size() > 1;
        for (size_t vi = 0; vi < nd.values.size(); ++vi) {
            const Cycle& raw = nd.values[vi];
            std::string id = key;
            if (multi)
                id += "#" + std::to_string(vi);
            if (!coefficients_are_real(raw)) {
                svg << "<!-- " << id << ": imaginary coefficients, skipped -->\n";
                continue;
            }
            const Cycle c = num_normalize(raw);
            const bool dot = is_zero_radius(c, figure.point_metric());
            if (dot && !is_flat(c)) {
                const std::vector<Scalar> ctr = center(c);
                const double cx = ctr[0].real(), cy = ctr[1].real();
                if (cx < vp.xmin || cx > vp.xmax || cy < vp.ymin || cy > vp.ymax)
                    continue;
                svg << "<circle id=\"" << id << "\" cx=\"" << fmt_px(map.px(cx)) << "\" cy=\""
                    << fmt_px(map.py(cy)) << "\" r=\"2\"";
                if (!nd.style.empty())
                    svg << " style=\"" << nd.style << "\"";
                else
                    svg << " fill=\"#800000\"";
                svg << "/>\n";
                svg << "<text x=\"" << fmt_px(map.px(cx) + 4) << "\" y=\"" << fmt_px(map.py(cy) - 4)
                    << "\" font-size=\"10\">" << nd.label << "</text>\n";
                continue;
            }
            const Metric& pm = figure.point_metric();
            const auto field = [&](double x, double y) {
                const double xy[2] = {x, y};
                return value_at(c, xy, pm).real();
            };
            const auto paths = trace_contour(field, vp);
            if (paths.empty())
                continue;
            const char* colour = is_flat(c) ? "#008000" : "#000080";
            svg << "<path id=\"" << id << "\" fill=\"none\"";
            if (!nd.style.empty())
                svg << " style=\"" << nd.style << "\"";
            else
                svg << " stroke=\"" << colour << "\" stroke-width=\"1\"";
            svg << " d=\"";
            for (const auto& path : paths) {
                for (size_t p = 0; p < path.size(); ++p)
                    svg << (p == 0 ? "M " : "L ") << fmt_px(map.px(path[p].first)) << " "
                        << fmt_px(map.py(path[p].second)) << " ";
            }
            svg << "\"/>\n";
            const Point anchor = paths.front().front();
            svg << "<text x=\"" << fmt_px(map.px(anchor.first + vp.cell_w())) << "\" y=\""
                << fmt_px(map.py(anchor.second + vp.cell_h())) << "\" font-size=\"10\">" << nd.label
                << "</text>\n";
        }
    }
    if (!stamp.empty()) {
        const bool right = corner == "br" || corner == "tr";
        const bool top = corner == "tl" || corner == "tr";
        svg << "<text x=\"" << (right ? width - 4 : 4) << "\" y=\"" << (top ? 14 : height - 4)
            << "\" font-size=\"12\"" << (right ? " text-anchor=\"end\"" : "") << ">" << stamp
            << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace

std::string render_svg(const Figure& figure, const Viewport& viewport, bool include_real_line) {
    return render_svg_impl(figure, viewport, include_real_line, "");
}

std::vector<std::string> animate(const Figure& figure, const std::string& param,
                                 std::span<const double> values, const Viewport& viewport,
                                 bool include_real_line, const std::string& stamp_corner) {
    if (!figure.parameters().count(param))
        throw std::invalid_argument("animate: unknown parameter '" + param + "'");
    std::vector<std::string> frames;
    frames.reserve(values.size());
    for (double v : values) {
        Figure frame = figure;
        frame.set_parameter(param, v);
        char stamp[64];
        std::snprintf(stamp, sizeof(stamp), "%s=%.6g", param.c_str(), v);
        frames.push_back(render_svg_impl(frame, viewport, include_real_line, stamp, stamp_corner));
    }
    return frames;
}

} // namespace cyc
