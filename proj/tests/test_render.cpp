#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cyc/render.hpp"

using namespace cyc;

namespace {

const Metric e2 = elliptic_metric(2);

Viewport square(double half, int grid = 256) {
    Viewport v;
    v.xmin = -half;
    v.xmax = half;
    v.ymin = -half;
    v.ymax = half;
    v.size_px = 300;
    v.grid_resolution = grid;
    return v;
}

double grad_bound(const Cycle& c, const Metric& m, double x, double y, double h) {
    double worst = 0.0;
    for (double dx : {-h, 0.0, h})
        for (double dy : {-h, 0.0, h}) {
            const double p1[2] = {x + dx + 1e-5, y + dy};
            const double p2[2] = {x + dx - 1e-5, y + dy};
            const double p3[2] = {x + dx, y + dy + 1e-5};
            const double p4[2] = {x + dx, y + dy - 1e-5};
            const double gx = (value_at(c, p1, m).real() - value_at(c, p2, m).real()) / 2e-5;
            const double gy = (value_at(c, p3, m).real() - value_at(c, p4, m).real()) / 2e-5;
            worst = std::max(worst, std::hypot(gx, gy));
        }
    return worst;
}

void check_fidelity(const Cycle& c, const Metric& m, const Viewport& vp) {
    const auto field = [&](double x, double y) {
        const double p[2] = {x, y};
        return value_at(c, p, m).real();
    };
    const auto paths = trace_contour(field, vp);
    REQUIRE_FALSE(paths.empty());
    const double cell = std::max(vp.cell_w(), vp.cell_h());
    for (const auto& path : paths)
        for (const auto& [x, y] : path) {
            const double tau = 4.0 * cell * grad_bound(c, m, x, y, cell);
            CHECK(std::fabs(field(x, y)) <= tau);
        }
}

} // namespace

TEST_CASE("contour fidelity for a circle") {
    check_fidelity(Cycle{Scalar(1), {Scalar(0), Scalar(0)}, Scalar(-1)}, e2, square(2));
}

TEST_CASE("hyperbola splits into two open branches") {
    const Cycle c{Scalar(1), {Scalar(0), Scalar(0)}, Scalar(-1)};
    const Metric hyp({-1.0, 1.0});
    const auto field = [&](double x, double y) {
        const double p[2] = {x, y};
        return value_at(c, p, hyp).real();
    };
    const auto paths = trace_contour(field, square(2));
    CHECK(paths.size() == 2);
    for (const auto& path : paths)
        CHECK(path.front() != path.back()); // open
    check_fidelity(c, hyp, square(2));
}

TEST_CASE("circle contour closes") {
    const Cycle c{Scalar(1), {Scalar(0), Scalar(0)}, Scalar(-1)};
    const auto field = [&](double x, double y) {
        const double p[2] = {x, y};
        return value_at(c, p, e2).real();
    };
    const auto paths = trace_contour(field, square(2));
    REQUIRE(paths.size() == 1);
    CHECK(paths[0].front() == paths[0].back());
}

TEST_CASE("svg structure") {
    Figure f(e2);
    const double a[2] = {-1, 0.5};
    const double b[2] = {1, 1.5};
    f.add_point(a, "A");
    f.add_point(b, "B");
    f.add_cycle_rel({is_orthogonal("A"), is_orthogonal("B"), is_orthogonal(f.real_line_key())}, "a");

    const std::string svg = render_svg(f, square(3));
    CHECK(svg.find("<circle id=\"A\"") != std::string::npos);
    CHECK(svg.find("<circle id=\"B\"") != std::string::npos);
    CHECK(svg.find("<path id=\"a\"") != std::string::npos);
    CHECK(svg.find("<path id=\"R\"") != std::string::npos);

    const std::string bare = render_svg(f, square(3), false);
    CHECK(bare.find("<path id=\"R\"") == std::string::npos);

    // determinism
    CHECK(render_svg(f, square(3)) == svg);

    // an empty figure still renders the background and the real line
    const Figure empty(e2);
    const std::string base = render_svg(empty, square(3));
    CHECK(base.find("<rect") != std::string::npos);
    CHECK(base.find("<path id=\"R\"") != std::string::npos);

    Figure solid(e2);
    solid.freeze();
    CHECK_THROWS(render_svg(Figure(elliptic_metric(3)), square(3)));
}

TEST_CASE("dots appear exactly for zero-radius values") {
    Figure f(e2);
    const double a[2] = {0.5, 0.5};
    f.add_point(a, "A");
    f.add_cycle(Cycle{Scalar(1), {Scalar(0), Scalar(0)}, Scalar(-1)}, "u");
    const std::string svg = render_svg(f, square(2));
    CHECK(svg.find("<circle id=\"A\"") != std::string::npos);
    CHECK(svg.find("<circle id=\"u\"") == std::string::npos);
    CHECK(svg.find("<path id=\"u\"") != std::string::npos);

    // imaginary coefficients are skipped with a comment
    Cycle ghostly = real_line_cycle(2);
    ghostly.l[0] = Scalar(0, 1);
    f.add_cycle(ghostly, "g");
    const std::string svg2 = render_svg(f, square(2));
    CHECK(svg2.find("<!-- g: imaginary") != std::string::npos);
    CHECK(svg2.find("<path id=\"g\"") == std::string::npos);
}

TEST_CASE("animation produces one stamped frame per value") {
    Figure f(e2);
    f.set_parameter("t", 0.0);
    std::vector<Expr> coords(2);
    coords[0].param = "t";
    coords[0].scale = 1.0;
    coords[1] = Expr(1.0);
    f.add_point(std::span<const Expr>(coords), "A");
    const std::vector<double> values = {0.0, 0.5, 1.0};
    const std::vector<std::string> frames = animate(f, "t", values, square(3));
    REQUIRE(frames.size() == 3);
    CHECK(frames[1].find("t=0.5") != std::string::npos);
    const std::vector<std::string> tr = animate(f, "t", values, square(3), true, "tr");
    CHECK(tr[0].find("text-anchor=\"end\"") != std::string::npos);
    CHECK(frames[0] != frames[2]);
    CHECK_THROWS(animate(f, "nope", values, square(3)));

    const std::vector<double> one = {0.5};
    Figure bound = f;
    bound.set_parameter("t", 0.5);
    const std::string direct = render_svg(bound, square(3));
    const std::string framed = animate(f, "t", one, square(3))[0];
    CHECK(framed.find(direct.substr(0, direct.size() - 7)) != std::string::npos);
}
