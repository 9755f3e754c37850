#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cyc/cycle.hpp"
#include "cyc/relations.hpp"

using namespace cyc;

namespace {

const Metric e2 = elliptic_metric(2);
const Metric hyp({-1.0, 1.0});

Cycle unit_circle() { return {Scalar(1), {Scalar(0), Scalar(0)}, Scalar(-1)}; }

// Zero-radius cycle representing a point, with the coefficients the figure
// ghost construction produces: l_i = -sigma_c_i x_i, m = -sum sigma_p_i x_i^2.
Cycle point_cycle(double x, double y, const Metric& pm, const Metric& cm) {
    Cycle c;
    c.k = Scalar(1);
    c.l = {Scalar(-cm.at(0) * x), Scalar(-cm.at(1) * y)};
    c.m = Scalar(-(pm.at(0) * x * x + pm.at(1) * y * y));
    return c;
}

} // namespace

TEST_CASE("cycle product values") {
    CHECK(std::abs(cycle_product(unit_circle(), real_line_cycle(2), e2)) < 1e-14);

    // circle centred (7,1) with radius 2: self-product -2 k^2 r^2
    const Cycle a{Scalar(1), {Scalar(7), Scalar(1)}, Scalar(46)};
    CHECK(cycle_product(a, a, e2).real() == doctest::Approx(-8));

    // pairing with infinity extracts k: the flatness test
    const Cycle any{Scalar(3), {Scalar(-2), Scalar(5)}, Scalar(0.25)};
    CHECK(cycle_product(infinity_cycle(2), any, e2).real() == doctest::Approx(3));
}

TEST_CASE("value at a point") {
    const double on[2] = {1, 0};
    const double origin[2] = {0, 0};
    CHECK(std::abs(value_at(unit_circle(), on, e2)) < 1e-14);
    CHECK(value_at(unit_circle(), origin, e2).real() == doctest::Approx(-1));

    const double uv[2] = {0.7, -1.3};
    CHECK(value_at(real_line_cycle(2), uv, hyp).real() == doctest::Approx(2 * -1.3));
}

TEST_CASE("centre and radius") {
    const Cycle a{Scalar(1), {Scalar(7), Scalar(1)}, Scalar(46)};
    const std::vector<Scalar> c = center(a);
    CHECK(c[0].real() == doctest::Approx(7));
    CHECK(c[1].real() == doctest::Approx(1));
    CHECK(radius_sq(a, e2).real() == doctest::Approx(4));

    const Cycle scaled{Scalar(2), {Scalar(2), Scalar(0)}, Scalar(-2)};
    CHECK(center(scaled)[0].real() == doctest::Approx(1));
    CHECK(radius_sq(scaled, e2).real() == doctest::Approx(2));

    const Cycle pt = point_cycle(0.3, -1.7, e2, e2);
    CHECK(is_zero_radius(pt, e2));
    CHECK_FALSE(is_zero_radius(unit_circle(), e2));
    CHECK_THROWS(center(real_line_cycle(2)));
}

TEST_CASE("normalisations") {
    const Cycle two{Scalar(2), {Scalar(0), Scalar(0)}, Scalar(-2)};
    const Cycle p = normalize_projective(two);
    CHECK(p.k.real() == doctest::Approx(1));
    CHECK(p.m.real() == doctest::Approx(-1));

    const Cycle d = normalize_det(unit_circle(), e2);
    CHECK(d.k.real() == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(cycle_product(d, d, e2).real() == doctest::Approx(-1));
    CHECK_THROWS(normalize_det(point_cycle(1, 2, e2, e2), e2));

    CHECK_THROWS(normalize_k(real_line_cycle(2)));

    const Cycle dusty{Scalar(1e-12), {Scalar(1), Scalar(0)}, Scalar(3)};
    const Cycle n = num_normalize(dusty);
    CHECK(n.k == Scalar(0));
    CHECK(n.l[0].real() == doctest::Approx(1.0 / 3.0));
    CHECK(n.m.real() == doctest::Approx(1));
}

TEST_CASE("equality predicates") {
    const Cycle a = unit_circle();
    const Cycle b{Scalar(2), {Scalar(0), Scalar(0)}, Scalar(-2)};
    CHECK(is_projectively_equal(a, b));
    CHECK(is_almost_equal(a, b));

    Cycle wiggled = a;
    wiggled.m += epsilon() / 10;
    CHECK(is_almost_equal(a, wiggled));
    CHECK_FALSE(is_projectively_equal(a, wiggled));

    const Cycle c{Scalar(1), {Scalar(1), Scalar(0)}, Scalar(0)};
    const Cycle d{Scalar(1), {Scalar(0), Scalar(1)}, Scalar(0)};
    CHECK_FALSE(is_almost_equal(c, d));
}

TEST_CASE("centre-radius round trip") {
    const double c1[2] = {7, 1};
    const Cycle a = from_center_radius_sq(c1, 4, e2);
    CHECK(a.m.real() == doctest::Approx(46));

    const double c2[2] = {0, 0};
    CHECK(is_projectively_equal(from_center_radius_sq(c2, 1, e2), unit_circle()));

    const Metric e3 = elliptic_metric(3);
    const double c3[3] = {1, 1, 1};
    const Cycle sphere = from_center_radius_sq(c3, 0.75, e3);
    CHECK(sphere.m.real() == doctest::Approx(2.25));

    std::mt19937 rng(31);
    std::uniform_real_distribution<double> coord(-3, 3);
    for (int trial = 0; trial < 50; ++trial) {
        const double ctr[2] = {coord(rng), coord(rng)};
        const double r2 = 0.1 + std::fabs(coord(rng));
        const Cycle c = from_center_radius_sq(ctr, r2, e2);
        CHECK(center(c)[0].real() == doctest::Approx(ctr[0]));
        CHECK(center(c)[1].real() == doctest::Approx(ctr[1]));
        CHECK(radius_sq(c, e2).real() == doctest::Approx(r2));
    }
}

TEST_CASE("bilinearity and symmetry") {
    std::mt19937 rng(37);
    std::uniform_real_distribution<double> coef(-3, 3);
    for (int trial = 0; trial < 200; ++trial) {
        const Cycle c1{Scalar(coef(rng)), {Scalar(coef(rng)), Scalar(coef(rng))}, Scalar(coef(rng))};
        const Cycle c2{Scalar(coef(rng)), {Scalar(coef(rng)), Scalar(coef(rng))}, Scalar(coef(rng))};
        const Scalar lambda(coef(rng), coef(rng));
        CHECK(std::abs(cycle_product(c1, c2, e2) - cycle_product(c2, c1, e2)) < 1e-12);
        CHECK(std::abs(cycle_product(lambda * c1, c2, e2) - lambda * cycle_product(c1, c2, e2)) <
              1e-10);
    }
}

TEST_CASE("predicates are projective") {
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> coef(-3, 3);
    std::uniform_real_distribution<double> logscale(-7.5, 7.5);
    for (int trial = 0; trial < 200; ++trial) {
        Cycle c1{Scalar(coef(rng)), {Scalar(coef(rng)), Scalar(coef(rng))}, Scalar(coef(rng))};
        Cycle c2{Scalar(coef(rng)), {Scalar(coef(rng)), Scalar(coef(rng))}, Scalar(coef(rng))};
        if (c1.max_coeff() < 0.2 || c2.max_coeff() < 0.2)
            continue;
        if (trial % 3 == 0) {
            // exercise the true branch of the zero-radius predicate
            c1 = point_cycle(coef(rng), coef(rng), e2, e2);
        }
        const double lam = (trial % 2 ? 1 : -1) * std::pow(10.0, logscale(rng));
        const Cycle s1 = Scalar(lam) * c1;
        const Cycle s2 = Scalar(lam) * c2;
        CHECK(orthogonal_holds(c1, c2, e2) == orthogonal_holds(s1, c2, e2));
        CHECK(orthogonal_holds(c1, c2, e2) == orthogonal_holds(c1, s2, e2));
        CHECK(tangent_holds(c1, c2, e2) == tangent_holds(s1, c2, e2));
        CHECK(is_zero_radius(c1, e2) == is_zero_radius(s1, e2));
        CHECK(product_sign_holds(c1, e2, 1.0) == product_sign_holds(s1, e2, 1.0));
        CHECK(only_reals_holds(c1) == only_reals_holds(s1));
    }
}

TEST_CASE("incidence against the point cycle") {
    // value_at(C, x) equals <C, P> for the zero-radius cycle P whose stored
    // data carries the metric-conjugated centre; in the elliptic plane the
    // conjugation is the identity, in the hyperbolic plane it mirrors v.
    std::mt19937 rng(43);
    std::uniform_real_distribution<double> coef(-2, 2);
    for (int trial = 0; trial < 200; ++trial) {
        const Metric& pm = (trial % 2) ? hyp : e2;
        const Metric cm = derive_cycle_metric(pm);
        const Cycle c{Scalar(coef(rng)), {Scalar(coef(rng)), Scalar(coef(rng))}, Scalar(coef(rng))};
        const double x[2] = {coef(rng), coef(rng)};
        const Cycle p = point_cycle(x[0], x[1], pm, cm);
        const double mirrored[2] = {-pm.at(0) * x[0], -pm.at(1) * x[1]};
        const Scalar lhs = value_at(c, mirrored, pm);
        const Scalar rhs = cycle_product(c, p, cm);
        CHECK(std::abs(lhs - rhs) < 1e-10);
        const bool on_cycle = std::abs(lhs) < 10 * epsilon();
        CHECK(on_cycle == (std::abs(rhs) < 10 * epsilon()));
    }
}
