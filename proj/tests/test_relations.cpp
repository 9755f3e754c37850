#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cyc/figure.hpp"

using namespace cyc;

namespace {

const Metric e2 = elliptic_metric(2);
const std::map<std::string, double> no_params;

Cycle unit_circle() { return {Scalar(1), {Scalar(0), Scalar(0)}, Scalar(-1)}; }

ParentValues parent(const Cycle& c) { return {{c}, false}; }

} // namespace

TEST_CASE("branch counts per kind") {
    const ParentValues p = parent(unit_circle());
    CHECK(expand(is_orthogonal("p"), p, e2, e2, no_params).branches.size() == 1);
    CHECK(expand(is_tangent("p"), p, e2, e2, no_params).branches.size() == 4);
    CHECK(expand(is_tangent_i("p"), p, e2, e2, no_params).branches.size() == 2);
    CHECK(expand(is_tangent_o("p"), p, e2, e2, no_params).branches.size() == 2);
    CHECK(expand(make_angle("p", true, Expr(0.5)), p, e2, e2, no_params).branches.size() == 2);
    CHECK(expand(cycle_power("p", true, Expr(3)), p, e2, e2, no_params).branches.size() == 2);
    CHECK(expand(is_orthogonal("p"), ParentValues{{unit_circle(), real_line_cycle(2)}, false}, e2,
                 e2, no_params)
              .branches.size() == 2);
}

TEST_CASE("orthogonality to the real line pins l1") {
    const ConditionBranches b =
        expand(is_orthogonal("R"), parent(real_line_cycle(2)), e2, e2, no_params);
    REQUIRE(b.branches.size() == 1);
    REQUIRE(b.branches[0].equations.size() == 1);
    const QuadraticForm& q = b.branches[0].equations[0];
    // residual is -2 l_1 over the layout (m, l0, l1, k)
    CHECK(std::abs(q.linear(2) - Scalar(-2)) < 1e-12);
    CHECK(std::abs(q.linear(0)) < 1e-12);
    CHECK(std::abs(q.linear(1)) < 1e-12);
    CHECK(std::abs(q.linear(3)) < 1e-12);
    CHECK(q.is_linear());
}

TEST_CASE("tangent branches carry the root of the parent self-product") {
    const ConditionBranches b = expand(is_tangent("u"), parent(unit_circle()), e2, e2, no_params);
    REQUIRE(b.branches.size() == 4);
    const double root = std::sqrt(2.0);
    const double expected_sign[4] = {-1, -1, 1, 1};
    for (int i = 0; i < 4; ++i) {
        REQUIRE(b.branches[static_cast<size_t>(i)].equations.size() == 2);
        // first item is the det normalisation, second the linearised touch
        const QuadraticForm& quad = b.branches[static_cast<size_t>(i)].equations[0];
        CHECK_FALSE(quad.is_linear());
        CHECK(std::abs(std::abs(quad.constant()) - 1.0) < 1e-12);
        const QuadraticForm& aff = b.branches[static_cast<size_t>(i)].equations[1];
        CHECK(aff.is_linear());
        CHECK(std::abs(aff.constant() - Scalar(expected_sign[i] * root)) < 1e-12);
    }
}

TEST_CASE("self relations") {
    const ParentValues self{{}, true};
    const ConditionBranches b = expand(is_orthogonal("me", false), self, e2, e2, no_params);
    REQUIRE(b.branches.size() == 1);
    const QuadraticForm& q = b.branches[0].equations[0];
    // <U,U> in the point metric: 2 k m - 2 l0^2 - 2 l1^2
    CHECK(std::abs(q.quad(0, 3) - Scalar(2)) < 1e-12);
    CHECK(std::abs(q.quad(1, 1) - Scalar(-2)) < 1e-12);
    CHECK_THROWS(expand(is_tangent("me"), self, e2, e2, no_params));
}

TEST_CASE("different and adifferent are predicates") {
    const ConditionBranches b =
        expand(is_adifferent("u"), parent(unit_circle()), e2, e2, no_params);
    REQUIRE(b.branches.size() == 1);
    REQUIRE(b.branches[0].predicates.size() == 1);
    const PredicateFn& pred = b.branches[0].predicates[0];
    CHECK_FALSE(pred(unit_circle()));
    CHECK_FALSE(pred(Scalar(-3) * unit_circle()));
    CHECK(pred(real_line_cycle(2)));
}

TEST_CASE("reality filters") {
    const ConditionBranches b =
        expand(is_real_cycle("me"), ParentValues{{}, true}, e2, e2, no_params);
    const PredicateFn& real_radius = b.branches[0].predicates[0];
    CHECK(real_radius(unit_circle()));
    const Cycle imaginary_circle{Scalar(1), {Scalar(0), Scalar(0)}, Scalar(1)}; // r^2 = -1
    CHECK_FALSE(real_radius(imaginary_circle));

    const ConditionBranches r =
        expand(only_reals("me"), ParentValues{{}, true}, e2, e2, no_params);
    const PredicateFn& reals = r.branches[0].predicates[0];
    CHECK(reals(unit_circle()));
    Cycle complex_line = real_line_cycle(2);
    complex_line.l[0] = Scalar(0, 1);
    CHECK_FALSE(reals(complex_line));
}

TEST_CASE("sl2 relation produces the mapped cycle") {
    // circle of the modular-group figure under z -> -1/z
    const Cycle a{Scalar(1), {Scalar(0), Scalar(1.5)}, Scalar(2)};
    RelationSpec rel = sl2_transform("a", true, {Expr(0), Expr(-1), Expr(1), Expr(0)});
    const ConditionBranches b = expand(rel, parent(a), e2, e2, no_params);
    REQUIRE(b.branches.size() == 1);
    REQUIRE(b.branches[0].produced.size() == 1);
    CHECK(is_almost_equal(b.branches[0].produced[0],
                          Cycle{Scalar(1), {Scalar(0), Scalar(0.75)}, Scalar(0.5)}));
    CHECK_THROWS(expand(rel, parent(Cycle{Scalar(1), {Scalar(0), Scalar(0), Scalar(0)}, Scalar(1)}),
                        elliptic_metric(3), elliptic_metric(3), no_params));
}

TEST_CASE("moebius identity keeps the parent") {
    RelationSpec rel = moebius_transform("a", true, {Expr(1), Expr(0), Expr(0), Expr(1)});
    const Cycle c{Scalar(2), {Scalar(1), Scalar(-1)}, Scalar(0.5)};
    const ConditionBranches b = expand(rel, parent(c), e2, e2, no_params);
    CHECK(is_almost_equal(b.branches[0].produced[0], c));
}

TEST_CASE("check_tangent") {
    const Cycle line_u1{Scalar(0), {Scalar(1), Scalar(0)}, Scalar(2)};
    CHECK(std::abs(check_tangent(unit_circle(), line_u1, e2)) < 1e-12);
    CHECK(check_tangent(unit_circle(), real_line_cycle(2), e2).real() == doctest::Approx(-4));
    const Cycle c{Scalar(3), {Scalar(0.5), Scalar(-2)}, Scalar(1)};
    CHECK(std::abs(check_tangent(c, c, e2)) < 1e-12);
}

TEST_CASE("focal orthogonality round trip") {
    // solutions of the focal relation satisfy the matching check residual
    std::mt19937 rng(67);
    std::uniform_real_distribution<double> coef(-2, 2);
    int checked = 0;
    for (int trial = 0; trial < 30; ++trial) {
        const double ctr[2] = {coef(rng), coef(rng)};
        const double r = 0.4 + std::fabs(coef(rng));
        const double px[2] = {coef(rng) * 2, coef(rng) * 2};
        Figure f(e2);
        f.add_cycle(from_center_radius_sq(ctr, r * r, e2), "P");
        f.add_point(px, "X");
        f.add_cycle_rel({is_f_orthogonal("P"), is_orthogonal("X"), is_orthogonal("R")}, "U");
        for (const Scalar& res : f.check_rel("U", "P", CheckKind::f_orthogonal)) {
            CHECK(std::abs(res) < 1e3 * epsilon());
            ++checked;
        }
    }
    CHECK(checked > 20);
}

TEST_CASE("power relations measure back the declared quantity") {
    // the branch linearisation fixes an orientation: one root realises the
    // declared power through the +1 form, the other through the -1 form
    std::mt19937 rng(71);
    std::uniform_real_distribution<double> coef(-2, 2);
    int plus_seen = 0, checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const double ctr[2] = {coef(rng), coef(rng)};
        const double r = 0.4 + std::fabs(coef(rng));
        const double d = 0.3 + std::fabs(coef(rng)) * 3;
        const double px[2] = {coef(rng) * 2, coef(rng) * 2};
        Figure f(e2);
        f.add_cycle(from_center_radius_sq(ctr, r * r, e2), "P");
        f.add_point(px, "X");
        f.add_cycle_rel({cycle_power("P", true, Expr(d)), is_orthogonal("X"),
                         is_orthogonal(f.real_line_key())},
                        "U");
        for (const Cycle& u : f.get_cycles("U")) {
            if (!coefficients_are_real(u) || std::abs(num_normalize(u).k) < 1e-6)
                continue;
            ++checked;
            const Cycle& p = f.get_cycles("P")[0];
            const double plus = std::abs(power_is(u, p, e2, 1.0) - Scalar(d));
            const double minus = std::abs(power_is(u, p, e2, -1.0) - Scalar(d));
            CHECK(std::min(plus, minus) < 1e3 * epsilon());
            plus_seen += plus < 1e3 * epsilon();
        }
    }
    CHECK(checked > 50);
    CHECK(plus_seen > 10);
}

TEST_CASE("cross-tangential distance construction measures back") {
    std::mt19937 rng(79);
    std::uniform_real_distribution<double> coef(-2, 2);
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const double ctr[2] = {coef(rng), coef(rng)};
        const double r = 0.4 + std::fabs(coef(rng));
        const double d = 0.5 + std::fabs(coef(rng));
        const double px[2] = {coef(rng) * 2, coef(rng) * 2};
        Figure f(e2);
        f.add_cycle(from_center_radius_sq(ctr, r * r, e2), "P");
        f.add_point(px, "X");
        f.add_cycle_rel({cross_t_distance("P", true, Expr(d)), is_orthogonal("X"),
                         is_orthogonal(f.real_line_key())},
                        "U");
        for (const Cycle& u : f.get_cycles("U")) {
            if (!coefficients_are_real(u) || std::abs(num_normalize(u).k) < 1e-6)
                continue;
            ++checked;
            const Cycle& p = f.get_cycles("P")[0];
            const double cross = std::abs(sq_cross_t_distance_is(u, p, e2) - Scalar(d * d));
            const double plain = std::abs(sq_t_distance_is(u, p, e2) - Scalar(d * d));
            CHECK(std::min(cross, plain) < 1e3 * epsilon());
        }
    }
    CHECK(checked > 30);
}

TEST_CASE("zero-angle solutions are orthogonal to the parent") {
    std::mt19937 rng(73);
    std::uniform_real_distribution<double> coef(-2, 2);
    for (int trial = 0; trial < 40; ++trial) {
        const double ctr[2] = {coef(rng), coef(rng)};
        const double r = 0.4 + std::fabs(coef(rng));
        const double px[2] = {coef(rng) * 2, coef(rng) * 2};
        Figure f(e2);
        f.add_cycle(from_center_radius_sq(ctr, r * r, e2), "P");
        f.add_point(px, "X");
        f.add_cycle_rel({make_angle("P", true, Expr(0)), is_orthogonal("X"),
                         is_orthogonal(f.real_line_key())},
                        "W");
        const Cycle pn = normalize_det(f.get_cycles("P")[0], e2);
        for (const Cycle& w : f.get_cycles("W"))
            CHECK(std::abs(cycle_product(num_normalize(w), pn, e2)) < 10 * epsilon());
    }
}

TEST_CASE("measures") {
    // the two solutions of the tangential-distance problem against circle A
    const Cycle a{Scalar(1), {Scalar(7), Scalar(1)}, Scalar(46)};
    const Cycle d1{Scalar(-1), {Scalar(0), Scalar(0)}, Scalar(1)};
    const Cycle d2{Scalar(-0.0069444444444444444),
                   {Scalar(-0.089285714285714285), Scalar(0.037202380952380952)},
                   Scalar(-1)};
    CHECK(sq_cross_t_distance_is(d1, a, e2).real() == doctest::Approx(41).epsilon(1e-9));
    CHECK(sq_cross_t_distance_is(d2, a, e2).real() ==
          doctest::Approx(-7.571428571428571435).epsilon(1e-9));

    CHECK(std::abs(std::abs(angle_is(unit_circle(), unit_circle(), e2)) - 1.0) < 1e-12);
    CHECK_THROWS(angle_is(Cycle{Scalar(1), {Scalar(0), Scalar(0)}, Scalar(0)}, a, e2));
    CHECK_THROWS(power_is(real_line_cycle(2), a, e2, 1.0));
}
