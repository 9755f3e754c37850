#include "cyc/fsc.hpp"

#include <cmath>
#include <stdexcept>

namespace cyc {

FscMatrix fsc_identity(const Metric& metric) {
    return {CliffordElement::scalar(metric, 1), CliffordElement::scalar(metric, 0),
            CliffordElement::scalar(metric, 0), CliffordElement::scalar(metric, 1)};
}

FscMatrix fsc_mul(const FscMatrix& x, const FscMatrix& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

FscMatrix fsc_star(const FscMatrix& m) {
    return {conjugation(m.d), conjugation(m.b), conjugation(m.c), conjugation(m.a)};
}

CliffordElement pseudodeterminant(const FscMatrix& m) {
    return m.a * reversion(m.d) - m.b * reversion(m.c);
}

FscMatrix fsc_from_cycle(const Cycle& c, const Metric& metric) {
    if (c.dim() != metric.dim())
        throw std::invalid_argument("fsc: metric dimension mismatch");
    CliffordElement l = CliffordElement::vector(metric, c.l);
    return {l, CliffordElement::scalar(metric, c.m),
            CliffordElement::scalar(metric, c.k), -l};
}

Cycle cycle_from_fsc_relaxed(const FscMatrix& m) {
    Cycle c;
    c.k = m.c.scalar_part();
    c.m = m.b.scalar_part();
    c.l.resize(static_cast<size_t>(m.metric().dim()));
    for (int i = 0; i < m.metric().dim(); ++i)
        c.l[static_cast<size_t>(i)] = m.a.vector_component(i);
    return c;
}

Cycle cycle_from_fsc(const FscMatrix& m) {
    double residual = std::max(m.a.off_grade_magnitude(1), m.b.off_grade_magnitude(0));
    residual = std::max(residual, m.c.off_grade_magnitude(0));
    // d must be the negated vector of a
    const CliffordElement dsum = m.d + m.a;
    for (int blade = 0; blade < m.d.blade_count(); ++blade)
        residual = std::max(residual, std::abs(dsum.coeff(blade)));
    const double scale = std::max(1.0, std::abs(pseudodeterminant(m).scalar_part()));
    if (residual >= epsilon() * scale)
        throw std::domain_error("fsc: matrix does not represent a cycle (grade residual)");
    return cycle_from_fsc_relaxed(m);
}

Cycle fsc_similarity(const FscMatrix& m, const Cycle& c, const Metric& metric) {
    const FscMatrix image = fsc_mul(fsc_mul(m, fsc_from_cycle(c, metric)), fsc_star(m));
    return cycle_from_fsc(image);
}

FscMatrix sl2_lift(double a, double b, double c, double d, const Metric& metric) {
    if (metric.dim() != 2)
        throw std::invalid_argument("sl2_lift: defined in two dimensions only");
    const CliffordElement e0 = CliffordElement::basis_vector(metric, 0);
    return {CliffordElement::scalar(metric, a), e0 * Scalar(b),
            e0 * Scalar(-c), CliffordElement::scalar(metric, d)};
}

std::vector<double> moebius_point(const FscMatrix& m, std::span<const double> x) {
    const Metric& metric = m.metric();
    if (static_cast<int>(x.size()) != metric.dim())
        throw std::invalid_argument("moebius_point: dimension mismatch");
    std::vector<Scalar> comps(x.begin(), x.end());
    const CliffordElement xe = CliffordElement::vector(metric, comps);
    const CliffordElement num = m.a * xe + m.b;
    const CliffordElement den = m.c * xe + m.d;
    const CliffordElement image = num * clifford_inverse(den);
    if (image.off_grade_magnitude(1) >= 1e3 * epsilon())
        throw std::domain_error("moebius_point: image is not a point");
    std::vector<double> out(x.size());
    for (int i = 0; i < metric.dim(); ++i) {
        const Scalar v = image.vector_component(i);
        if (std::fabs(v.imag()) >= 1e3 * epsilon())
            throw std::domain_error("moebius_point: image has imaginary residual");
        out[static_cast<size_t>(i)] = v.real();
    }
    return out;
}

} // namespace cyc
