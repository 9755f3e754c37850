#include "cyc/clifford.hpp"

#include <bit>
#include <stdexcept>

namespace cyc {

namespace {

void check_same_metric(const CliffordElement& x, const CliffordElement& y) {
    if (!(x.metric() == y.metric()))
        throw std::invalid_argument("clifford: metric mismatch");
}

// Sign of reordering the concatenation of two blades into canonical order.
int reorder_sign(unsigned a, unsigned b) {
    int swaps = 0;
    a >>= 1;
    while (a != 0) {
        swaps += std::popcount(a & b);
        a >>= 1;
    }
    return (swaps & 1) ? -1 : 1;
}

} // namespace

CliffordElement::CliffordElement(Metric metric) : metric_(std::move(metric)) {
    if (metric_.dim() > kMaxDim)
        throw std::invalid_argument("clifford: dimension above 4 is not supported");
}

CliffordElement CliffordElement::scalar(const Metric& metric, const Scalar& value) {
    CliffordElement e(metric);
    e.coeff_[0] = value;
    return e;
}

CliffordElement CliffordElement::basis_vector(const Metric& metric, int i) {
    if (i < 0 || i >= metric.dim())
        throw std::invalid_argument("clifford: basis index out of range");
    CliffordElement e(metric);
    e.set_coeff(1 << i, Scalar(1));
    return e;
}

CliffordElement CliffordElement::vector(const Metric& metric, std::span<const Scalar> components) {
    if (static_cast<int>(components.size()) != metric.dim())
        throw std::invalid_argument("clifford: vector has wrong dimension");
    CliffordElement e(metric);
    for (int i = 0; i < metric.dim(); ++i)
        e.set_coeff(1 << i, components[static_cast<size_t>(i)]);
    return e;
}

bool CliffordElement::is_zero() const {
    for (int b = 0; b < blade_count(); ++b)
        if (!is_less_than_epsilon(coeff(b)))
            return false;
    return true;
}

double CliffordElement::off_grade_magnitude(int grade) const {
    double worst = 0.0;
    for (int b = 0; b < blade_count(); ++b) {
        if (std::popcount(static_cast<unsigned>(b)) == grade)
            continue;
        worst = std::max(worst, std::abs(coeff(b)));
    }
    return worst;
}

CliffordElement CliffordElement::operator+(const CliffordElement& o) const {
    check_same_metric(*this, o);
    CliffordElement r(metric_);
    for (int b = 0; b < blade_count(); ++b)
        r.set_coeff(b, coeff(b) + o.coeff(b));
    return r;
}

CliffordElement CliffordElement::operator-(const CliffordElement& o) const {
    check_same_metric(*this, o);
    CliffordElement r(metric_);
    for (int b = 0; b < blade_count(); ++b)
        r.set_coeff(b, coeff(b) - o.coeff(b));
    return r;
}

CliffordElement CliffordElement::operator-() const {
    CliffordElement r(metric_);
    for (int b = 0; b < blade_count(); ++b)
        r.set_coeff(b, -coeff(b));
    return r;
}

CliffordElement CliffordElement::operator*(const Scalar& s) const {
    CliffordElement r(metric_);
    for (int b = 0; b < blade_count(); ++b)
        r.set_coeff(b, coeff(b) * s);
    return r;
}

CliffordElement clifford_mul(const CliffordElement& x, const CliffordElement& y) {
    check_same_metric(x, y);
    CliffordElement r(x.metric());
    const int blades = x.blade_count();
    for (int a = 0; a < blades; ++a) {
        if (x.coeff(a) == Scalar(0))
            continue;
        for (int b = 0; b < blades; ++b) {
            if (y.coeff(b) == Scalar(0))
                continue;
            Scalar factor = x.coeff(a) * y.coeff(b) *
                            Scalar(reorder_sign(static_cast<unsigned>(a), static_cast<unsigned>(b)));
            unsigned common = static_cast<unsigned>(a) & static_cast<unsigned>(b);
            for (int i = 0; common != 0; ++i, common >>= 1)
                if (common & 1u)
                    factor *= x.metric().at(i);
            const int target = a ^ b;
            r.set_coeff(target, r.coeff(target) + factor);
        }
    }
    return r;
}

namespace {

CliffordElement grade_signed(const CliffordElement& x, int parity_num) {
    CliffordElement r(x.metric());
    for (int b = 0; b < x.blade_count(); ++b) {
        const int g = std::popcount(static_cast<unsigned>(b));
        const int exponent = (parity_num == 0) ? g * (g - 1) / 2 : g * (g + 1) / 2;
        r.set_coeff(b, (exponent & 1) ? -x.coeff(b) : x.coeff(b));
    }
    return r;
}

} // namespace

CliffordElement reversion(const CliffordElement& x) { return grade_signed(x, 0); }
CliffordElement conjugation(const CliffordElement& x) { return grade_signed(x, 1); }

CliffordElement grade_part(const CliffordElement& x, int grade) {
    CliffordElement r(x.metric());
    for (int b = 0; b < x.blade_count(); ++b)
        if (std::popcount(static_cast<unsigned>(b)) == grade)
            r.set_coeff(b, x.coeff(b));
    return r;
}

CliffordElement clifford_inverse(const CliffordElement& x) {
    const CliffordElement xbar = conjugation(x);
    const CliffordElement norm = clifford_mul(x, xbar);
    if (norm.off_grade_magnitude(0) >= epsilon())
        throw std::domain_error("clifford: element has no conjugate-based inverse");
    const Scalar n = norm.scalar_part();
    if (is_less_than_epsilon(n))
        throw std::domain_error("clifford: singular element");
    return xbar * (Scalar(1) / n);
}

} // namespace cyc
