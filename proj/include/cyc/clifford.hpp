#pragma once

#include <array>
#include <span>

#include "cyc/metric.hpp"
#include "cyc/scalar.hpp"

namespace cyc {

// Element of the Clifford algebra Cl(sigma) over a diagonal metric with at
// most four generators. Blades are indexed by bit masks over the basis
// vectors; storage is dense over the 2^n coefficients.
class CliffordElement {
public:
    static constexpr int kMaxDim = 4;

    explicit CliffordElement(Metric metric);

    static CliffordElement scalar(const Metric& metric, const Scalar& value);
    static CliffordElement basis_vector(const Metric& metric, int i);
    static CliffordElement vector(const Metric& metric, std::span<const Scalar> components);

    const Metric& metric() const { return metric_; }
    int dim() const { return metric_.dim(); }
    int blade_count() const { return 1 << dim(); }

    Scalar coeff(int blade) const { return coeff_.at(static_cast<size_t>(blade)); }
    void set_coeff(int blade, const Scalar& v) { coeff_.at(static_cast<size_t>(blade)) = v; }

    Scalar scalar_part() const { return coeff_[0]; }
    Scalar vector_component(int i) const { return coeff(1 << i); }

    bool is_zero() const;
    // Largest |coefficient| outside the given grade.
    double off_grade_magnitude(int grade) const;

    CliffordElement operator+(const CliffordElement& o) const;
    CliffordElement operator-(const CliffordElement& o) const;
    CliffordElement operator-() const;
    CliffordElement operator*(const Scalar& s) const;

private:
    Metric metric_;
    std::array<Scalar, 1 << kMaxDim> coeff_{};
};

// Associative product with e_i^2 = sigma_i and e_i e_j = -e_j e_i.
CliffordElement clifford_mul(const CliffordElement& x, const CliffordElement& y);
inline CliffordElement operator*(const CliffordElement& x, const CliffordElement& y) {
    return clifford_mul(x, y);
}

// Reversion fixes vectors, (xy)* = y* x*.
CliffordElement reversion(const CliffordElement& x);
// Conjugation negates vectors, conj(xy) = conj(y) conj(x).
CliffordElement conjugation(const CliffordElement& x);

CliffordElement grade_part(const CliffordElement& x, int grade);

// Multiplicative inverse via conj(x)/(x conj(x)); requires x conj(x) to be a
// nonzero scalar (true for vectors and versors).
CliffordElement clifford_inverse(const CliffordElement& x);

} // namespace cyc
