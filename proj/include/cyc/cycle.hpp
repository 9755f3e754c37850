#pragma once

#include <span>
#include <vector>

#include "cyc/metric.hpp"
#include "cyc/scalar.hpp"

namespace cyc {

// Projective coefficient vector (k, l, m) of a quadric
//   -k sum sigma_i x_i^2 + 2 sum sigma_i l_i x_i + m = 0.
// C and lambda*C denote the same cycle for lambda != 0.
struct Cycle {
    Scalar k;
    std::vector<Scalar> l;
    Scalar m;

    Cycle() : k(0), m(0) {}
    Cycle(Scalar k_, std::vector<Scalar> l_, Scalar m_)
        : k(k_), l(std::move(l_)), m(m_) {}

    int dim() const { return static_cast<int>(l.size()); }
    bool is_zero() const;
    bool all_finite() const;
    // Largest coefficient modulus.
    double max_coeff() const;
};

Cycle real_line_cycle(int dim);
Cycle infinity_cycle(int dim);

// Moebius-invariant bilinear pairing 2 sum sigma_i l1_i l2_i + k1 m2 + k2 m1.
Scalar cycle_product(const Cycle& c1, const Cycle& c2, const Metric& metric);

// Value of the defining quadric at a point of the ambient space.
Scalar value_at(const Cycle& c, std::span<const double> x, const Metric& metric);

std::vector<Scalar> center(const Cycle& c);
Scalar radius_sq(const Cycle& c, const Metric& metric);
bool is_zero_radius(const Cycle& c, const Metric& metric);
bool is_flat(const Cycle& c);

// Divide by the first nonzero coefficient among k, m, l_0, l_1, ...
Cycle normalize_projective(const Cycle& c);
// Scale so that <C,C> = +-1 (sign of the self-product is preserved).
Cycle normalize_det(const Cycle& c, const Metric& metric);
// Scale so that k = 1.
Cycle normalize_k(const Cycle& c);
// Divide by the max-magnitude coefficient and snap entries below epsilon to 0.
Cycle num_normalize(const Cycle& c);

bool is_projectively_equal(const Cycle& a, const Cycle& b);
bool is_almost_equal(const Cycle& a, const Cycle& b);

bool coefficients_are_real(const Cycle& c);

Cycle from_center_radius_sq(std::span<const double> center, double r2, const Metric& metric);

Cycle operator*(const Scalar& s, const Cycle& c);
Cycle operator+(const Cycle& a, const Cycle& b);

} // namespace cyc
