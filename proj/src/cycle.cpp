#include "cyc/cycle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cyc {

namespace {

void check_dims(const Cycle& a, const Cycle& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("cycle: dimension mismatch");
}

void check_metric(const Cycle& c, const Metric& metric) {
    if (c.dim() != metric.dim())
        throw std::invalid_argument("cycle: metric dimension mismatch");
}

Scalar snap_small(const Scalar& v) {
    double re = std::fabs(v.real()) < epsilon() ? 0.0 : v.real();
    double im = std::fabs(v.imag()) < epsilon() ? 0.0 : v.imag();
    return {re, im};
}

} // namespace

bool Cycle::is_zero() const {
    if (!is_less_than_epsilon(k) || !is_less_than_epsilon(m))
        return false;
    for (const Scalar& li : l)
        if (!is_less_than_epsilon(li))
            return false;
    return true;
}

bool Cycle::all_finite() const {
    if (!is_finite(k) || !is_finite(m))
        return false;
    for (const Scalar& li : l)
        if (!is_finite(li))
            return false;
    return true;
}

double Cycle::max_coeff() const {
    double r = std::max(std::abs(k), std::abs(m));
    for (const Scalar& li : l)
        r = std::max(r, std::abs(li));
    return r;
}

Cycle real_line_cycle(int dim) {
    std::vector<Scalar> l(static_cast<size_t>(dim), Scalar(0));
    l.back() = Scalar(1);
    return {Scalar(0), std::move(l), Scalar(0)};
}

Cycle infinity_cycle(int dim) {
    return {Scalar(0), std::vector<Scalar>(static_cast<size_t>(dim), Scalar(0)), Scalar(1)};
}

Scalar cycle_product(const Cycle& c1, const Cycle& c2, const Metric& metric) {
    check_dims(c1, c2);
    check_metric(c1, metric);
    Scalar s(0);
    for (int i = 0; i < c1.dim(); ++i)
        s += metric.at(i) * c1.l[static_cast<size_t>(i)] * c2.l[static_cast<size_t>(i)];
    return 2.0 * s + c1.k * c2.m + c2.k * c1.m;
}

Scalar value_at(const Cycle& c, std::span<const double> x, const Metric& metric) {
    check_metric(c, metric);
    if (static_cast<int>(x.size()) != c.dim())
        throw std::invalid_argument("cycle: point dimension mismatch");
    Scalar quad(0), lin(0);
    for (int i = 0; i < c.dim(); ++i) {
        quad += metric.at(i) * x[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
        lin += metric.at(i) * c.l[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
    }
    return -c.k * quad + 2.0 * lin + c.m;
}

std::vector<Scalar> center(const Cycle& c) {
    if (std::abs(c.k) < epsilon())
        throw std::domain_error("cycle: flat cycle has no centre");
    std::vector<Scalar> r;
    r.reserve(c.l.size());
    for (const Scalar& li : c.l)
        r.push_back(li / c.k);
    return r;
}

Scalar radius_sq(const Cycle& c, const Metric& metric) {
    if (std::abs(c.k) < epsilon())
        throw std::domain_error("cycle: flat cycle has no radius");
    return -cycle_product(c, c, metric) / (2.0 * c.k * c.k);
}

bool is_zero_radius(const Cycle& c, const Metric& metric) {
    const Cycle n = num_normalize(c);
    return is_less_than_epsilon(cycle_product(n, n, metric));
}

bool is_flat(const Cycle& c) {
    const Cycle n = num_normalize(c);
    return is_less_than_epsilon(n.k);
}

Cycle normalize_projective(const Cycle& c) {
    if (c.is_zero())
        throw std::domain_error("cycle: the zero vector is not a cycle");
    Scalar ratio = c.k;
    if (ratio == Scalar(0))
        ratio = c.m;
    for (size_t i = 0; ratio == Scalar(0) && i < c.l.size(); ++i)
        ratio = c.l[i];
    Cycle r = c;
    r.k /= ratio;
    r.m /= ratio;
    for (Scalar& li : r.l)
        li /= ratio;
    return r;
}

Cycle normalize_det(const Cycle& c, const Metric& metric) {
    const Scalar self = cycle_product(c, c, metric);
    if (is_less_than_epsilon(self))
        throw std::domain_error("cycle: an isotropic cycle cannot be det-normalised");
    const double scale = std::sqrt(std::abs(self));
    Cycle r = c;
    r.k /= scale;
    r.m /= scale;
    for (Scalar& li : r.l)
        li /= scale;
    return r;
}

Cycle normalize_k(const Cycle& c) {
    if (std::abs(c.k) < epsilon())
        throw std::domain_error("cycle: flat cycle cannot be k-normalised");
    Cycle r = c;
    r.m /= r.k;
    for (Scalar& li : r.l)
        li /= r.k;
    r.k = Scalar(1);
    return r;
}

Cycle num_normalize(const Cycle& c) {
    const double r = c.max_coeff();
    if (is_less_than_epsilon(r))
        return c;
    Cycle out = c;
    out.k = snap_small(out.k / r);
    out.m = snap_small(out.m / r);
    for (Scalar& li : out.l)
        li = snap_small(li / r);
    return out;
}

namespace {

// Proportionality of the coefficient vectors through vanishing cross
// products against an anchor coefficient; tol = 0 asks for exact zeros.
bool proportional(const Cycle& a, const Cycle& b, double tol) {
    if (a.dim() != b.dim())
        return false;
    const Cycle c1 = num_normalize(a);
    const Cycle c2 = num_normalize(b);
    std::vector<Scalar> u = {c1.k, c1.m};
    std::vector<Scalar> v = {c2.k, c2.m};
    for (int i = 0; i < c1.dim(); ++i) {
        u.push_back(c1.l[static_cast<size_t>(i)]);
        v.push_back(c2.l[static_cast<size_t>(i)]);
    }
    size_t anchor = 0;
    double best = 0.0;
    for (size_t i = 0; i < u.size(); ++i)
        if (std::abs(u[i]) > best) {
            best = std::abs(u[i]);
            anchor = i;
        }
    if (best == 0.0)
        return false;
    for (size_t i = 0; i < u.size(); ++i) {
        const Scalar cross = u[i] * v[anchor] - v[i] * u[anchor];
        if (tol == 0.0 ? cross != Scalar(0) : std::abs(cross) >= tol)
            return false;
    }
    return true;
}

} // namespace

bool is_projectively_equal(const Cycle& a, const Cycle& b) {
    return proportional(a, b, 0.0);
}

bool is_almost_equal(const Cycle& a, const Cycle& b) {
    return proportional(a, b, epsilon());
}

bool coefficients_are_real(const Cycle& c) {
    const Cycle n = num_normalize(c);
    if (std::fabs(n.k.imag()) >= epsilon() || std::fabs(n.m.imag()) >= epsilon())
        return false;
    for (const Scalar& li : n.l)
        if (std::fabs(li.imag()) >= epsilon())
            return false;
    return true;
}

Cycle from_center_radius_sq(std::span<const double> c, double r2, const Metric& metric) {
    if (static_cast<int>(c.size()) != metric.dim())
        throw std::invalid_argument("cycle: centre dimension mismatch");
    Cycle out;
    out.k = Scalar(1);
    out.l.assign(c.begin(), c.end());
    out.m = Scalar(0);
    // pick m so that -<C,C>/(2k^2) equals r2
    Scalar s(0);
    for (int i = 0; i < metric.dim(); ++i)
        s += metric.at(i) * out.l[static_cast<size_t>(i)] * out.l[static_cast<size_t>(i)];
    out.m = -s - r2;
    return out;
}

Cycle operator*(const Scalar& s, const Cycle& c) {
    Cycle r = c;
    r.k *= s;
    r.m *= s;
    for (Scalar& li : r.l)
        li *= s;
    return r;
}

Cycle operator+(const Cycle& a, const Cycle& b) {
    check_dims(a, b);
    Cycle r = a;
    r.k += b.k;
    r.m += b.m;
    for (size_t i = 0; i < r.l.size(); ++i)
        r.l[i] += b.l[i];
    return r;
}

} // namespace cyc
