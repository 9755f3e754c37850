#pragma once

#include "cyc/clifford.hpp"
#include "cyc/cycle.hpp"

namespace cyc {

// 2x2 matrix [[a, b], [c, d]] with Clifford entries. A cycle (k, l, m) is
// encoded as [[l, m], [k, -l]] with l the grade-1 vector of its middle
// coefficients.
struct FscMatrix {
    CliffordElement a, b, c, d;

    FscMatrix(CliffordElement a_, CliffordElement b_, CliffordElement c_, CliffordElement d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}

    const Metric& metric() const { return a.metric(); }
};

FscMatrix fsc_identity(const Metric& metric);
FscMatrix fsc_mul(const FscMatrix& x, const FscMatrix& y);
// M* = [[conj(d), conj(b)], [conj(c), conj(a)]].
FscMatrix fsc_star(const FscMatrix& m);
// Pseudodeterminant a d* - b c*.
CliffordElement pseudodeterminant(const FscMatrix& m);

FscMatrix fsc_from_cycle(const Cycle& c, const Metric& metric);
// Inverse of fsc_from_cycle; the grade residual of the entries must stay
// below epsilon, otherwise the matrix does not represent a cycle.
Cycle cycle_from_fsc(const FscMatrix& m);
// Same extraction with the residual ignored (internal plumbing for residual
// maps evaluated away from the cycle manifold).
Cycle cycle_from_fsc_relaxed(const FscMatrix& m);

// M FSC(C) M* read back as a cycle.
Cycle fsc_similarity(const FscMatrix& m, const Cycle& c, const Metric& metric);

// Lift of a real 2x2 matrix to [[a, b e_0], [-c e_0, d]]; defined in two
// dimensions only, with pseudodeterminant (ad - bc).
FscMatrix sl2_lift(double a, double b, double c, double d, const Metric& metric);

// Point action x -> (a x + b)(c x + d)^{-1} on real n-vectors.
std::vector<double> moebius_point(const FscMatrix& m, std::span<const double> x);

} // namespace cyc
