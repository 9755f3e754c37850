#pragma once

#include <complex>
#include <string>

namespace cyc {

// Coefficient field. Complex so that imaginary solutions of quadratic
// conditions stay representable and can be filtered later.
using Scalar = std::complex<double>;

// Global comparison tolerance. Every test against zero goes through
// is_less_than_epsilon; the default 1e-8 is half the double precision digits.
double epsilon();
void set_epsilon(double eps);

// Restores the previous tolerance on scope exit.
class EpsilonGuard {
public:
    explicit EpsilonGuard(double eps);
    ~EpsilonGuard();
    EpsilonGuard(const EpsilonGuard&) = delete;
    EpsilonGuard& operator=(const EpsilonGuard&) = delete;

private:
    double saved_;
};

bool is_less_than_epsilon(const Scalar& x);
bool is_less_than_epsilon(double x);

bool is_finite(const Scalar& x);

// Shortest-ish decimal with up to 12 significant digits; "-0" folds to "0".
std::string format_real(double v);

// Imaginary part below epsilon is suppressed.
std::string format_scalar(const Scalar& s);

} // namespace cyc
