#include "cyc/scalar.hpp"

#include <cmath>
#include <cstdio>

namespace cyc {

namespace {
double g_epsilon = 1e-8;
}

double epsilon() { return g_epsilon; }
void set_epsilon(double eps) { g_epsilon = eps; }

EpsilonGuard::EpsilonGuard(double eps) : saved_(g_epsilon) { g_epsilon = eps; }
EpsilonGuard::~EpsilonGuard() { g_epsilon = saved_; }

bool is_less_than_epsilon(const Scalar& x) {
    return x == Scalar(0) || std::abs(x) < g_epsilon;
}

bool is_less_than_epsilon(double x) {
    return x == 0.0 || std::fabs(x) < g_epsilon;
}

bool is_finite(const Scalar& x) {
    return std::isfinite(x.real()) && std::isfinite(x.imag());
}

std::string format_real(double v) {
    if (v == 0.0)
        v = 0.0; // fold -0
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string format_scalar(const Scalar& s) {
    if (std::fabs(s.imag()) < g_epsilon)
        return format_real(s.real());
    std::string out = format_real(s.real());
    out += (s.imag() < 0 ? "-" : "+");
    out += format_real(std::fabs(s.imag()));
    out += "i";
    return out;
}

} // namespace cyc
