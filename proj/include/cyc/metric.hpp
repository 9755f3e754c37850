#pragma once

#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace cyc {

// Diagonal signature vector: sigma[i] = e_i^2, conventionally in {-1, 0, +1}.
struct Metric {
    std::vector<double> sigma;

    Metric() = default;
    explicit Metric(std::vector<double> s) : sigma(std::move(s)) {
        if (sigma.empty())
            throw std::invalid_argument("Metric: dimension must be >= 1");
    }
    Metric(std::initializer_list<double> s) : Metric(std::vector<double>(s)) {}

    int dim() const { return static_cast<int>(sigma.size()); }
    double at(int i) const { return sigma.at(static_cast<size_t>(i)); }

    bool operator==(const Metric& o) const { return sigma == o.sigma; }
};

inline Metric elliptic_metric(int n) {
    return Metric(std::vector<double>(static_cast<size_t>(n), -1.0));
}

// Default cycle-space metric sigma_c[i] = -chi(-sigma[i]) where chi is the
// Heaviside step (chi(t) = 1 for t >= 0, else -1). Elliptic and hyperbolic
// point spaces keep their metric, a parabolic point space gets an elliptic
// cycle space.
inline Metric derive_cycle_metric(const Metric& point) {
    std::vector<double> s;
    s.reserve(point.sigma.size());
    for (double v : point.sigma)
        s.push_back(-(-v >= 0.0 ? 1.0 : -1.0));
    return Metric(std::move(s));
}

} // namespace cyc
