#pragma once

#include <span>
#include <functional>
#include <vector>

#include "cyc/cycle.hpp"

namespace cyc {

// Unknown coefficient slots are ordered [m, l_0, ..., l_{n-1}, k].
int unknown_count(int dim);
Cycle cycle_from_unknowns(std::span<const Scalar> u, int dim);
std::vector<Scalar> unknowns_from_cycle(const Cycle& c);

// Polynomial of degree <= 2 over the unknown slots:
//   value(u) = c + sum_i b[i] u_i + sum_{i<=j} q[i][j] u_i u_j.
class QuadraticForm {
public:
    explicit QuadraticForm(int vars);

    int vars() const { return vars_; }
    Scalar constant() const { return c_; }
    Scalar linear(int i) const { return b_[static_cast<size_t>(i)]; }
    Scalar quad(int i, int j) const;

    void set_constant(const Scalar& v) { c_ = v; }
    void set_linear(int i, const Scalar& v) { b_[static_cast<size_t>(i)] = v; }
    void set_quad(int i, int j, const Scalar& v);

    Scalar eval(std::span<const Scalar> u) const;
    bool is_linear() const;

    // Recovers the coefficients of a degree <= 2 map by probing it at
    // 0, e_i, 2 e_i and e_i + e_j.
    static QuadraticForm interpolate(int vars, const std::function<Scalar(std::span<const Scalar>)>& f);
    // Interpolation specialised to residual maps written on cycles.
    static QuadraticForm from_cycle_residual(int dim, const std::function<Scalar(const Cycle&)>& f);

    // Form over the free variables after substituting u = base + span * f.
    QuadraticForm compose_affine(std::span<const std::vector<Scalar>> columns,
                                 std::span<const Scalar> base) const;

private:
    int vars_;
    Scalar c_;
    std::vector<Scalar> b_;
    std::vector<Scalar> q_; // upper triangle, row-major
};

using PredicateFn = std::function<bool(const Cycle&)>;

struct SolutionSet {
    std::vector<Cycle> cycles;
    bool underdetermined = false;
    int free_count = 0;
};

// Solves the conjunction of degree <= 2 residuals over the n+2 cycle
// coefficients: the linear block exactly, then at most one quadratic
// residual, then numeric verification of the leftover nonlinear residuals
// and the boolean predicates. An empty set encodes infeasibility.
SolutionSet evaluate_cycle(const std::vector<QuadraticForm>& conditions,
                           const std::vector<PredicateFn>& predicates,
                           int dim);

// Keeps the first representative of each almost-projective-equality class.
std::vector<Cycle> unique_cycle(const std::vector<Cycle>& solutions);

} // namespace cyc
