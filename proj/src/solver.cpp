#include "cyc/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cyc {

int unknown_count(int dim) { return dim + 2; }

Cycle cycle_from_unknowns(std::span<const Scalar> u, int dim) {
    if (static_cast<int>(u.size()) != unknown_count(dim))
        throw std::invalid_argument("solver: unknown vector has wrong length");
    Cycle c;
    c.m = u[0];
    c.l.assign(u.begin() + 1, u.begin() + 1 + dim);
    c.k = u[static_cast<size_t>(dim) + 1];
    return c;
}

std::vector<Scalar> unknowns_from_cycle(const Cycle& c) {
    std::vector<Scalar> u;
    u.reserve(static_cast<size_t>(c.dim()) + 2);
    u.push_back(c.m);
    u.insert(u.end(), c.l.begin(), c.l.end());
    u.push_back(c.k);
    return u;
}

QuadraticForm::QuadraticForm(int vars)
    : vars_(vars), c_(0), b_(static_cast<size_t>(vars), Scalar(0)),
      q_(static_cast<size_t>(vars) * static_cast<size_t>(vars), Scalar(0)) {}

Scalar QuadraticForm::quad(int i, int j) const {
    if (i > j)
        std::swap(i, j);
    return q_[static_cast<size_t>(i) * static_cast<size_t>(vars_) + static_cast<size_t>(j)];
}

void QuadraticForm::set_quad(int i, int j, const Scalar& v) {
    if (i > j)
        std::swap(i, j);
    q_[static_cast<size_t>(i) * static_cast<size_t>(vars_) + static_cast<size_t>(j)] = v;
}

Scalar QuadraticForm::eval(std::span<const Scalar> u) const {
    Scalar r = c_;
    for (int i = 0; i < vars_; ++i) {
        r += b_[static_cast<size_t>(i)] * u[static_cast<size_t>(i)];
        for (int j = i; j < vars_; ++j) {
            const Scalar& qij = q_[static_cast<size_t>(i) * static_cast<size_t>(vars_) + static_cast<size_t>(j)];
            if (qij != Scalar(0))
                r += qij * u[static_cast<size_t>(i)] * u[static_cast<size_t>(j)];
        }
    }
    return r;
}

bool QuadraticForm::is_linear() const {
    double scale = std::abs(c_);
    for (const Scalar& v : b_)
        scale = std::max(scale, std::abs(v));
    for (const Scalar& v : q_)
        scale = std::max(scale, std::abs(v));
    const double tol = epsilon() * std::max(1.0, scale);
    for (const Scalar& v : q_)
        if (std::abs(v) >= tol)
            return false;
    return true;
}

QuadraticForm QuadraticForm::interpolate(int vars, const std::function<Scalar(std::span<const Scalar>)>& f) {
    QuadraticForm out(vars);
    std::vector<Scalar> u(static_cast<size_t>(vars), Scalar(0));
    const Scalar c0 = f(u);
    out.set_constant(c0);
    std::vector<Scalar> f1(static_cast<size_t>(vars));
    for (int i = 0; i < vars; ++i) {
        u[static_cast<size_t>(i)] = Scalar(1);
        f1[static_cast<size_t>(i)] = f(u);
        u[static_cast<size_t>(i)] = Scalar(2);
        const Scalar f2 = f(u);
        u[static_cast<size_t>(i)] = Scalar(0);
        const Scalar aii = (f2 - 2.0 * f1[static_cast<size_t>(i)] + c0) / 2.0;
        out.set_quad(i, i, aii);
        out.set_linear(i, f1[static_cast<size_t>(i)] - c0 - aii);
    }
    for (int i = 0; i < vars; ++i)
        for (int j = i + 1; j < vars; ++j) {
            u[static_cast<size_t>(i)] = Scalar(1);
            u[static_cast<size_t>(j)] = Scalar(1);
            const Scalar fij = f(u);
            u[static_cast<size_t>(i)] = Scalar(0);
            u[static_cast<size_t>(j)] = Scalar(0);
            out.set_quad(i, j, fij - c0 - out.linear(i) - out.linear(j) - out.quad(i, i) - out.quad(j, j));
        }
    return out;
}

QuadraticForm QuadraticForm::from_cycle_residual(int dim, const std::function<Scalar(const Cycle&)>& f) {
    return interpolate(unknown_count(dim), [&](std::span<const Scalar> u) {
        return f(cycle_from_unknowns(u, dim));
    });
}

QuadraticForm QuadraticForm::compose_affine(std::span<const std::vector<Scalar>> columns,
                                            std::span<const Scalar> base) const {
    const int f = static_cast<int>(columns.size());
    std::vector<Scalar> u(base.begin(), base.end());
    return interpolate(f, [&](std::span<const Scalar> fv) {
        for (size_t i = 0; i < u.size(); ++i) {
            u[i] = base[i];
            for (int j = 0; j < f; ++j)
                u[i] += columns[static_cast<size_t>(j)][i] * fv[static_cast<size_t>(j)];
        }
        return eval(u);
    });
}

namespace {

struct LinearFamily {
    bool inconsistent = false;
    std::vector<Scalar> base;                 // particular solution (free vars = 0)
    std::vector<int> free_vars;               // unknown indices, layout order
    std::vector<std::vector<Scalar>> columns; // nullspace column per free var
};

// Full-pivot Gaussian elimination; rows come from the linear residuals
// c + b.u = 0, i.e. b.u = -c.
LinearFamily solve_linear_block(const std::vector<const QuadraticForm*>& rows, int n) {
    const int r = static_cast<int>(rows.size());
    std::vector<std::vector<Scalar>> a(static_cast<size_t>(r), std::vector<Scalar>(static_cast<size_t>(n), Scalar(0)));
    std::vector<Scalar> rhs(static_cast<size_t>(r), Scalar(0));
    double scale = 1.0;
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < n; ++j) {
            a[static_cast<size_t>(i)][static_cast<size_t>(j)] = rows[static_cast<size_t>(i)]->linear(j);
            scale = std::max(scale, std::abs(a[static_cast<size_t>(i)][static_cast<size_t>(j)]));
        }
        rhs[static_cast<size_t>(i)] = -rows[static_cast<size_t>(i)]->constant();
        scale = std::max(scale, std::abs(rhs[static_cast<size_t>(i)]));
    }
    const double tol = epsilon() * scale;

    std::vector<int> pivot_col;
    std::vector<int> row_of_step;
    std::vector<bool> col_used(static_cast<size_t>(n), false);
    int step = 0;
    for (; step < std::min(r, n); ++step) {
        int pr = -1, pc = -1;
        double best = tol;
        for (int i = step; i < r; ++i)
            for (int j = 0; j < n; ++j) {
                if (col_used[static_cast<size_t>(j)])
                    continue;
                const double v = std::abs(a[static_cast<size_t>(i)][static_cast<size_t>(j)]);
                if (v > best) {
                    best = v;
                    pr = i;
                    pc = j;
                }
            }
        if (pr < 0)
            break;
        std::swap(a[static_cast<size_t>(pr)], a[static_cast<size_t>(step)]);
        std::swap(rhs[static_cast<size_t>(pr)], rhs[static_cast<size_t>(step)]);
        col_used[static_cast<size_t>(pc)] = true;
        pivot_col.push_back(pc);
        row_of_step.push_back(step);
        for (int i = step + 1; i < r; ++i) {
            const Scalar factor = a[static_cast<size_t>(i)][static_cast<size_t>(pc)] / a[static_cast<size_t>(step)][static_cast<size_t>(pc)];
            if (factor == Scalar(0))
                continue;
            for (int j = 0; j < n; ++j)
                a[static_cast<size_t>(i)][static_cast<size_t>(j)] -= factor * a[static_cast<size_t>(step)][static_cast<size_t>(j)];
            a[static_cast<size_t>(i)][static_cast<size_t>(pc)] = Scalar(0);
            rhs[static_cast<size_t>(i)] -= factor * rhs[static_cast<size_t>(step)];
        }
    }

    LinearFamily fam;
    for (int i = step; i < r; ++i)
        if (std::abs(rhs[static_cast<size_t>(i)]) >= tol) {
            fam.inconsistent = true;
            return fam;
        }

    for (int j = 0; j < n; ++j)
        if (!col_used[static_cast<size_t>(j)])
            fam.free_vars.push_back(j);
    const int nfree = static_cast<int>(fam.free_vars.size());

    // each unknown as an affine expression [const, f_0 ... f_{nfree-1}]
    std::vector<std::vector<Scalar>> expr(static_cast<size_t>(n),
                                          std::vector<Scalar>(static_cast<size_t>(nfree) + 1, Scalar(0)));
    for (int j = 0; j < nfree; ++j)
        expr[static_cast<size_t>(fam.free_vars[static_cast<size_t>(j)])][static_cast<size_t>(j) + 1] = Scalar(1);
    for (int s = static_cast<int>(pivot_col.size()) - 1; s >= 0; --s) {
        const int pc = pivot_col[static_cast<size_t>(s)];
        std::vector<Scalar> acc(static_cast<size_t>(nfree) + 1, Scalar(0));
        acc[0] = rhs[static_cast<size_t>(s)];
        for (int j = 0; j < n; ++j) {
            if (j == pc)
                continue;
            const Scalar& coeff = a[static_cast<size_t>(s)][static_cast<size_t>(j)];
            if (coeff == Scalar(0))
                continue;
            for (size_t t = 0; t < acc.size(); ++t)
                acc[t] -= coeff * expr[static_cast<size_t>(j)][t];
        }
        const Scalar piv = a[static_cast<size_t>(s)][static_cast<size_t>(pc)];
        for (Scalar& v : acc)
            v /= piv;
        expr[static_cast<size_t>(pc)] = std::move(acc);
    }

    fam.base.resize(static_cast<size_t>(n));
    fam.columns.assign(static_cast<size_t>(nfree), std::vector<Scalar>(static_cast<size_t>(n), Scalar(0)));
    for (int j = 0; j < n; ++j) {
        fam.base[static_cast<size_t>(j)] = expr[static_cast<size_t>(j)][0];
        for (int t = 0; t < nfree; ++t)
            fam.columns[static_cast<size_t>(t)][static_cast<size_t>(j)] = expr[static_cast<size_t>(j)][static_cast<size_t>(t) + 1];
    }
    return fam;
}

std::vector<Scalar> family_point(const LinearFamily& fam, std::span<const Scalar> fvals) {
    std::vector<Scalar> u = fam.base;
    for (size_t t = 0; t < fam.columns.size(); ++t)
        for (size_t j = 0; j < u.size(); ++j)
            u[j] += fam.columns[t][j] * fvals[t];
    return u;
}

// Coefficients of the single-variable quadratic in f_i once every other
// free variable is pinned to 1.
void reduce_to_single_var(const QuadraticForm& q, int iq, Scalar& qa, Scalar& qb, Scalar& qc) {
    const int f = q.vars();
    qa = q.quad(iq, iq);
    qb = q.linear(iq);
    for (int j = 0; j < f; ++j)
        if (j != iq)
            qb += q.quad(std::min(iq, j), std::max(iq, j));
    std::vector<Scalar> pin(static_cast<size_t>(f), Scalar(1));
    pin[static_cast<size_t>(iq)] = Scalar(0);
    qc = q.eval(pin);
}

} // namespace

SolutionSet evaluate_cycle(const std::vector<QuadraticForm>& conditions,
                           const std::vector<PredicateFn>& predicates,
                           int dim) {
    const int n = unknown_count(dim);
    std::vector<const QuadraticForm*> linear;
    std::vector<const QuadraticForm*> nonlinear;
    for (const QuadraticForm& q : conditions) {
        if (q.vars() != n)
            throw std::invalid_argument("solver: condition over wrong unknown count");
        (q.is_linear() ? linear : nonlinear).push_back(&q);
    }

    SolutionSet out;
    const LinearFamily fam = solve_linear_block(linear, n);
    if (fam.inconsistent)
        return out;
    const int nfree = static_cast<int>(fam.free_vars.size());

    std::vector<std::vector<Scalar>> candidates;
    bool linear_only = nonlinear.empty();

    if (linear_only) {
        if (nfree == 0) {
            candidates.push_back(fam.base);
        } else {
            bool homogeneous = true;
            for (const Scalar& v : fam.base)
                if (!is_less_than_epsilon(v))
                    homogeneous = false;
            if (homogeneous && nfree == 1) {
                candidates.push_back(fam.columns[0]);
            } else {
                out.underdetermined = true;
                out.free_count = nfree;
                if (homogeneous) {
                    const std::vector<Scalar> ones(static_cast<size_t>(nfree), Scalar(1));
                    candidates.push_back(family_point(fam, ones));
                } else {
                    candidates.push_back(fam.base);
                }
            }
        }
    } else {
        const QuadraticForm q1 = nonlinear[0]->compose_affine(fam.columns, fam.base);
        if (nfree == 0) {
            // nothing left to solve for; the first residual joins the checks
            candidates.push_back(fam.base);
        } else {
            int iq = -1;
            for (int i = 0; i < nfree; ++i)
                if (!is_less_than_epsilon(q1.quad(i, i))) {
                    iq = i;
                    break;
                }
            auto push_candidate = [&](int var, const Scalar& root) {
                std::vector<Scalar> fv(static_cast<size_t>(nfree), Scalar(1));
                fv[static_cast<size_t>(var)] = root;
                candidates.push_back(family_point(fam, fv));
            };
            if (iq >= 0) {
                if (nfree > 2) {
                    out.underdetermined = true;
                    out.free_count = nfree - 2;
                }
                Scalar qa, qb, qc;
                reduce_to_single_var(q1, iq, qa, qb, qc);
                const Scalar disc = qb * qb - 4.0 * qa * qc;
                if (is_less_than_epsilon(disc)) {
                    // small perturbations of a zero determinant would inject
                    // unwanted imaginary parts, treat it as exactly zero
                    push_candidate(iq, -qb / (2.0 * qa));
                } else if (!is_less_than_epsilon(qb) && is_less_than_epsilon(qa / qb)) {
                    // negligible quadratic coefficient: effectively linear
                    push_candidate(iq, -qc / qb);
                } else {
                    const Scalar sq = std::sqrt(disc);
                    push_candidate(iq, (-qb + sq) / (2.0 * qa));
                    push_candidate(iq, (-qb - sq) / (2.0 * qa));
                }
            } else if (nfree >= 2) {
                // not quadratic in a single variable (e.g. m*k + 1 = 0):
                // linearise by pinning one variable to 1 in turn
                if (nfree > 2) {
                    out.underdetermined = true;
                    out.free_count = nfree - 2;
                }
                for (int attempt = 0; attempt < 2; ++attempt) {
                    const int solve_for = attempt == 0 ? 1 : 0;
                    Scalar qa, qb, qc;
                    reduce_to_single_var(q1, solve_for, qa, qb, qc);
                    if (!is_less_than_epsilon(qb)) {
                        push_candidate(solve_for, -qc / qb);
                    } else if (is_less_than_epsilon(qc)) {
                        push_candidate(solve_for, Scalar(1));
                        out.underdetermined = true;
                        out.free_count = std::max(out.free_count, 1);
                    }
                }
            } else { // one free variable, residual must be affine in it
                const Scalar qa = q1.quad(0, 0);
                const Scalar qb = q1.linear(0);
                const Scalar qc = q1.constant();
                if (!is_less_than_epsilon(qa))
                    return out; // not affine after all
                if (!is_less_than_epsilon(qb)) {
                    push_candidate(0, -qc / qb);
                } else if (is_less_than_epsilon(qc)) {
                    push_candidate(0, Scalar(1));
                    out.underdetermined = true;
                    out.free_count = 1;
                } else {
                    return out;
                }
            }
        }
    }

    for (const std::vector<Scalar>& u : candidates) {
        Cycle cand = cycle_from_unknowns(u, dim);
        if (!cand.all_finite() || cand.is_zero())
            continue;
        // leftover nonlinear residuals are verified numerically, either on
        // the raw candidate or on its snapped normalisation
        bool ok = true;
        const size_t first_checked = linear_only ? 0 : 1;
        if (nonlinear.size() > first_checked) {
            const std::vector<Scalar> snapped = unknowns_from_cycle(num_normalize(cand));
            for (size_t t = first_checked; t < nonlinear.size() && ok; ++t)
                ok = is_less_than_epsilon(nonlinear[t]->eval(u)) ||
                     is_less_than_epsilon(nonlinear[t]->eval(snapped));
        }
        if (!ok)
            continue;
        Cycle result = linear_only ? num_normalize(normalize_projective(num_normalize(cand)))
                                   : num_normalize(cand);
        for (const PredicateFn& pred : predicates)
            if (!pred(result)) {
                ok = false;
                break;
            }
        if (ok)
            out.cycles.push_back(std::move(result));
    }
    out.cycles = unique_cycle(out.cycles);
    return out;
}

std::vector<Cycle> unique_cycle(const std::vector<Cycle>& solutions) {
    std::vector<Cycle> res;
    for (const Cycle& c : solutions) {
        bool fresh = true;
        for (const Cycle& seen : res)
            if (is_almost_equal(c, seen) || is_projectively_equal(c, seen)) {
                fresh = false;
                break;
            }
        if (fresh)
            res.push_back(c);
    }
    return res;
}

} // namespace cyc
