#include "cyc/relations.hpp"

#include <cmath>
#include <stdexcept>

namespace cyc {

namespace {

const std::pair<RelationKind, const char*> kKindNames[] = {
    {RelationKind::orthogonal, "orthogonal"},
    {RelationKind::f_orthogonal, "f_orthogonal"},
    {RelationKind::different, "different"},
    {RelationKind::adifferent, "adifferent"},
    {RelationKind::tangent, "tangent"},
    {RelationKind::tangent_i, "tangent_i"},
    {RelationKind::tangent_o, "tangent_o"},
    {RelationKind::angle, "angle"},
    {RelationKind::steiner_power, "steiner_power"},
    {RelationKind::tangential_distance, "tangential_distance"},
    {RelationKind::cross_t_distance, "cross_t_distance"},
    {RelationKind::product_sign, "product_sign"},
    {RelationKind::only_reals, "only_reals"},
    {RelationKind::moebius, "moebius"},
    {RelationKind::sl2, "sl2"},
};

} // namespace

const char* relation_kind_name(RelationKind k) {
    for (const auto& [kind, name] : kKindNames)
        if (kind == k)
            return name;
    return "unknown";
}

std::optional<RelationKind> relation_kind_from_name(const std::string& name) {
    for (const auto& [kind, kname] : kKindNames)
        if (name == kname)
            return kind;
    return std::nullopt;
}

double Expr::eval(const std::map<std::string, double>& params) const {
    if (is_constant())
        return offset;
    auto it = params.find(param);
    if (it == params.end())
        throw std::invalid_argument("unknown parameter '" + param + "'");
    return offset + scale * it->second;
}

namespace {

RelationSpec make(RelationKind kind, const std::string& key, bool cm) {
    RelationSpec r;
    r.kind = kind;
    r.parent = key;
    r.use_cycle_metric = cm;
    return r;
}

} // namespace

RelationSpec is_orthogonal(const std::string& key, bool cm) { return make(RelationKind::orthogonal, key, cm); }
RelationSpec is_f_orthogonal(const std::string& key, bool cm) { return make(RelationKind::f_orthogonal, key, cm); }
RelationSpec is_different(const std::string& key, bool cm) { return make(RelationKind::different, key, cm); }
RelationSpec is_adifferent(const std::string& key, bool cm) { return make(RelationKind::adifferent, key, cm); }
RelationSpec is_tangent(const std::string& key, bool cm) { return make(RelationKind::tangent, key, cm); }
RelationSpec is_tangent_i(const std::string& key, bool cm) { return make(RelationKind::tangent_i, key, cm); }
RelationSpec is_tangent_o(const std::string& key, bool cm) { return make(RelationKind::tangent_o, key, cm); }

RelationSpec make_angle(const std::string& key, bool cm, Expr cosine) {
    RelationSpec r = make(RelationKind::angle, key, cm);
    r.parameter = cosine;
    return r;
}

RelationSpec cycle_power(const std::string& key, bool cm, Expr power) {
    RelationSpec r = make(RelationKind::steiner_power, key, cm);
    r.parameter = power;
    return r;
}

RelationSpec tangential_distance(const std::string& key, bool cm, Expr distance) {
    RelationSpec r = make(RelationKind::tangential_distance, key, cm);
    r.parameter = distance;
    return r;
}

RelationSpec cross_t_distance(const std::string& key, bool cm, Expr distance) {
    RelationSpec r = make(RelationKind::cross_t_distance, key, cm);
    r.parameter = distance;
    return r;
}

RelationSpec product_nonpositive(const std::string& key, bool cm, double sign) {
    RelationSpec r = make(RelationKind::product_sign, key, cm);
    r.parameter = Expr(sign);
    return r;
}

RelationSpec is_real_cycle(const std::string& key) {
    // reality of the radius is judged in the point space metric
    return product_nonpositive(key, false, 1.0);
}

RelationSpec only_reals(const std::string& key) { return make(RelationKind::only_reals, key, true); }

RelationSpec moebius_transform(const std::string& key, bool cm, std::array<Expr, 4> matrix) {
    RelationSpec r = make(RelationKind::moebius, key, cm);
    r.matrix = matrix;
    return r;
}

RelationSpec sl2_transform(const std::string& key, bool cm, std::array<Expr, 4> matrix) {
    RelationSpec r = make(RelationKind::sl2, key, cm);
    r.matrix = matrix;
    return r;
}

namespace {

QuadraticForm product_with(const Cycle& parent, const Metric& metric, const Scalar& shift,
                           double k_coeff) {
    // <U,P> + shift + k_coeff * k_U as a form over the unknown slots
    return QuadraticForm::from_cycle_residual(parent.dim(), [&](const Cycle& u) {
        return cycle_product(u, parent, metric) + shift + k_coeff * u.k;
    });
}

QuadraticForm self_product_plus(int dim, const Metric& metric, double shift) {
    return QuadraticForm::from_cycle_residual(dim, [&](const Cycle& u) {
        return cycle_product(u, u, metric) + shift;
    });
}

bool product_sign_check(const Cycle& u, const Metric& metric, double sign) {
    const Scalar self = cycle_product(u, u, metric);
    if (std::fabs(self.imag()) >= epsilon())
        return false;
    return sign * (self.real() - epsilon()) < 0.0;
}

FscMatrix matrix_from_exprs(const std::array<Expr, 4>& entries, const Metric& metric,
                            const std::map<std::string, double>& params) {
    return {CliffordElement::scalar(metric, entries[0].eval(params)),
            CliffordElement::scalar(metric, entries[1].eval(params)),
            CliffordElement::scalar(metric, entries[2].eval(params)),
            CliffordElement::scalar(metric, entries[3].eval(params))};
}

} // namespace

ConditionBranches expand(const RelationSpec& spec, const ParentValues& parent,
                         const Metric& point_metric, const Metric& cycle_metric,
                         const std::map<std::string, double>& params) {
    const Metric& metric = spec.use_cycle_metric ? cycle_metric : point_metric;
    const int dim = point_metric.dim();
    ConditionBranches out;

    if (parent.is_self) {
        switch (spec.kind) {
        case RelationKind::orthogonal: {
            ConditionBranch b;
            b.equations.push_back(self_product_plus(dim, metric, 0.0));
            out.branches.push_back(std::move(b));
            return out;
        }
        case RelationKind::product_sign: {
            const double sign = spec.parameter.eval(params);
            ConditionBranch b;
            b.predicates.push_back([metric, sign](const Cycle& u) {
                return product_sign_check(u, metric, sign);
            });
            out.branches.push_back(std::move(b));
            return out;
        }
        case RelationKind::only_reals: {
            ConditionBranch b;
            b.predicates.push_back([](const Cycle& u) { return coefficients_are_real(u); });
            out.branches.push_back(std::move(b));
            return out;
        }
        default:
            throw std::invalid_argument(std::string("relation '") + relation_kind_name(spec.kind) +
                                        "' cannot refer to the node itself");
        }
    }

    if (parent.cycles.empty())
        throw std::invalid_argument("relation expansion requires a solved parent");

    switch (spec.kind) {
    case RelationKind::orthogonal:
        for (const Cycle& p : parent.cycles) {
            ConditionBranch b;
            b.equations.push_back(product_with(p, metric, Scalar(0), 0.0));
            out.branches.push_back(std::move(b));
        }
        break;
    case RelationKind::f_orthogonal:
        for (const Cycle& p : parent.cycles) {
            const FscMatrix pm = fsc_from_cycle(p, metric);
            const Cycle rl = real_line_cycle(dim);
            ConditionBranch b;
            b.equations.push_back(QuadraticForm::from_cycle_residual(dim, [&](const Cycle& u) {
                const FscMatrix sandwich = fsc_mul(fsc_mul(pm, fsc_from_cycle(u, metric)), pm);
                return cycle_product(cycle_from_fsc_relaxed(sandwich), rl, metric);
            }));
            out.branches.push_back(std::move(b));
        }
        break;
    case RelationKind::tangent:
    case RelationKind::tangent_i:
    case RelationKind::tangent_o:
        for (const Cycle& p : parent.cycles) {
            const double root = std::sqrt(std::abs(cycle_product(p, p, metric)));
            // internal and outer touch differ by the sign in front of the root
            std::vector<double> root_signs;
            if (spec.kind == RelationKind::tangent)
                root_signs = {-1.0, -1.0, 1.0, 1.0};
            else if (spec.kind == RelationKind::tangent_o)
                root_signs = {-1.0, -1.0};
            else
                root_signs = {1.0, 1.0};
            for (size_t i = 0; i < root_signs.size(); ++i) {
                ConditionBranch b;
                b.equations.push_back(self_product_plus(dim, metric, (i % 2 == 0) ? 1.0 : -1.0));
                b.equations.push_back(product_with(p, metric, Scalar(root_signs[i] * root), 0.0));
                out.branches.push_back(std::move(b));
            }
        }
        break;
    case RelationKind::angle: {
        const double cosine = spec.parameter.eval(params);
        for (const Cycle& p : parent.cycles) {
            const Cycle pn = normalize_det(p, metric);
            for (double s : {1.0, -1.0}) {
                ConditionBranch b;
                b.equations.push_back(product_with(pn, metric, Scalar(cosine), 0.0));
                b.equations.push_back(self_product_plus(dim, metric, s));
                out.branches.push_back(std::move(b));
            }
        }
        break;
    }
    case RelationKind::steiner_power:
    case RelationKind::tangential_distance:
    case RelationKind::cross_t_distance: {
        double power = spec.parameter.eval(params);
        if (spec.kind != RelationKind::steiner_power)
            power *= power; // distance enters through its square
        const double root_sign = spec.kind == RelationKind::cross_t_distance ? 1.0 : -1.0;
        for (const Cycle& p : parent.cycles) {
            const Cycle pk = normalize_k(p);
            const double root = std::sqrt(std::abs(cycle_product(pk, pk, metric)));
            for (double s : {1.0, -1.0}) {
                ConditionBranch b;
                b.equations.push_back(product_with(pk, metric, Scalar(root_sign * root), -power));
                b.equations.push_back(self_product_plus(dim, metric, s));
                out.branches.push_back(std::move(b));
            }
        }
        break;
    }
    case RelationKind::different:
    case RelationKind::adifferent: {
        const bool almost = spec.kind == RelationKind::adifferent;
        std::vector<Cycle> values = parent.cycles;
        ConditionBranch b;
        b.predicates.push_back([values, almost](const Cycle& u) {
            for (const Cycle& v : values)
                if (almost ? (is_almost_equal(u, v) || is_projectively_equal(u, v))
                           : is_projectively_equal(u, v))
                    return false;
            return true;
        });
        out.branches.push_back(std::move(b));
        break;
    }
    case RelationKind::product_sign: {
        const double sign = spec.parameter.eval(params);
        ConditionBranch b;
        b.predicates.push_back([metric, sign](const Cycle& u) {
            return product_sign_check(u, metric, sign);
        });
        out.branches.push_back(std::move(b));
        break;
    }
    case RelationKind::only_reals: {
        ConditionBranch b;
        b.predicates.push_back([](const Cycle& u) { return coefficients_are_real(u); });
        out.branches.push_back(std::move(b));
        break;
    }
    case RelationKind::moebius: {
        const FscMatrix m = matrix_from_exprs(spec.matrix, metric, params);
        for (const Cycle& p : parent.cycles) {
            ConditionBranch b;
            b.produced.push_back(fsc_similarity(m, p, metric));
            out.branches.push_back(std::move(b));
        }
        break;
    }
    case RelationKind::sl2: {
        if (dim != 2)
            throw std::invalid_argument("sl2 relation applies only in two dimensions");
        const FscMatrix m = sl2_lift(spec.matrix[0].eval(params), spec.matrix[1].eval(params),
                                     spec.matrix[2].eval(params), spec.matrix[3].eval(params), metric);
        for (const Cycle& p : parent.cycles) {
            ConditionBranch b;
            b.produced.push_back(fsc_similarity(m, p, metric));
            out.branches.push_back(std::move(b));
        }
        break;
    }
    }
    return out;
}

Scalar check_tangent(const Cycle& c1, const Cycle& c2, const Metric& metric) {
    const Scalar cross = cycle_product(c1, c2, metric);
    return cross * cross - cycle_product(c1, c1, metric) * cycle_product(c2, c2, metric);
}

Scalar angle_is(const Cycle& c1, const Cycle& c2, const Metric& metric) {
    return cycle_product(normalize_det(c1, metric), normalize_det(c2, metric), metric);
}

Scalar power_is(const Cycle& c1, const Cycle& c2, const Metric& metric, double p) {
    const Cycle a = normalize_k(c1);
    const Cycle b = normalize_k(c2);
    const Scalar cross = cycle_product(a, b, metric);
    const double mean = std::sqrt(std::abs(cycle_product(a, a, metric) * cycle_product(b, b, metric)));
    return cross + p * mean;
}

Scalar sq_t_distance_is(const Cycle& c1, const Cycle& c2, const Metric& metric) {
    return power_is(c1, c2, metric, 1.0);
}

Scalar sq_cross_t_distance_is(const Cycle& c1, const Cycle& c2, const Metric& metric) {
    return power_is(c1, c2, metric, -1.0);
}

bool orthogonal_holds(const Cycle& c1, const Cycle& c2, const Metric& metric) {
    return is_less_than_epsilon(cycle_product(num_normalize(c1), num_normalize(c2), metric));
}

bool tangent_holds(const Cycle& c1, const Cycle& c2, const Metric& metric) {
    return is_less_than_epsilon(check_tangent(num_normalize(c1), num_normalize(c2), metric));
}

bool product_sign_holds(const Cycle& c, const Metric& metric, double sign) {
    return product_sign_check(num_normalize(c), metric, sign);
}

bool only_reals_holds(const Cycle& c) { return coefficients_are_real(c); }

} // namespace cyc
