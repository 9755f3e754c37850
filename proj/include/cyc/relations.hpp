#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>

#include "cyc/fsc.hpp"
#include "cyc/solver.hpp"

namespace cyc {

enum class RelationKind {
    orthogonal,
    f_orthogonal,
    different,
    adifferent,
    tangent,
    tangent_i,
    tangent_o,
    angle,
    steiner_power,
    tangential_distance, // steiner_power with parameter distance^2
    cross_t_distance,
    product_sign,
    only_reals,
    moebius,
    sl2,
};

const char* relation_kind_name(RelationKind k);
std::optional<RelationKind> relation_kind_from_name(const std::string& name);

// Affine expression offset + scale * value(param); a plain constant when no
// parameter name is bound.
struct Expr {
    double offset = 0.0;
    double scale = 0.0;
    std::string param;

    Expr() = default;
    Expr(double constant) : offset(constant) {}

    bool is_constant() const { return param.empty(); }
    double eval(const std::map<std::string, double>& params) const;
};

// Declarative relation of an unknown cycle to a parent node.
struct RelationSpec {
    RelationKind kind = RelationKind::orthogonal;
    std::string parent;
    bool use_cycle_metric = true;
    Expr parameter{0.0};
    std::array<Expr, 4> matrix{Expr(1), Expr(0), Expr(0), Expr(1)};
};

RelationSpec is_orthogonal(const std::string& key, bool cm = true);
RelationSpec is_f_orthogonal(const std::string& key, bool cm = true);
RelationSpec is_different(const std::string& key, bool cm = true);
RelationSpec is_adifferent(const std::string& key, bool cm = true);
RelationSpec is_tangent(const std::string& key, bool cm = true);
RelationSpec is_tangent_i(const std::string& key, bool cm = true);
RelationSpec is_tangent_o(const std::string& key, bool cm = true);
RelationSpec make_angle(const std::string& key, bool cm, Expr cosine);
RelationSpec cycle_power(const std::string& key, bool cm, Expr power);
RelationSpec tangential_distance(const std::string& key, bool cm, Expr distance);
RelationSpec cross_t_distance(const std::string& key, bool cm, Expr distance);
RelationSpec product_nonpositive(const std::string& key, bool cm = true, double sign = 1.0);
RelationSpec is_real_cycle(const std::string& key);
RelationSpec only_reals(const std::string& key);
RelationSpec moebius_transform(const std::string& key, bool cm, std::array<Expr, 4> matrix);
RelationSpec sl2_transform(const std::string& key, bool cm, std::array<Expr, 4> matrix);

// One conjunction of items: equation residuals on the unknown, boolean
// predicates over a candidate, and directly produced cycles (transform
// relations). A relation's meaning is the disjunction over branches.
struct ConditionBranch {
    std::vector<QuadraticForm> equations;
    std::vector<PredicateFn> predicates;
    std::vector<Cycle> produced;
};

struct ConditionBranches {
    std::vector<ConditionBranch> branches;
};

// Parent values the relation is expanded against; is_self marks a relation
// of the unknown to itself (isotropy and the reality filters).
struct ParentValues {
    std::vector<Cycle> cycles;
    bool is_self = false;
};

ConditionBranches expand(const RelationSpec& spec, const ParentValues& parent,
                         const Metric& point_metric, const Metric& cycle_metric,
                         const std::map<std::string, double>& params);

// <C1,C2>^2 - <C1,C1><C2,C2>; zero exactly for tangent cycles.
Scalar check_tangent(const Cycle& c1, const Cycle& c2, const Metric& metric);

// Cycle product of the norm-normalised pair: the inversive distance.
Scalar angle_is(const Cycle& c1, const Cycle& c2, const Metric& metric);
// k-normalised product with the geometric-mean term, sign picked by p.
Scalar power_is(const Cycle& c1, const Cycle& c2, const Metric& metric, double p);
Scalar sq_t_distance_is(const Cycle& c1, const Cycle& c2, const Metric& metric);
Scalar sq_cross_t_distance_is(const Cycle& c1, const Cycle& c2, const Metric& metric);

// Boolean forms of the relation checks (arguments are num-normalised first,
// so the outcome is projective).
bool orthogonal_holds(const Cycle& c1, const Cycle& c2, const Metric& metric);
bool tangent_holds(const Cycle& c1, const Cycle& c2, const Metric& metric);
bool product_sign_holds(const Cycle& c, const Metric& metric, double sign);
bool only_reals_holds(const Cycle& c);

} // namespace cyc
