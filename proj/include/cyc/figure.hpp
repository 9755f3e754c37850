#pragma once

#include <span>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>

#include "cyc/relations.hpp"

namespace cyc {

inline constexpr int kRealLineGen = -1;
inline constexpr int kInfinityGen = -2;
inline constexpr int kGhostGen = -3;

inline constexpr const char* kRealLineKey = "R";
inline constexpr const char* kInfinityKey = "infty";

class Figure;

// A reusable inner figure with placeholder nodes "variable000", ... and one
// node named "result"; spliced into a host figure as a single macro node.
struct SubfigureCall {
    std::shared_ptr<const Figure> templ;
    std::string name; // template name for persistence ("midpoint")
    std::vector<std::string> inputs;
};

struct CycleNode {
    std::vector<Cycle> values;
    int generation = 0;
    std::vector<RelationSpec> relations;
    std::optional<SubfigureCall> subfigure;
    std::optional<std::vector<Expr>> point; // coordinates when built as a point
    std::set<std::string> children;
    std::string style;
    std::string label;
    std::uint64_t seq = 0;
    bool underdetermined = false;
    int free_count = 0;

    bool has_parents() const { return !relations.empty() || subfigure.has_value(); }
};

enum class CheckKind {
    orthogonal,
    f_orthogonal,
    tangent,
    different,
    adifferent,
    product_sign,
    only_reals,
};

enum class MeasureKind {
    angle,
    power,
    sq_t_distance,
    sq_cross_t_distance,
};

const char* check_kind_name(CheckKind k);
std::optional<CheckKind> check_kind_from_name(const std::string& name);
const char* measure_kind_name(MeasureKind k);
std::optional<MeasureKind> measure_kind_from_name(const std::string& name);

// Keyed DAG of cycle nodes with generations. The real line and the cycle at
// infinity are created up front at negative generations; points enter through
// hidden ghost parents so that their cycle data follows the metric.
class Figure {
public:
    explicit Figure(Metric point_metric);
    Figure(Metric point_metric, Metric cycle_metric);

    const Metric& point_metric() const { return point_metric_; }
    const Metric& cycle_metric() const { return cycle_metric_; }
    int dim() const { return point_metric_.dim(); }

    std::string add_point(std::span<const double> x, const std::string& key);
    std::string add_point(std::span<const Expr> x, const std::string& key);
    std::string add_cycle(const Cycle& c, const std::string& key);
    std::string add_cycle_rel(std::vector<RelationSpec> rels, const std::string& key);
    std::string add_subfigure(std::shared_ptr<const Figure> sub, const std::string& name,
                              std::vector<std::string> inputs, const std::string& key);

    void move_point(const std::string& key, std::span<const double> x);
    void move_cycle(const std::string& key, const Cycle& c);
    void remove_cycle_node(const std::string& key);
    void set_metric(const Metric& point_metric);
    void set_metric(const Metric& point_metric, const Metric& cycle_metric);

    void freeze() { frozen_ = true; }
    void unfreeze();
    bool frozen() const { return frozen_; }

    void set_parameter(const std::string& name, double value);
    double parameter(const std::string& name) const;
    const std::map<std::string, double>& parameters() const { return params_; }

    void set_style(const std::string& key, const std::string& style);
    void set_label(const std::string& key, const std::string& label);

    bool has_node(const std::string& key) const { return nodes_.count(key) != 0; }
    const CycleNode& node(const std::string& key) const;
    const std::map<std::string, CycleNode>& nodes() const { return nodes_; }
    const std::vector<Cycle>& get_cycles(const std::string& key) const;
    std::vector<std::string> get_all_keys(int mingen = kGhostGen + 1,
                                          std::optional<int> maxgen = std::nullopt) const;
    std::string get_cycle_label(const std::string& name) const; // "" when absent
    std::string real_line_key() const { return kRealLineKey; }
    std::string infinity_key() const { return kInfinityKey; }

    // Applies fn to every stored cycle outside the ghost generation and
    // collects (result, key, index) triples.
    std::vector<std::tuple<Scalar, std::string, int>>
    apply(const std::function<Scalar(const Cycle&, const Metric&)>& fn,
          bool use_cycle_metric = true) const;

    // Cross-product of the stored values of both nodes; residuals are
    // returned raw, the caller compares against a tolerance.
    std::vector<Scalar> check_rel(const std::string& key1, const std::string& key2,
                                  CheckKind kind, bool use_cycle_metric = true,
                                  double parameter = 0.0) const;
    std::vector<Scalar> measure(const std::string& key1, const std::string& key2,
                                MeasureKind kind, bool use_cycle_metric = true,
                                double parameter = 0.0) const;

    void save(const std::string& path) const;
    static Figure load(const std::string& path);

    // Re-solves every node with parents in ascending generation order.
    void resolve_all();

private:
    friend struct FigureIo;

    Figure() = default;
    void init_predefined();
    void ensure_fresh_key(const std::string& key) const;
    void require_node(const std::string& key) const;
    std::string ghost_key(const std::string& key, int i) const;
    void make_ghosts(const std::string& key, std::span<const Expr> coords);
    void refresh_ghosts();
    void link_parents(const std::string& key);
    void resolve_node(const std::string& key);
    std::vector<Cycle> eval_subfigure(const SubfigureCall& call) const;
    void solve_branches(const std::string& key, size_t level,
                        std::vector<QuadraticForm>& eqs, std::vector<PredicateFn>& preds,
                        std::vector<Cycle>& produced, std::vector<Cycle>& out,
                        bool& underdetermined, int& free_count);
    void propagate_from(const std::vector<std::string>& roots);
    std::vector<std::string> order_by_generation(const std::set<std::string>& keys) const;

    std::map<std::string, CycleNode> nodes_;
    Metric point_metric_;
    Metric cycle_metric_;
    std::map<std::string, double> params_;
    bool frozen_ = false;
    std::uint64_t next_seq_ = 0;
};

// The five-node midpoint template: the cycle through both endpoints and the
// reference point, the cycle using the endpoints as a diameter, their common
// orthogonal through the reference, and the self-orthogonal intersection.
std::shared_ptr<const Figure> midpoint_constructor();

std::shared_ptr<const Figure> subfigure_by_name(const std::string& name);

} // namespace cyc
