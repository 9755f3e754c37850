#include "cyc/figure.hpp"

#include <algorithm>
#include <stdexcept>

#include "cyc/document.hpp"

namespace cyc {

namespace {

const std::pair<CheckKind, const char*> kCheckNames[] = {
    {CheckKind::orthogonal, "orthogonal"},
    {CheckKind::f_orthogonal, "f_orthogonal"},
    {CheckKind::tangent, "tangent"},
    {CheckKind::different, "different"},
    {CheckKind::adifferent, "adifferent"},
    {CheckKind::product_sign, "product_sign"},
    {CheckKind::only_reals, "only_reals"},
};

const std::pair<MeasureKind, const char*> kMeasureNames[] = {
    {MeasureKind::angle, "angle"},
    {MeasureKind::power, "power"},
    {MeasureKind::sq_t_distance, "sq_t_distance"},
    {MeasureKind::sq_cross_t_distance, "sq_cross_t_distance"},
};

} // namespace

const char* check_kind_name(CheckKind k) {
    for (const auto& [kind, name] : kCheckNames)
        if (kind == k)
            return name;
    return "unknown";
}

std::optional<CheckKind> check_kind_from_name(const std::string& name) {
    for (const auto& [kind, kname] : kCheckNames)
        if (name == kname)
            return kind;
    return std::nullopt;
}

const char* measure_kind_name(MeasureKind k) {
    for (const auto& [kind, name] : kMeasureNames)
        if (kind == k)
            return name;
    return "unknown";
}

std::optional<MeasureKind> measure_kind_from_name(const std::string& name) {
    for (const auto& [kind, kname] : kMeasureNames)
        if (name == kname)
            return kind;
    return std::nullopt;
}

Figure::Figure(Metric point_metric)
    : point_metric_(point_metric), cycle_metric_(derive_cycle_metric(point_metric)) {
    init_predefined();
}

Figure::Figure(Metric point_metric, Metric cycle_metric)
    : point_metric_(std::move(point_metric)), cycle_metric_(std::move(cycle_metric)) {
    if (point_metric_.dim() != cycle_metric_.dim())
        throw std::invalid_argument("figure: point and cycle metrics shall have the same dimensions");
    init_predefined();
}

void Figure::init_predefined() {
    CycleNode inf;
    inf.values = {infinity_cycle(dim())};
    inf.generation = kInfinityGen;
    inf.label = kInfinityKey;
    inf.seq = next_seq_++;
    nodes_[kInfinityKey] = std::move(inf);

    CycleNode rl;
    rl.values = {real_line_cycle(dim())};
    rl.generation = kRealLineGen;
    rl.label = kRealLineKey;
    rl.seq = next_seq_++;
    nodes_[kRealLineKey] = std::move(rl);
}

void Figure::ensure_fresh_key(const std::string& key) const {
    if (key.empty())
        throw std::invalid_argument("figure: empty node key");
    if (nodes_.count(key))
        throw std::invalid_argument("figure: key '" + key + "' already exists");
}

void Figure::require_node(const std::string& key) const {
    if (!nodes_.count(key))
        throw std::invalid_argument("figure: unknown node '" + key + "'");
}

const CycleNode& Figure::node(const std::string& key) const {
    require_node(key);
    return nodes_.at(key);
}

const std::vector<Cycle>& Figure::get_cycles(const std::string& key) const {
    return node(key).values;
}

std::string Figure::ghost_key(const std::string& key, int i) const {
    return key + ":g" + std::to_string(i);
}

void Figure::make_ghosts(const std::string& key, std::span<const Expr> coords) {
    for (int i = 0; i < dim(); ++i)
        if (nodes_.count(ghost_key(key, i)))
            throw std::invalid_argument("figure: key '" + ghost_key(key, i) +
                                        "' collides with a point's hidden parent");
    for (int i = 0; i < dim(); ++i) {
        Cycle mother;
        mother.k = Scalar(0);
        mother.l.assign(static_cast<size_t>(dim()), Scalar(0));
        mother.l[static_cast<size_t>(i)] = Scalar(1);
        mother.m = Scalar(2.0 * coords[static_cast<size_t>(i)].eval(params_));
        CycleNode ghost;
        ghost.values = {mother};
        ghost.generation = kGhostGen;
        ghost.children.insert(key);
        ghost.label = ghost_key(key, i);
        ghost.seq = next_seq_++;
        nodes_[ghost_key(key, i)] = std::move(ghost);
    }
}

void Figure::refresh_ghosts() {
    for (auto& [key, nd] : nodes_) {
        if (!nd.point)
            continue;
        for (int i = 0; i < dim(); ++i) {
            auto it = nodes_.find(ghost_key(key, i));
            if (it != nodes_.end() && !it->second.values.empty())
                it->second.values[0].m = Scalar(2.0 * (*nd.point)[static_cast<size_t>(i)].eval(params_));
        }
    }
}

std::string Figure::add_point(std::span<const double> x, const std::string& key) {
    std::vector<Expr> coords(x.begin(), x.end());
    return add_point(std::span<const Expr>(coords), key);
}

std::string Figure::add_point(std::span<const Expr> x, const std::string& key) {
    if (static_cast<int>(x.size()) != dim())
        throw std::invalid_argument("figure: point coordinates shall be a list of the right length");
    ensure_fresh_key(key);
    make_ghosts(key, x);
    CycleNode nd;
    nd.generation = 0;
    nd.point = std::vector<Expr>(x.begin(), x.end());
    nd.label = key;
    nd.seq = next_seq_++;
    // the cycle data of a point depends on the metric, so it is pinned by
    // relations: self-orthogonality in the point space plus one ghost mother
    // per coordinate in the cycle space
    nd.relations.push_back(is_orthogonal(key, false));
    nd.relations.push_back(is_adifferent(kInfinityKey));
    for (int i = 0; i < dim(); ++i)
        nd.relations.push_back(is_orthogonal(ghost_key(key, i)));
    nodes_[key] = std::move(nd);
    link_parents(key);
    if (!frozen_)
        resolve_node(key);
    return key;
}

std::string Figure::add_cycle(const Cycle& c, const std::string& key) {
    ensure_fresh_key(key);
    if (c.dim() != dim())
        throw std::invalid_argument("figure: cycle dimension mismatch");
    CycleNode nd;
    if (!c.is_zero())
        nd.values = {c};
    nd.generation = 0;
    nd.label = key;
    nd.seq = next_seq_++;
    nodes_[key] = std::move(nd);
    return key;
}

std::string Figure::add_cycle_rel(std::vector<RelationSpec> rels, const std::string& key) {
    ensure_fresh_key(key);
    int gen = 0;
    for (const RelationSpec& r : rels) {
        if (r.parent == key)
            continue; // a self-relation contributes no generation
        require_node(r.parent);
        gen = std::max(gen, nodes_[r.parent].generation);
    }
    CycleNode nd;
    nd.generation = gen + 1 > 0 ? gen + 1 : 0;
    nd.relations = std::move(rels);
    nd.label = key;
    nd.seq = next_seq_++;
    nodes_[key] = std::move(nd);
    link_parents(key);
    if (!frozen_)
        resolve_node(key);
    return key;
}

std::string Figure::add_subfigure(std::shared_ptr<const Figure> sub, const std::string& name,
                                  std::vector<std::string> inputs, const std::string& key) {
    ensure_fresh_key(key);
    int placeholders = 0;
    for (const auto& [k, nd] : sub->nodes_)
        if (k.rfind("variable", 0) == 0)
            ++placeholders;
    if (placeholders != static_cast<int>(inputs.size()))
        throw std::invalid_argument("figure: subfigure expects " + std::to_string(placeholders) +
                                    " inputs");
    if (!sub->nodes_.count("result"))
        throw std::invalid_argument("figure: subfigure has no 'result' node");
    int gen = 0;
    for (const std::string& in : inputs) {
        require_node(in);
        gen = std::max(gen, nodes_[in].generation);
    }
    CycleNode nd;
    nd.generation = gen + 1 > 0 ? gen + 1 : 0;
    nd.subfigure = SubfigureCall{std::move(sub), name, std::move(inputs)};
    nd.label = key;
    nd.seq = next_seq_++;
    nodes_[key] = std::move(nd);
    link_parents(key);
    if (!frozen_) {
        resolve_node(key);
        if (nodes_[key].values.empty())
            throw std::runtime_error("figure: subfigure '" + key + "' evaluated to nothing");
    }
    return key;
}

void Figure::link_parents(const std::string& key) {
    const CycleNode& nd = nodes_[key];
    if (nd.subfigure) {
        for (const std::string& in : nd.subfigure->inputs)
            nodes_[in].children.insert(key);
        return;
    }
    for (const RelationSpec& r : nd.relations)
        if (r.parent != key)
            nodes_[r.parent].children.insert(key);
}

void Figure::move_point(const std::string& key, std::span<const double> x) {
    require_node(key);
    CycleNode& nd = nodes_[key];
    if (nd.generation != 0)
        throw std::invalid_argument("figure: cannot modify data of a cycle in non-zero generation");
    if (static_cast<int>(x.size()) != dim())
        throw std::invalid_argument("figure: point coordinates shall be a list of the right length");
    std::vector<Expr> coords(x.begin(), x.end());
    if (nd.point) {
        nd.point = coords;
        for (int i = 0; i < dim(); ++i)
            nodes_[ghost_key(key, i)].values[0].m = Scalar(2.0 * x[static_cast<size_t>(i)]);
    } else {
        // a plain data cycle turns into a point: it gains ghost mothers and
        // the point relations; children and style survive
        if (!nd.relations.empty() || nd.subfigure)
            throw std::invalid_argument("figure: cannot move a relation-defined node as a point");
        make_ghosts(key, coords);
        nd.point = coords;
        nd.relations.push_back(is_orthogonal(key, false));
        nd.relations.push_back(is_adifferent(kInfinityKey));
        for (int i = 0; i < dim(); ++i)
            nd.relations.push_back(is_orthogonal(ghost_key(key, i)));
        link_parents(key);
    }
    if (frozen_)
        return;
    resolve_node(key);
    propagate_from({key});
}

void Figure::move_cycle(const std::string& key, const Cycle& c) {
    require_node(key);
    if (key == kRealLineKey || key == kInfinityKey)
        throw std::invalid_argument("figure: predefined nodes cannot be modified");
    CycleNode& nd = nodes_[key];
    if (nd.generation != 0)
        throw std::invalid_argument("figure: cannot modify data of a cycle in non-zero generation");
    if (c.dim() != dim())
        throw std::invalid_argument("figure: cycle dimension mismatch");
    if (nd.point) {
        // ghost parents belonged to the point, drop them
        for (int i = 0; i < dim(); ++i)
            nodes_.erase(ghost_key(key, i));
        nd.point.reset();
    }
    for (const RelationSpec& r : nd.relations)
        if (r.parent != key && nodes_.count(r.parent))
            nodes_[r.parent].children.erase(key);
    nd.relations.clear();
    nd.values = {c};
    if (!frozen_)
        propagate_from(std::vector<std::string>(nd.children.begin(), nd.children.end()));
}

void Figure::remove_cycle_node(const std::string& key) {
    require_node(key);
    if (key == kRealLineKey || key == kInfinityKey)
        throw std::invalid_argument("figure: predefined nodes cannot be removed");
    std::set<std::string> doomed;
    std::vector<std::string> queue = {key};
    while (!queue.empty()) {
        const std::string k = queue.back();
        queue.pop_back();
        if (!nodes_.count(k) || doomed.count(k))
            continue;
        doomed.insert(k);
        if (nodes_[k].point)
            for (int i = 0; i < dim(); ++i)
                doomed.insert(ghost_key(k, i));
        for (const std::string& ch : nodes_[k].children)
            queue.push_back(ch);
    }
    for (const std::string& k : doomed)
        nodes_.erase(k);
    for (auto& [k, nd] : nodes_)
        for (const std::string& gone : doomed)
            nd.children.erase(gone);
}

void Figure::set_metric(const Metric& point_metric) {
    set_metric(point_metric, derive_cycle_metric(point_metric));
}

void Figure::set_metric(const Metric& point_metric, const Metric& cycle_metric) {
    if (point_metric.dim() != dim() || cycle_metric.dim() != dim())
        throw std::invalid_argument("figure: new metric has a different dimensionality");
    point_metric_ = point_metric;
    cycle_metric_ = cycle_metric;
    resolve_all();
}

void Figure::unfreeze() {
    frozen_ = false;
    resolve_all();
}

void Figure::set_parameter(const std::string& name, double value) {
    params_[name] = value;
    refresh_ghosts();
    resolve_all();
}

double Figure::parameter(const std::string& name) const {
    auto it = params_.find(name);
    if (it == params_.end())
        throw std::invalid_argument("figure: unknown parameter '" + name + "'");
    return it->second;
}

void Figure::set_style(const std::string& key, const std::string& style) {
    require_node(key);
    nodes_[key].style = style;
}

void Figure::set_label(const std::string& key, const std::string& label) {
    require_node(key);
    nodes_[key].label = label;
}

std::vector<std::string> Figure::get_all_keys(int mingen, std::optional<int> maxgen) const {
    std::vector<std::string> keys;
    for (const auto& [k, nd] : nodes_)
        if (nd.generation >= mingen && (!maxgen || nd.generation <= *maxgen))
            keys.push_back(k);
    std::sort(keys.begin(), keys.end(), [&](const std::string& a, const std::string& b) {
        const CycleNode& na = nodes_.at(a);
        const CycleNode& nb = nodes_.at(b);
        return na.generation != nb.generation ? na.generation < nb.generation : na.seq < nb.seq;
    });
    return keys;
}

std::string Figure::get_cycle_label(const std::string& name) const {
    if (nodes_.count(name))
        return name;
    for (const auto& [k, nd] : nodes_)
        if (nd.label == name)
            return k;
    return "";
}

std::vector<std::tuple<Scalar, std::string, int>>
Figure::apply(const std::function<Scalar(const Cycle&, const Metric&)>& fn,
              bool use_cycle_metric) const {
    const Metric& metric = use_cycle_metric ? cycle_metric_ : point_metric_;
    std::vector<std::tuple<Scalar, std::string, int>> out;
    for (const std::string& key : get_all_keys()) {
        const CycleNode& nd = nodes_.at(key);
        for (size_t i = 0; i < nd.values.size(); ++i)
            out.emplace_back(fn(nd.values[i], metric), key, static_cast<int>(i));
    }
    return out;
}

std::vector<Scalar> Figure::check_rel(const std::string& key1, const std::string& key2,
                                      CheckKind kind, bool use_cycle_metric,
                                      double parameter) const {
    require_node(key1);
    require_node(key2);
    const Metric& metric = use_cycle_metric ? cycle_metric_ : point_metric_;
    std::vector<Scalar> out;
    for (const Cycle& c1 : nodes_.at(key1).values)
        for (const Cycle& c2 : nodes_.at(key2).values) {
            switch (kind) {
            case CheckKind::orthogonal:
                out.push_back(cycle_product(c1, c2, metric));
                break;
            case CheckKind::f_orthogonal: {
                const FscMatrix pm = fsc_from_cycle(c2, metric);
                const FscMatrix sandwich = fsc_mul(fsc_mul(pm, fsc_from_cycle(c1, metric)), pm);
                out.push_back(cycle_product(cycle_from_fsc_relaxed(sandwich),
                                            real_line_cycle(dim()), metric));
                break;
            }
            case CheckKind::tangent:
                out.push_back(check_tangent(c1, c2, metric));
                break;
            case CheckKind::different:
                out.push_back(is_projectively_equal(c1, c2) ? Scalar(1) : Scalar(0));
                break;
            case CheckKind::adifferent:
                out.push_back(is_almost_equal(c1, c2) ? Scalar(1) : Scalar(0));
                break;
            case CheckKind::product_sign:
                out.push_back(product_sign_holds(c1, metric, parameter == 0.0 ? 1.0 : parameter)
                                  ? Scalar(0)
                                  : Scalar(1));
                break;
            case CheckKind::only_reals:
                out.push_back(only_reals_holds(c1) ? Scalar(0) : Scalar(1));
                break;
            }
        }
    return out;
}

std::vector<Scalar> Figure::measure(const std::string& key1, const std::string& key2,
                                    MeasureKind kind, bool use_cycle_metric,
                                    double parameter) const {
    require_node(key1);
    require_node(key2);
    const Metric& metric = use_cycle_metric ? cycle_metric_ : point_metric_;
    std::vector<Scalar> out;
    for (const Cycle& c1 : nodes_.at(key1).values)
        for (const Cycle& c2 : nodes_.at(key2).values) {
            switch (kind) {
            case MeasureKind::angle:
                out.push_back(angle_is(c1, c2, metric));
                break;
            case MeasureKind::power:
                out.push_back(power_is(c1, c2, metric, parameter));
                break;
            case MeasureKind::sq_t_distance:
                out.push_back(sq_t_distance_is(c1, c2, metric));
                break;
            case MeasureKind::sq_cross_t_distance:
                out.push_back(sq_cross_t_distance_is(c1, c2, metric));
                break;
            }
        }
    return out;
}

void Figure::resolve_all() {
    if (frozen_)
        return;
    refresh_ghosts();
    for (const std::string& key : get_all_keys(kGhostGen))
        if (nodes_[key].has_parents())
            resolve_node(key);
}

void Figure::propagate_from(const std::vector<std::string>& roots) {
    if (frozen_)
        return;
    std::set<std::string> affected;
    std::vector<std::string> queue = roots;
    size_t guard = 0;
    while (!queue.empty()) {
        if (++guard > nodes_.size() * nodes_.size() + 16)
            throw std::logic_error("figure: cycle detected in the parent graph");
        const std::string k = queue.back();
        queue.pop_back();
        if (!nodes_.count(k) || affected.count(k))
            continue;
        affected.insert(k);
        for (const std::string& ch : nodes_.at(k).children)
            queue.push_back(ch);
    }
    for (const std::string& key : order_by_generation(affected))
        if (nodes_[key].has_parents())
            resolve_node(key);
}

std::vector<std::string> Figure::order_by_generation(const std::set<std::string>& keys) const {
    std::vector<std::string> out(keys.begin(), keys.end());
    std::sort(out.begin(), out.end(), [&](const std::string& a, const std::string& b) {
        const CycleNode& na = nodes_.at(a);
        const CycleNode& nb = nodes_.at(b);
        return na.generation != nb.generation ? na.generation < nb.generation : na.seq < nb.seq;
    });
    return out;
}

void Figure::resolve_node(const std::string& key) {
    CycleNode& nd = nodes_[key];
    if (nd.subfigure) {
        nd.values = eval_subfigure(*nd.subfigure);
        return;
    }
    if (nd.relations.empty())
        return;
    std::vector<QuadraticForm> eqs;
    std::vector<PredicateFn> preds;
    std::vector<Cycle> produced;
    std::vector<Cycle> out;
    bool underdetermined = false;
    int free_count = 0;
    solve_branches(key, 0, eqs, preds, produced, out, underdetermined, free_count);
    nodes_[key].values = unique_cycle(out);
    nodes_[key].underdetermined = underdetermined;
    nodes_[key].free_count = free_count;
}

void Figure::solve_branches(const std::string& key, size_t level,
                            std::vector<QuadraticForm>& eqs, std::vector<PredicateFn>& preds,
                            std::vector<Cycle>& produced, std::vector<Cycle>& out,
                            bool& underdetermined, int& free_count) {
    const std::vector<RelationSpec> rels = nodes_[key].relations;
    const RelationSpec& rel = rels[level];
    ParentValues pv;
    if (rel.parent == key) {
        pv.is_self = true;
    } else {
        require_node(rel.parent);
        pv.cycles = nodes_[rel.parent].values;
        if (pv.cycles.empty())
            return; // unsolved parent: nothing to build on
    }
    const ConditionBranches branches = expand(rel, pv, point_metric_, cycle_metric_, params_);

    for (const ConditionBranch& br : branches.branches) {
        const size_t eq_mark = eqs.size();
        const size_t pred_mark = preds.size();
        const size_t prod_mark = produced.size();
        eqs.insert(eqs.end(), br.equations.begin(), br.equations.end());
        preds.insert(preds.end(), br.predicates.begin(), br.predicates.end());
        produced.insert(produced.end(), br.produced.begin(), br.produced.end());

        if (level + 1 == rels.size()) {
            if (!eqs.empty()) {
                SolutionSet s = evaluate_cycle(eqs, preds, dim());
                underdetermined |= s.underdetermined;
                free_count = std::max(free_count, s.free_count);
                out.insert(out.end(), s.cycles.begin(), s.cycles.end());
            }
            for (const Cycle& c : produced) {
                const Cycle cand = num_normalize(c);
                bool ok = true;
                for (const PredicateFn& p : preds)
                    if (!p(cand)) {
                        ok = false;
                        break;
                    }
                if (ok)
                    out.push_back(cand);
            }
        } else {
            solve_branches(key, level + 1, eqs, preds, produced, out, underdetermined, free_count);
        }

        eqs.erase(eqs.begin() + static_cast<std::ptrdiff_t>(eq_mark), eqs.end());
        preds.resize(pred_mark);
        produced.resize(prod_mark);
    }
}

std::vector<Cycle> Figure::eval_subfigure(const SubfigureCall& call) const {
    // a fresh inner figure with the host metrics; the template's inner
    // hierarchy is copied as-is and its placeholders take the input values
    Figure inner(point_metric_, cycle_metric_);
    inner.params_ = params_;
    inner.frozen_ = true;
    for (const auto& [k, nd] : call.templ->nodes_) {
        if (k == kRealLineKey || k == kInfinityKey)
            continue;
        CycleNode copy = nd;
        copy.values.clear();
        inner.nodes_[k] = std::move(copy);
        inner.next_seq_ = std::max(inner.next_seq_, nd.seq + 1);
    }
    for (size_t i = 0; i < call.inputs.size(); ++i) {
        char name[16];
        std::snprintf(name, sizeof(name), "variable%03zu", i);
        if (!inner.nodes_.count(name))
            throw std::invalid_argument("figure: subfigure placeholder missing");
        inner.nodes_[name].values = nodes_.at(call.inputs[i]).values;
    }
    inner.frozen_ = false;
    inner.resolve_all();
    return inner.nodes_["result"].values;
}

void Figure::save(const std::string& path) const { save_figure(*this, path); }

Figure Figure::load(const std::string& path) { return load_document(path).figure; }

std::shared_ptr<const Figure> midpoint_constructor() {
    static const std::shared_ptr<const Figure> templ = [] {
        auto f = std::make_shared<Figure>(elliptic_metric(2));
        f->freeze();
        const Cycle placeholder(Scalar(0), {Scalar(0), Scalar(0)}, Scalar(0));
        f->add_cycle(placeholder, "variable000");
        f->add_cycle(placeholder, "variable001");
        f->add_cycle(placeholder, "variable002");
        // the cycle joining both endpoints and the reference point
        f->add_cycle_rel({is_orthogonal("variable000"), is_orthogonal("variable001"),
                          is_orthogonal("variable002")},
                         "v4");
        // the cycle with the endpoints as a diameter
        f->add_cycle_rel({is_orthogonal("variable000"), is_orthogonal("variable001"),
                          is_orthogonal("v4")},
                         "v5");
        // their common orthogonal through the reference point
        f->add_cycle_rel({is_orthogonal("variable002"), is_orthogonal("v4"), is_orthogonal("v5")},
                         "v6");
        f->add_cycle_rel({is_orthogonal("v4"), is_orthogonal("v6"),
                          is_orthogonal("result", false), is_adifferent("variable002")},
                         "result");
        return f;
    }();
    return templ;
}

std::shared_ptr<const Figure> subfigure_by_name(const std::string& name) {
    if (name == "midpoint")
        return midpoint_constructor();
    throw std::invalid_argument("figure: unknown subfigure '" + name + "'");
}

} // namespace cyc
