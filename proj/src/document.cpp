#include "cyc/document.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cyc {

using nlohmann::json;

// Accesses the figure internals for persistence.
struct FigureIo {
    static void restore_values(Figure& f, const std::string& key, std::vector<Cycle> values,
                               bool underdetermined, int free_count) {
        f.nodes_[key].values = std::move(values);
        f.nodes_[key].underdetermined = underdetermined;
        f.nodes_[key].free_count = free_count;
    }
    static void thaw(Figure& f) { f.frozen_ = false; }
};

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw std::runtime_error("document: " + where + ": " + what);
}

Scalar parse_scalar(const json& j, const std::string& where) {
    if (j.is_number())
        return Scalar(j.get<double>());
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    fail(where, "expected a number or [re, im]");
}

json dump_scalar(const Scalar& s) {
    if (s.imag() == 0.0)
        return s.real();
    return json::array({s.real(), s.imag()});
}

Expr parse_expr(const json& j, const std::string& where) {
    if (j.is_number())
        return Expr(j.get<double>());
    if (j.is_object()) {
        Expr e;
        if (!j.contains("param") || !j["param"].is_string())
            fail(where, "parameter expression needs a \"param\" name");
        e.param = j["param"].get<std::string>();
        e.scale = j.value("scale", 1.0);
        e.offset = j.value("offset", 0.0);
        return e;
    }
    fail(where, "expected a number or {param, scale, offset}");
}

json dump_expr(const Expr& e) {
    if (e.is_constant())
        return e.offset;
    json j;
    j["param"] = e.param;
    j["scale"] = e.scale;
    j["offset"] = e.offset;
    return j;
}

Cycle parse_cycle(const json& j, int dim, const std::string& where) {
    if (!j.is_object() || !j.contains("k") || !j.contains("l") || !j.contains("m"))
        fail(where, "cycle needs fields k, l, m");
    Cycle c;
    c.k = parse_scalar(j["k"], where + ".k");
    c.m = parse_scalar(j["m"], where + ".m");
    if (!j["l"].is_array() || static_cast<int>(j["l"].size()) != dim)
        fail(where + ".l", "expected " + std::to_string(dim) + " components");
    for (const json& v : j["l"])
        c.l.push_back(parse_scalar(v, where + ".l"));
    return c;
}

json dump_cycle(const Cycle& c) {
    json j;
    j["k"] = dump_scalar(c.k);
    json l = json::array();
    for (const Scalar& v : c.l)
        l.push_back(dump_scalar(v));
    j["l"] = std::move(l);
    j["m"] = dump_scalar(c.m);
    return j;
}

RelationSpec parse_relation(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("kind") || !j.contains("to"))
        fail(where, "relation needs fields kind and to");
    const std::string kind_name = j["kind"].get<std::string>();
    const auto kind = relation_kind_from_name(kind_name);
    if (!kind)
        fail(where, "unknown relation kind '" + kind_name + "'");
    RelationSpec r;
    r.kind = *kind;
    r.parent = j["to"].get<std::string>();
    r.use_cycle_metric = j.value("cycle_metric", r.kind != RelationKind::product_sign);
    if (j.contains("parameter"))
        r.parameter = parse_expr(j["parameter"], where + ".parameter");
    else if (r.kind == RelationKind::product_sign)
        r.parameter = Expr(1.0);
    if (j.contains("matrix")) {
        if (!j["matrix"].is_array() || j["matrix"].size() != 4)
            fail(where + ".matrix", "expected 4 entries");
        for (size_t i = 0; i < 4; ++i)
            r.matrix[i] = parse_expr(j["matrix"][i], where + ".matrix");
    }
    return r;
}

json dump_relation(const RelationSpec& r) {
    json j;
    j["kind"] = relation_kind_name(r.kind);
    j["to"] = r.parent;
    const bool default_cm = r.kind != RelationKind::product_sign;
    if (r.use_cycle_metric != default_cm)
        j["cycle_metric"] = r.use_cycle_metric;
    if (!r.parameter.is_constant() || r.parameter.offset != 0.0)
        j["parameter"] = dump_expr(r.parameter);
    if (r.kind == RelationKind::moebius || r.kind == RelationKind::sl2) {
        json m = json::array();
        for (const Expr& e : r.matrix)
            m.push_back(dump_expr(e));
        j["matrix"] = std::move(m);
    }
    return j;
}

Metric parse_metric(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty())
        fail(where, "expected a nonempty signature array");
    std::vector<double> s;
    for (const json& v : j) {
        if (!v.is_number())
            fail(where, "signature entries shall be numbers");
        s.push_back(v.get<double>());
    }
    return Metric(std::move(s));
}

Assertion parse_assertion(const json& j, const std::string& where) {
    const double default_tol = epsilon() * 1e3;
    if (j.contains("check")) {
        CheckAssertion a;
        const std::string name = j["check"].get<std::string>();
        const auto kind = check_kind_from_name(name);
        if (!kind)
            fail(where, "unknown check kind '" + name + "'");
        a.kind = *kind;
        a.a = j.at("a").get<std::string>();
        a.b = j.at("b").get<std::string>();
        a.use_cycle_metric = j.value("cycle_metric", true);
        a.parameter = j.value("parameter", 0.0);
        a.tol = j.value("tol", default_tol);
        return a;
    }
    if (j.contains("measure")) {
        MeasureAssertion a;
        const std::string name = j["measure"].get<std::string>();
        const auto kind = measure_kind_from_name(name);
        if (!kind)
            fail(where, "unknown measure kind '" + name + "'");
        a.kind = *kind;
        a.a = j.at("a").get<std::string>();
        a.b = j.at("b").get<std::string>();
        a.use_cycle_metric = j.value("cycle_metric", true);
        a.parameter = j.value("parameter", 0.0);
        a.tol = j.value("tol", default_tol);
        if (!j.contains("expect"))
            fail(where, "measure assertion needs \"expect\"");
        if (j["expect"].is_array())
            for (const json& v : j["expect"])
                a.expect.push_back(v.get<double>());
        else
            a.expect.push_back(j["expect"].get<double>());
        return a;
    }
    fail(where, "assertion needs \"check\" or \"measure\"");
}

} // namespace

Document parse_document(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("document: ") + e.what());
    }
    if (!j.is_object() || !j.contains("point_metric"))
        fail("top level", "expected an object with \"point_metric\"");

    const Metric pm = parse_metric(j["point_metric"], "point_metric");
    if (j.contains("dim") && j["dim"].get<int>() != pm.dim())
        fail("dim", "does not match the point metric");

    if (j.contains("epsilon"))
        set_epsilon(j["epsilon"].get<double>());

    Document doc{j.contains("cycle_metric")
                     ? Figure(pm, parse_metric(j["cycle_metric"], "cycle_metric"))
                     : Figure(pm),
                 {}};
    Figure& f = doc.figure;
    f.freeze();

    if (j.contains("parameters"))
        for (const auto& [name, v] : j["parameters"].items())
            f.set_parameter(name, v.get<double>());

    const bool restore = j.value("solved", false);
    struct Stored {
        std::string key;
        std::vector<Cycle> values;
        bool underdetermined;
        int free_count;
    };
    std::vector<Stored> stored;

    size_t index = 0;
    for (const json& nj : j.value("nodes", json::array())) {
        const std::string where = "nodes[" + std::to_string(index++) + "]";
        if (!nj.is_object() || !nj.contains("key"))
            fail(where, "node needs a \"key\"");
        const std::string key = nj["key"].get<std::string>();
        if (nj.contains("point")) {
            std::vector<Expr> coords;
            for (const json& v : nj["point"])
                coords.push_back(parse_expr(v, where + ".point"));
            f.add_point(std::span<const Expr>(coords), key);
        } else if (nj.contains("cycle")) {
            f.add_cycle(parse_cycle(nj["cycle"], f.dim(), where + ".cycle"), key);
        } else if (nj.contains("relations")) {
            std::vector<RelationSpec> rels;
            for (const json& rj : nj["relations"])
                rels.push_back(parse_relation(rj, where + ".relations"));
            f.add_cycle_rel(std::move(rels), key);
        } else if (nj.contains("subfigure")) {
            std::vector<std::string> inputs;
            for (const json& v : nj.value("inputs", json::array()))
                inputs.push_back(v.get<std::string>());
            const std::string name = nj["subfigure"].get<std::string>();
            f.add_subfigure(subfigure_by_name(name), name, inputs, key);
        } else {
            fail(where, "node needs point, cycle, relations or subfigure");
        }
        if (nj.contains("style"))
            f.set_style(key, nj["style"].get<std::string>());
        if (restore && nj.contains("values")) {
            Stored s;
            s.key = key;
            for (const json& vj : nj["values"])
                s.values.push_back(parse_cycle(vj, f.dim(), where + ".values"));
            s.underdetermined = nj.value("underdetermined", false);
            s.free_count = nj.value("free", 0);
            stored.push_back(std::move(s));
        }
    }

    if (restore) {
        FigureIo::thaw(f);
        for (Stored& s : stored)
            FigureIo::restore_values(f, s.key, std::move(s.values), s.underdetermined, s.free_count);
    } else {
        f.unfreeze();
    }

    index = 0;
    for (const json& aj : j.value("assertions", json::array()))
        doc.assertions.push_back(parse_assertion(aj, "assertions[" + std::to_string(index++) + "]"));
    return doc;
}

Document load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("document: cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_document(buf.str());
}

std::string figure_to_json(const Figure& figure) {
    json j;
    j["dim"] = figure.dim();
    j["point_metric"] = figure.point_metric().sigma;
    j["cycle_metric"] = figure.cycle_metric().sigma;
    j["solved"] = true;
    if (!figure.parameters().empty())
        j["parameters"] = figure.parameters();

    json nodes = json::array();
    for (const std::string& key : figure.get_all_keys()) {
        if (key == kRealLineKey || key == kInfinityKey)
            continue;
        const CycleNode& nd = figure.node(key);
        json nj;
        nj["key"] = key;
        if (nd.point) {
            json coords = json::array();
            for (const Expr& e : *nd.point)
                coords.push_back(dump_expr(e));
            nj["point"] = std::move(coords);
        } else if (nd.subfigure) {
            nj["subfigure"] = nd.subfigure->name;
            nj["inputs"] = nd.subfigure->inputs;
        } else if (!nd.relations.empty()) {
            json rels = json::array();
            for (const RelationSpec& r : nd.relations)
                rels.push_back(dump_relation(r));
            nj["relations"] = std::move(rels);
        } else {
            nj["cycle"] = nd.values.empty() ? dump_cycle(Cycle(Scalar(0),
                                                              std::vector<Scalar>(figure.dim(), Scalar(0)),
                                                              Scalar(0)))
                                            : dump_cycle(nd.values.front());
        }
        if (!nd.style.empty())
            nj["style"] = nd.style;
        json values = json::array();
        for (const Cycle& c : nd.values)
            values.push_back(dump_cycle(c));
        nj["values"] = std::move(values);
        if (nd.underdetermined) {
            nj["underdetermined"] = true;
            nj["free"] = nd.free_count;
        }
        nodes.push_back(std::move(nj));
    }
    j["nodes"] = std::move(nodes);
    return j.dump(2) + "\n";
}

void save_figure(const Figure& figure, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("document: cannot write '" + path + "'");
    out << figure_to_json(figure);
}

} // namespace cyc
