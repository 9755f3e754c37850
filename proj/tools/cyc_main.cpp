#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cyc/document.hpp"
#include "cyc/render.hpp"

namespace {

using namespace cyc;

std::string format_expr(const Expr& e) {
    if (e.is_constant())
        return format_real(e.offset);
    std::string s = format_real(e.scale) + "*" + e.param;
    if (e.offset != 0.0)
        s += (e.offset > 0 ? "+" : "") + format_real(e.offset);
    return s;
}

std::string format_cycle(const Cycle& c) {
    std::string s = "(" + format_scalar(c.k) + ", [";
    for (int i = 0; i < c.dim(); ++i) {
        if (i)
            s += ", ";
        s += format_scalar(c.l[static_cast<size_t>(i)]);
    }
    s += "], " + format_scalar(c.m) + ")";
    return s;
}

std::string parent_summary(const CycleNode& nd) {
    if (nd.point) {
        std::string s = "point(";
        for (size_t i = 0; i < nd.point->size(); ++i) {
            if (i)
                s += ", ";
            s += format_expr((*nd.point)[i]);
        }
        return s + ")";
    }
    if (nd.subfigure) {
        std::string s = "subfigure(" + nd.subfigure->name + ";";
        for (const std::string& in : nd.subfigure->inputs)
            s += " " + in;
        return s + ")";
    }
    if (nd.relations.empty())
        return "data";
    std::string s;
    for (size_t i = 0; i < nd.relations.size(); ++i) {
        const RelationSpec& r = nd.relations[i];
        if (i)
            s += ", ";
        s += relation_kind_name(r.kind);
        s += "(" + r.parent;
        if (r.kind == RelationKind::moebius || r.kind == RelationKind::sl2) {
            s += ";";
            for (const Expr& e : r.matrix)
                s += " " + format_expr(e);
        } else if (!r.parameter.is_constant() || r.parameter.offset != 0.0) {
            s += "; " + format_expr(r.parameter);
        }
        s += ")";
    }
    return s;
}

int run_eval(const std::string& path) {
    const Document doc = load_document(path);
    const Figure& f = doc.figure;
    bool any_empty = false;
    for (const std::string& key : f.get_all_keys()) {
        const CycleNode& nd = f.node(key);
        std::cout << key << "\t[" << nd.generation << "]\t";
        if (nd.values.empty()) {
            std::cout << "<empty>";
            if (nd.has_parents())
                any_empty = true;
        } else {
            for (size_t i = 0; i < nd.values.size(); ++i) {
                if (i)
                    std::cout << " ";
                std::cout << format_cycle(nd.values[i]);
            }
        }
        if (nd.underdetermined)
            std::cout << " free=" << nd.free_count;
        std::cout << "\t" << parent_summary(nd) << "\n";
    }
    return any_empty ? 2 : 0;
}

int run_check(const std::string& path) {
    const Document doc = load_document(path);
    const Figure& f = doc.figure;
    bool all_pass = true;
    for (const Assertion& assertion : doc.assertions) {
        if (const auto* chk = std::get_if<CheckAssertion>(&assertion)) {
            const std::vector<Scalar> res =
                f.check_rel(chk->a, chk->b, chk->kind, chk->use_cycle_metric, chk->parameter);
            double worst = 0.0;
            for (const Scalar& r : res)
                worst = std::max(worst, std::abs(r));
            const bool pass = !res.empty() && worst < chk->tol;
            all_pass &= pass;
            std::cout << (pass ? "PASS" : "FAIL") << " check " << check_kind_name(chk->kind) << "("
                      << chk->a << ", " << chk->b << ") max_residual=" << format_real(worst) << "\n";
        } else {
            const auto& ms = std::get<MeasureAssertion>(assertion);
            const std::vector<Scalar> got =
                f.measure(ms.a, ms.b, ms.kind, ms.use_cycle_metric, ms.parameter);
            // every expected value must be met by a distinct measured one
            std::vector<bool> taken(got.size(), false);
            bool pass = got.size() == ms.expect.size();
            for (double want : ms.expect) {
                bool found = false;
                for (size_t i = 0; i < got.size() && !found; ++i)
                    if (!taken[i] && std::abs(got[i] - Scalar(want)) < ms.tol) {
                        taken[i] = true;
                        found = true;
                    }
                pass &= found;
            }
            all_pass &= pass;
            std::cout << (pass ? "PASS" : "FAIL") << " measure " << measure_kind_name(ms.kind) << "("
                      << ms.a << ", " << ms.b << ") measured={";
            for (size_t i = 0; i < got.size(); ++i)
                std::cout << (i ? ", " : "") << format_scalar(got[i]);
            std::cout << "}\n";
        }
    }
    if (doc.assertions.empty()) {
        std::cerr << "no assertions in " << path << "\n";
        return 1;
    }
    return all_pass ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cycle ensembles: evaluate, check, render and animate figure documents"};
    app.require_subcommand(1);

    std::string doc_path;
    std::string out_path;
    std::vector<double> viewport_args;
    int size = 300;
    int grid = 256;
    bool no_real_line = false;
    std::string param;
    double from = 0.0, to = 1.0;
    int frames = 10;
    std::string stamp_corner = "bl";

    CLI::App* eval_cmd = app.add_subcommand("eval", "print the node table of a document");
    eval_cmd->add_option("doc", doc_path, "figure document")->required();

    CLI::App* check_cmd = app.add_subcommand("check", "run the document's embedded assertions");
    check_cmd->add_option("doc", doc_path, "figure document")->required();

    const auto add_view_opts = [&](CLI::App* cmd) {
        cmd->add_option("--viewport", viewport_args, "xmin xmax ymin ymax")->expected(4);
        cmd->add_option("--size", size, "image width in pixels");
        cmd->add_option("--grid", grid, "contour grid cells per axis");
        cmd->add_flag("--no-real-line", no_real_line, "omit the real line");
    };

    CLI::App* render_cmd = app.add_subcommand("render", "render a document to SVG");
    render_cmd->add_option("doc", doc_path, "figure document")->required();
    render_cmd->add_option("-o,--output", out_path, "output SVG file")->required();
    add_view_opts(render_cmd);

    CLI::App* animate_cmd = app.add_subcommand("animate", "render one SVG frame per parameter value");
    animate_cmd->add_option("doc", doc_path, "figure document")->required();
    animate_cmd->add_option("-o,--output", out_path, "output directory")->required();
    animate_cmd->add_option("--param", param, "parameter name")->required();
    animate_cmd->add_option("--from", from, "first value")->required();
    animate_cmd->add_option("--to", to, "last value")->required();
    animate_cmd->add_option("--frames", frames, "number of frames")->required();
    animate_cmd->add_option("--stamp-corner", stamp_corner, "value stamp corner: bl br tl tr");
    add_view_opts(animate_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        if (eval_cmd->parsed())
            return run_eval(doc_path);
        if (check_cmd->parsed())
            return run_check(doc_path);

        cyc::Viewport vp;
        if (!viewport_args.empty()) {
            vp.xmin = viewport_args[0];
            vp.xmax = viewport_args[1];
            vp.ymin = viewport_args[2];
            vp.ymax = viewport_args[3];
        }
        vp.size_px = size;
        vp.grid_resolution = grid;

        const cyc::Document doc = cyc::load_document(doc_path);
        if (render_cmd->parsed()) {
            std::ofstream out(out_path);
            if (!out)
                throw std::runtime_error("cannot write " + out_path);
            out << cyc::render_svg(doc.figure, vp, !no_real_line);
            return 0;
        }
        // animate
        if (frames < 1)
            throw std::invalid_argument("--frames must be at least 1");
        std::vector<double> values;
        for (int i = 0; i < frames; ++i)
            values.push_back(frames == 1 ? from : from + (to - from) * i / (frames - 1));
        cyc::Figure fig = doc.figure;
        if (!fig.parameters().count(param))
            fig.set_parameter(param, from);
        const std::vector<std::string> svgs =
            cyc::animate(fig, param, values, vp, !no_real_line, stamp_corner);
        std::filesystem::create_directories(out_path);
        for (size_t i = 0; i < svgs.size(); ++i) {
            char name[32];
            std::snprintf(name, sizeof(name), "frame_%03zu.svg", i);
            std::ofstream out(std::filesystem::path(out_path) / name);
            if (!out)
                throw std::runtime_error("cannot write frame " + std::string(name));
            out << svgs[i];
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
