// Byte-compares the CLI outputs on the shipped documents against the
// committed goldens. Usage: golden_tests <source-root> <cli-binary>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string g_root;
std::string g_cli;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string run_cli(const std::string& args, int& exit_code) {
    const std::string cmd = g_cli + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        exit_code = -1;
        return "";
    }
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0)
        out.append(buf, n);
    exit_code = WEXITSTATUS(pclose(pipe));
    return out;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: golden_tests <source-root> <cli-binary>\n");
        return 2;
    }
    g_root = argv[1];
    g_cli = argv[2];

    struct Item {
        std::string args;
        std::string golden;
        int want_exit;
    };
    const std::vector<Item> items = {
        {"eval " + g_root + "/figures/hello_cycle.json", "eval_hello_cycle.txt", 0},
        {"eval " + g_root + "/figures/lobachevsky_anim.json", "eval_lobachevsky_anim.txt", 0},
        {"eval " + g_root + "/figures/fillmore_springer.json", "eval_fillmore_springer.txt", 0},
        {"eval " + g_root + "/figures/nine_points.json", "eval_nine_points.txt", 0},
        {"eval " + g_root + "/figures/nine_points_hyperbolic.json",
         "eval_nine_points_hyperbolic.txt", 0},
        {"eval " + g_root + "/figures/apollonius3d.json", "eval_apollonius3d.txt", 0},
        {"eval " + g_root + "/figures/modular_group.json", "eval_modular_group.txt", 0},
        {"check " + g_root + "/figures/hello_cycle.json", "check_hello_cycle.txt", 0},
        {"check " + g_root + "/figures/nine_points.json", "check_nine_points.txt", 0},
        {"check " + g_root + "/figures/nine_points_hyperbolic.json",
         "check_nine_points_hyperbolic.txt", 0},
        {"check " + g_root + "/figures/fillmore_springer.json", "check_fillmore_springer.txt", 0},
    };

    int failures = 0;
    for (const Item& item : items) {
        int code = 0;
        const std::string got = run_cli(item.args, code);
        const std::string want = slurp(g_root + "/tests/golden/" + item.golden);
        const bool ok = !want.empty() && code == item.want_exit && got == want;
        std::printf("%s %s\n", ok ? "PASS" : "FAIL", item.golden.c_str());
        failures += ok ? 0 : 1;
    }

    // render + repeated eval determinism
    int code1 = 0, code2 = 0;
    run_cli("render " + g_root + "/figures/hello_cycle.json -o golden_render_check.svg "
            "--viewport -3 3 -3 3 --size 300",
            code1);
    const std::string svg = slurp("golden_render_check.svg");
    std::remove("golden_render_check.svg");
    const bool render_ok =
        code1 == 0 && svg == slurp(g_root + "/tests/golden/render_hello_cycle.svg");
    std::printf("%s render_hello_cycle.svg\n", render_ok ? "PASS" : "FAIL");
    failures += render_ok ? 0 : 1;

    const std::string once = run_cli("eval " + g_root + "/figures/nine_points.json", code1);
    const std::string again = run_cli("eval " + g_root + "/figures/nine_points.json", code2);
    const bool stable = code1 == code2 && once == again;
    std::printf("%s eval output stable across runs\n", stable ? "PASS" : "FAIL");
    failures += stable ? 0 : 1;

    // exit codes: 1 for a parse error, 2 for failed assertions
    run_cli("eval " + g_root + "/does_not_exist.json", code1);
    const bool parse_exit = code1 == 1;
    std::printf("%s parse error exits 1\n", parse_exit ? "PASS" : "FAIL");
    failures += parse_exit ? 0 : 1;

    // a node forced infeasible leaves an empty row and exit code 2
    {
        std::ofstream doc("golden_infeasible.json");
        doc << R"({"point_metric": [-1, -1], "nodes": [
                {"key": "u", "cycle": {"k": 1, "l": [0, 0], "m": -1}},
                {"key": "D", "relations": [
                    {"kind": "orthogonal", "to": "D", "cycle_metric": false},
                    {"kind": "product_sign", "to": "D", "parameter": -1},
                    {"kind": "orthogonal", "to": "u"},
                    {"kind": "orthogonal", "to": "R"}]}]})";
        doc.close();
        const std::string out = run_cli("eval golden_infeasible.json", code1);
        const bool ok = code1 == 2 && out.find("<empty>") != std::string::npos;
        std::printf("%s infeasible node exits 2\n", ok ? "PASS" : "FAIL");
        failures += ok ? 0 : 1;
        std::remove("golden_infeasible.json");
    }

    // a wrong expectation fails the assertion report with exit code 2
    {
        std::ofstream doc("golden_badexpect.json");
        doc << R"({"point_metric": [-1, -1], "nodes": [
                {"key": "u", "cycle": {"k": 1, "l": [0, 0], "m": -1}},
                {"key": "A", "cycle": {"k": 1, "l": [7, 1], "m": 46}}],
                "assertions": [
                {"measure": "sq_cross_t_distance", "a": "u", "b": "A", "expect": 42, "tol": 1e-6}]})";
        doc.close();
        const std::string out = run_cli("check golden_badexpect.json", code1);
        const bool ok = code1 == 2 && out.find("FAIL") != std::string::npos;
        std::printf("%s failed assertion exits 2\n", ok ? "PASS" : "FAIL");
        failures += ok ? 0 : 1;
        std::remove("golden_badexpect.json");
    }

    // rendering a three-dimensional document is an error
    run_cli("render " + g_root + "/figures/apollonius3d.json -o golden_3d.svg", code1);
    std::remove("golden_3d.svg");
    const bool dim_exit = code1 == 1;
    std::printf("%s 3-D render exits 1\n", dim_exit ? "PASS" : "FAIL");
    failures += dim_exit ? 0 : 1;

    // animation writes one frame per value
    run_cli("animate " + g_root + "/figures/lobachevsky_anim.json -o golden_frames "
            "--param t --from 0.1 --to 0.5 --frames 3 --viewport -2.2 3 -2 2 --grid 64",
            code1);
    int frame_count = 0;
    for (int i = 0; i < 4; ++i) {
        char name[48];
        std::snprintf(name, sizeof(name), "golden_frames/frame_%03d.svg", i);
        std::ifstream probe(name);
        if (probe.good())
            ++frame_count;
        std::remove(name);
    }
    std::remove("golden_frames");
    const bool anim_ok = code1 == 0 && frame_count == 3;
    std::printf("%s animate writes 3 frames\n", anim_ok ? "PASS" : "FAIL");
    failures += anim_ok ? 0 : 1;

    return failures == 0 ? 0 : 1;
}
