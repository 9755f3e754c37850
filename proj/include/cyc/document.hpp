#pragma once

#include <variant>

#include "cyc/figure.hpp"

namespace cyc {

// Embedded pass/fail statement of a figure document.
struct CheckAssertion {
    CheckKind kind;
    std::string a, b;
    bool use_cycle_metric = true;
    double parameter = 0.0;
    double tol; // defaults to epsilon * 1e3
};

struct MeasureAssertion {
    MeasureKind kind;
    std::string a, b;
    bool use_cycle_metric = true;
    double parameter = 0.0;
    std::vector<double> expect;
    double tol;
};

using Assertion = std::variant<CheckAssertion, MeasureAssertion>;

struct Document {
    Figure figure;
    std::vector<Assertion> assertions;
};

// Parses a figure document; malformed input raises std::runtime_error with a
// field diagnostic. Nodes without stored values are solved on load.
Document load_document(const std::string& path);
Document parse_document(const std::string& text);

// Serialises the figure with its solved values; load restores them verbatim.
std::string figure_to_json(const Figure& figure);
void save_figure(const Figure& figure, const std::string& path);

} // namespace cyc
