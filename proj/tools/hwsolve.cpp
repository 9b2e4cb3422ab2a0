// Command-line front end: enumerate roots of f(z) = y, run a single
// inversion, or evaluate the forward map.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hwroots/enumerate.hpp"
#include "hwroots/errors.hpp"
#include "hwroots/hw.hpp"
#include "hwroots/jet.hpp"
#include "hwroots/poly.hpp"

using json = nlohmann::json;
using namespace hwroots;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitWarnings = 2;

Complex parse_complex_arg(const std::string& text, const std::string& flag) {
    ExprPtr e;
    try {
        e = parse(text);
    } catch (const Error& err) {
        throw Error(flag + ": " + err.what());
    }
    if (contains_variable(*e)) throw Error(flag + " must be a constant, got '" + text + "'");
    return eval_point(e, Complex(0.0, 0.0));
}

std::string format_root(Complex v) {
    char buf[80];
    if (std::abs(v.imag()) < 5e-6) {
        std::snprintf(buf, sizeof buf, "%.5f", v.real());
    } else {
        std::snprintf(buf, sizeof buf, "%.5f%+.5fi", v.real(), v.imag());
    }
    return buf;
}

json complex_json(Complex v) { return json{{"re", v.real()}, {"im", v.imag()}}; }

struct RunConfig {
    std::string expr;
    std::vector<std::string> rational;  // P, Q when present
    std::string y_text = "0";
    int count = -1;  // -1: default to the polynomial degree
    int order = 10;
    double epsilon = 1e-20;
    std::string center_text = "0";
    double cluster_tol = 1e-3;
    std::string format = "text";
};

json config_json(const RunConfig& cfg, Complex y, Complex center, int count) {
    json j{{"y", complex_json(y)},       {"count", count},
           {"order", cfg.order},         {"epsilon", cfg.epsilon},
           {"center", complex_json(center)}, {"cluster_tol", cfg.cluster_tol},
           {"format", cfg.format}};
    if (!cfg.expr.empty()) j["expr"] = cfg.expr;
    if (!cfg.rational.empty()) j["rational"] = cfg.rational;
    return j;
}

int report(const std::vector<RootRecord>& clustered, const json& config, bool as_json) {
    std::vector<std::string> warnings;
    for (const auto& r : clustered)
        for (const auto& w : r.warnings)
            if (std::find(warnings.begin(), warnings.end(), w) == warnings.end())
                warnings.push_back(w);

    if (as_json) {
        json out{{"config", config}, {"roots", json::array()}, {"warnings", warnings}};
        for (const auto& r : clustered) {
            out["roots"].push_back(json{{"re", r.value.real()},
                                        {"im", r.value.imag()},
                                        {"residual", r.residual},
                                        {"multiplicity", r.multiplicity},
                                        {"order_found", r.order_found}});
        }
        std::cout << out.dump(2) << "\n";
    } else {
        int idx = 1;
        for (const auto& r : clustered) {
            std::cout << "z" << idx++ << " ≃ " << format_root(r.value);
            if (r.multiplicity > 1) std::cout << " (multiplicity " << r.multiplicity << ")";
            std::cout << "\n";
        }
        for (const auto& w : warnings) std::cout << "warning: " << w << "\n";
    }
    return warnings.empty() ? kExitOk : kExitWarnings;
}

int run_solve(const RunConfig& cfg) {
    const Complex y = parse_complex_arg(cfg.y_text, "--y");
    const Complex center = parse_complex_arg(cfg.center_text, "--center");

    EnumerateOptions opts;
    opts.order = cfg.order;
    opts.epsilon = cfg.epsilon;
    opts.center = center;

    std::vector<RootRecord> records;
    int count = cfg.count;

    if (!cfg.rational.empty()) {
        const ExprPtr P = parse(cfg.rational[0]);
        const ExprPtr Q = parse(cfg.rational[1]);
        if (count < 0) {
            const auto dp = polynomial_degree(*P);
            const auto dq = polynomial_degree(*Q);
            if (!dp || !dq) throw Error("--rational requires polynomial P and Q");
            const ExprPtr F = Expr::sub(P, Expr::mul(Expr::constant(y), Q));
            count = Poly(jet_of_expr(F, center, std::max({*dp, *dq, 1}) + 2).coeffs()).degree();
            if (count < 1) throw DegenerateRationalError();
        }
        if (count < 1) throw Error("--count must be >= 1");
        records = enumerate_rational(P, Q, y, count, opts);
    } else {
        const ExprPtr f = parse(cfg.expr);
        if (count < 0) {
            const auto deg = polynomial_degree(*f);
            if (!deg)
                throw Error("--count is required for non-polynomial input "
                            "(transcendental equations have infinitely many roots)");
            count = *deg;
            if (count < 1) throw Error("input is constant; nothing to solve");
        }
        if (count < 1) throw Error("--count must be >= 1");
        records = enumerate_roots(f, y, count, opts);
    }

    const auto clustered = cluster_multiplicities(records, cfg.cluster_tol);
    return report(clustered, config_json(cfg, y, center, count), cfg.format == "json");
}

int run_hw(const std::vector<std::string>& params_text, const std::string& y_text,
           int order, const std::string& center_text, const std::string& format) {
    HwQuery q;
    for (const auto& t : params_text) q.params.push_back(parse(t));
    q.y = parse_complex_arg(y_text, "--y");
    q.order = order;
    q.center = parse_complex_arg(center_text, "--center");

    const HwResult r = hw_solve(q);
    if (format == "json") {
        json out{{"value", complex_json(r.value)},
                 {"residual", r.residual},
                 {"newton_iterations", r.newton_iterations},
                 {"candidate_count", r.candidate_count},
                 {"warnings", r.warnings}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "value ≃ " << format_root(r.value) << "\n";
        std::printf("residual = %.3e, newton iterations = %d, candidates = %d\n", r.residual,
                    r.newton_iterations, r.candidate_count);
        for (const auto& w : r.warnings) std::cout << "warning: " << w << "\n";
    }
    return r.warnings.empty() ? kExitOk : kExitWarnings;
}

int run_gmap(const std::vector<std::string>& params_text, const std::string& z_text,
             const std::string& format) {
    std::vector<ExprPtr> params;
    for (const auto& t : params_text) params.push_back(parse(t));
    const Complex z0 = parse_complex_arg(z_text, "--z");
    const Complex v = g_map(params, z0);
    if (format == "json") {
        std::cout << json{{"value", complex_json(v)}}.dump(2) << "\n";
    } else {
        char buf[80];
        std::snprintf(buf, sizeof buf, "%.17g%+.17gi", v.real(), v.imag());
        std::cout << buf << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Root enumeration for separable complex equations f(z) = y"};
    app.require_subcommand(1);

    RunConfig cfg;
    auto* solve = app.add_subcommand("solve", "Enumerate roots of f(z) = y");
    auto* expr_opt = solve->add_option("--expr", cfg.expr, "Expression f(z)");
    auto* rat_opt = solve->add_option("--rational", cfg.rational,
                                      "Rational input: P(z) Q(z) for f = P/Q")
                        ->expected(2);
    expr_opt->excludes(rat_opt);
    solve->add_option("--y", cfg.y_text, "Target value y (complex, e.g. 2 or 1+2i)");
    solve->add_option("--count", cfg.count, "How many roots to extract (default: degree)");
    solve->add_option("--order", cfg.order, "Series truncation order")->check(CLI::Range(2, 10000));
    solve->add_option("--epsilon", cfg.epsilon, "Target for deflated extractions");
    solve->add_option("--center", cfg.center_text, "Series expansion center");
    solve->add_option("--cluster-tol", cfg.cluster_tol, "Multiplicity clustering distance");
    solve->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));

    std::vector<std::string> hw_params;
    std::string hw_y = "0", hw_center = "0", hw_format = "text";
    int hw_order = 10;
    auto* hw = app.add_subcommand("hw", "One inversion with raw functional parameters");
    hw->add_option("--param", hw_params, "Functional parameter expression (repeatable)")
        ->required();
    hw->add_option("--y", hw_y, "Target value");
    hw->add_option("--order", hw_order, "Series truncation order")->check(CLI::Range(2, 10000));
    hw->add_option("--center", hw_center, "Series expansion center");
    hw->add_option("--format", hw_format, "Output format")->check(CLI::IsMember({"text", "json"}));

    std::vector<std::string> gmap_params;
    std::string gmap_z = "0", gmap_format = "text";
    auto* gmap = app.add_subcommand("gmap", "Evaluate the forward map G(params; z)");
    gmap->add_option("--param", gmap_params, "Functional parameter expression (repeatable)");
    gmap->add_option("--z", gmap_z, "Evaluation point")->required();
    gmap->add_option("--format", gmap_format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }

    try {
        if (solve->parsed()) {
            if (cfg.expr.empty() && cfg.rational.empty())
                throw Error("one of --expr or --rational is required");
            if (cfg.epsilon <= 0.0) throw Error("--epsilon must be > 0");
            if (cfg.cluster_tol <= 0.0) throw Error("--cluster-tol must be > 0");
            if (cfg.count == 0) throw Error("--count must be >= 1");
            return run_solve(cfg);
        }
        if (hw->parsed()) return run_hw(hw_params, hw_y, hw_order, hw_center, hw_format);
        if (gmap->parsed()) return run_gmap(gmap_params, gmap_z, gmap_format);
    } catch (const SyntaxError& e) {
        std::cerr << "error: " << e.what() << "\n"
                  << "expression grammar: +, -, *, /, ^ with parentheses; variable z;\n"
                  << "literals like 2, 0.5, 1e-20, 3i, 1+2i; functions exp, log, sqrt,\n"
                  << "sin, cos, tan, sinh, cosh, tanh, sinc\n";
        return kExitError;
    } catch (const PoleError& e) {
        std::cerr << "error: " << e.what();
        if (!e.path.empty()) std::cerr << " [at " << e.path << "]";
        std::cerr << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
