// Command-line front end for the monoidal kernel: parses expressions,
// dispatches kernel operations and prints canonical text or JSON.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "monoidal/adic.hpp"
#include "monoidal/expr.hpp"

namespace {

using namespace monoidal;

struct SharedOptions {
    std::string ring_selector = "rat";
    unsigned long order = 10;
    std::string vars_csv;
    std::string format = "text";
    bool strict_vars = false;
};

void add_shared_options(CLI::App* cmd, SharedOptions& opts) {
    cmd->add_option("--ring", opts.ring_selector, "Coefficient ring: int, rat, gauss or mod:n")
        ->default_str("rat");
    cmd->add_option("--order", opts.order, "Series truncation order N (N >= 1)")
        ->envname("MONOIDAL_DEFAULT_ORDER")
        ->default_str("10");
    cmd->add_option("--vars", opts.vars_csv, "Comma-separated variable declarations");
    cmd->add_option("--format", opts.format, "Output format: text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->default_str("text");
    cmd->add_flag("--strict-vars", opts.strict_vars,
                  "Reject variables that were not declared with --vars");
}

CliConfig make_config(const SharedOptions& opts) {
    if (opts.order < 1)
        throw KernelError(ErrorCode::InvalidArgument, "--order must be >= 1");
    CliConfig config;
    config.ring = ring_from_selector(opts.ring_selector);
    config.order = opts.order;
    config.strict_vars = opts.strict_vars;
    std::stringstream ss(opts.vars_csv);
    std::string var;
    while (std::getline(ss, var, ','))
        if (!var.empty()) config.declared_vars.push_back(var);
    return config;
}

int run_eval(const SharedOptions& opts, const std::string& input) {
    CliConfig config = make_config(opts);
    EvalValue result = evaluate_expression(config, parse_expression(input));
    if (opts.format == "json")
        std::cout << render_json(config, result).dump() << "\n";
    else
        std::cout << render_text(config, result) << "\n";
    return 0;
}

int run_series(const SharedOptions& opts, const std::string& name, const std::string& var,
               const std::string& coef_text) {
    CliConfig config = make_config(opts);
    PowerSeries series = [&]() {
        if (name == "geom_plus") return PowerSeries::geometric_plus(config.ring, var);
        if (name == "geom_minus") return PowerSeries::geometric_minus(config.ring, var);
        if (name == "sin") return PowerSeries::sine(config.ring, var);
        if (name == "cos") return PowerSeries::cosine(config.ring, var);
        if (name == "exp") {
            EvalValue c = evaluate_expression(config, parse_expression(coef_text));
            const Polynomial* p = std::get_if<Polynomial>(&c);
            if (!p || p->support_size() > 1 ||
                (p->support_size() == 1 && !p->leading_term_min().first.empty()))
                throw KernelError(ErrorCode::InvalidArgument,
                                  "--coef must evaluate to a ring constant");
            return PowerSeries::exponential(
                config.ring, p->is_zero() ? config.ring->zero() : p->leading_term_min().second,
                var);
        }
        throw KernelError(ErrorCode::InvalidArgument,
                          "unknown series " + name +
                              " (use geom_plus, geom_minus, sin, cos or exp)");
    }();
    EvalValue result = series;
    if (opts.format == "json")
        std::cout << render_json(config, result).dump() << "\n";
    else
        std::cout << render_text(config, result) << "\n";
    return 0;
}

int run_tower(const SharedOptions& opts, const std::string& input, unsigned long levels) {
    CliConfig config = make_config(opts);
    if (levels < 1) throw KernelError(ErrorCode::InvalidArgument, "--levels must be >= 1");
    PowerSeries series = as_series(evaluate_expression(config, parse_expression(input)));
    TowerPtr tower = tower_of(series);
    if (opts.format == "json") {
        std::cout << tower->to_json(levels).dump() << "\n";
    } else {
        for (const auto& line : tower->dump_text(levels)) std::cout << line << "\n";
    }
    return 0;
}

int print_report(const SeriesIdentityReport& report, const std::string& closing) {
    for (const auto& check : report.checks)
        std::cout << (check.ok ? "ok " : "FAIL ") << check.name << "\n";
    if (!report.all_ok()) return 1;
    std::cout << closing << "\n";
    return 0;
}

int run_check(const SharedOptions& opts, const std::string& which) {
    CliConfig config = make_config(opts);
    const RingPtr& ring = config.ring;
    if (which == "euler") {
        if (ring->signature() != "gauss")
            throw KernelError(ErrorCode::InvalidArgument,
                              "the euler check needs an element with lambda^2 = -1; use --ring "
                              "gauss");
        auto report = euler_suite(ring, Gaussian{BigRat(0), BigRat(1)}, "x", config.order);
        return print_report(report,
                            "all euler identities hold through order " +
                                std::to_string(config.order));
    }
    if (which == "derivlaws") {
        auto report = derivative_laws_suite(ring, 4, config.order);
        return print_report(report, "all derivative laws hold through order " +
                                        std::to_string(config.order));
    }
    if (which == "completion") {
        Polynomial one = Polynomial::constant(ring, ring->one());
        Polynomial x = Polynomial::variable(ring, "x");
        Polynomial y = Polynomial::variable(ring, "y");
        std::vector<PowerSeries> samples = {
            PowerSeries::geometric_minus(ring, "x"),
            PowerSeries::from_polynomial(one.add(x).add(y).pow(2)),
            PowerSeries::from_polynomial(one.add(x)).invert(),
        };
        bool round_trip = true;
        for (const auto& f : samples)
            round_trip &= equal_through_order(reconstruct(tower_of(f)), f, 8);
        std::cout << (round_trip ? "ok" : "FAIL")
                  << " reconstruct(tower_of(f)) = f through order 8 on 3 samples\n";
        bool coherent = true;
        for (const auto& f : samples) tower_of(f)->level(8); // throws if incoherent
        std::cout << "ok tower levels coherent through level 8\n";
        bool remainder = true;
        for (const auto& f : samples)
            for (unsigned long p = 1; p <= 4; ++p) remainder &= check_remainder_ideal(f, p).ok();
        std::cout << (remainder ? "ok" : "FAIL")
                  << " remainder criterion f - f_p in J^p for p = 1..4 on 3 samples\n";
        if (round_trip && coherent && remainder) {
            std::cout << "all completion checks passed\n";
            return 0;
        }
        return 1;
    }
    throw KernelError(ErrorCode::InvalidArgument,
                      "unknown check " + which + " (use euler, derivlaws or completion)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"monoidal: exact monoid-ring, polynomial and power-series kernel"};
    app.require_subcommand(1);

    SharedOptions opts;

    std::string eval_input;
    CLI::App* eval_cmd = app.add_subcommand("eval", "Evaluate an expression");
    eval_cmd->add_option("expr", eval_input, "Expression to evaluate")->required();
    add_shared_options(eval_cmd, opts);

    std::string series_name, series_var = "x", series_coef = "1";
    CLI::App* series_cmd = app.add_subcommand("series", "Print a named series");
    series_cmd->add_option("name", series_name, "geom_plus, geom_minus, sin, cos or exp")
        ->required();
    series_cmd->add_option("--var", series_var, "Series variable")->default_str("x");
    series_cmd->add_option("--coef", series_coef, "Coefficient a for exp")->default_str("1");
    add_shared_options(series_cmd, opts);

    std::string tower_input;
    unsigned long tower_levels = 0;
    CLI::App* tower_cmd = app.add_subcommand("tower", "Print truncation-tower levels");
    tower_cmd->add_option("expr", tower_input, "Expression to evaluate")->required();
    tower_cmd->add_option("--levels", tower_levels, "Number of levels to materialize")
        ->required();
    add_shared_options(tower_cmd, opts);

    std::string check_name;
    CLI::App* check_cmd = app.add_subcommand("check", "Run an identity suite");
    check_cmd->add_option("which", check_name, "euler, derivlaws or completion")->required();
    add_shared_options(check_cmd, opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (eval_cmd->parsed()) return run_eval(opts, eval_input);
        if (series_cmd->parsed()) return run_series(opts, series_name, series_var, series_coef);
        if (tower_cmd->parsed()) return run_tower(opts, tower_input, tower_levels);
        if (check_cmd->parsed()) return run_check(opts, check_name);
    } catch (const KernelError& e) {
        std::cerr << "error: " << error_code_name(e.code()) << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: Internal: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
