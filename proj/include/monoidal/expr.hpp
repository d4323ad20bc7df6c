#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "monoidal/adic.hpp"
#include "monoidal/power_series.hpp"

namespace monoidal {

/// Expression AST. Precedence (tightest first): ^, unary -, *, binary +/-;
/// +, - and * associate left. Exponents are natural-number literals.
struct Expr {
    enum class Kind { Natural, Rational, Variable, Neg, Add, Sub, Mul, Pow, Call };

    Kind kind;
    std::size_t pos = 0;           // byte offset in the source, for diagnostics
    BigRat number;                 // Natural, Rational
    std::string name;              // Variable name or Call function name
    std::vector<std::shared_ptr<const Expr>> args;
    BigInt exponent;               // Pow
    unsigned long order = 0;       // deriv order, truncate bound
    std::string var;               // deriv variable
};

using ExprPtr = std::shared_ptr<const Expr>;

/// Recursive-descent parse of the expression grammar; throws SyntaxError with
/// the exact byte position and expected-token set.
ExprPtr parse_expression(const std::string& input);

struct CliConfig {
    RingPtr ring;
    unsigned long order = 10;
    std::vector<std::string> declared_vars;
    bool strict_vars = false;
};

/// A kernel result: exact polynomial or lazy series. Which one an expression
/// produces depends only on the operators involved (named series, invert and
/// derivatives of series stay lazy; truncate returns to polynomials).
using EvalValue = std::variant<Polynomial, PowerSeries>;

EvalValue evaluate_expression(const CliConfig& config, const ExprPtr& expr);

PowerSeries as_series(const EvalValue& v);

/// Canonical text: exact polynomial grammar, or the truncated series form
/// with its order marker at config.order.
std::string render_text(const CliConfig& config, const EvalValue& v);
nlohmann::json render_json(const CliConfig& config, const EvalValue& v);

/// Ring selector used by the CLI: "int", "rat", "gauss" or "mod:n" (n >= 2).
RingPtr ring_from_selector(const std::string& selector);

} // namespace monoidal
