#include "monoidal/expr.hpp"

#include <algorithm>
#include <cctype>

#include <nlohmann/json.hpp>

namespace monoidal {

// ---------------------------------------------------------------------------
// Lexer

namespace {

struct Token {
    enum class Kind { Nat, Ident, Plus, Minus, Star, Caret, Slash, LParen, RParen, Comma, End };
    Kind kind;
    std::string text;
    std::size_t pos;
};

const char* token_name(Token::Kind k) {
    switch (k) {
        case Token::Kind::Nat: return "a natural number";
        case Token::Kind::Ident: return "an identifier";
        case Token::Kind::Plus: return "'+'";
        case Token::Kind::Minus: return "'-'";
        case Token::Kind::Star: return "'*'";
        case Token::Kind::Caret: return "'^'";
        case Token::Kind::Slash: return "'/'";
        case Token::Kind::LParen: return "'('";
        case Token::Kind::RParen: return "')'";
        case Token::Kind::Comma: return "','";
        case Token::Kind::End: return "end of input";
    }
    return "?";
}

std::vector<Token> lex(const std::string& input) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < input.size()) {
        char c = input[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < input.size() && std::isdigit(static_cast<unsigned char>(input[i]))) ++i;
            tokens.push_back({Token::Kind::Nat, input.substr(start, i - start), start});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < input.size() && (std::isalnum(static_cast<unsigned char>(input[i])) ||
                                        input[i] == '_'))
                ++i;
            tokens.push_back({Token::Kind::Ident, input.substr(start, i - start), start});
            continue;
        }
        Token::Kind kind;
        switch (c) {
            case '+': kind = Token::Kind::Plus; break;
            case '-': kind = Token::Kind::Minus; break;
            case '*': kind = Token::Kind::Star; break;
            case '^': kind = Token::Kind::Caret; break;
            case '/': kind = Token::Kind::Slash; break;
            case '(': kind = Token::Kind::LParen; break;
            case ')': kind = Token::Kind::RParen; break;
            case ',': kind = Token::Kind::Comma; break;
            default:
                throw SyntaxError(start, "a valid token", "'" + std::string(1, c) + "'");
        }
        tokens.push_back({kind, std::string(1, c), start});
        ++i;
    }
    tokens.push_back({Token::Kind::End, "", input.size()});
    return tokens;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
public:
    explicit Parser(const std::string& input) : tokens_(lex(input)) {}

    ExprPtr parse() {
        ExprPtr e = expression();
        expect(Token::Kind::End, "'+', '-', '*', '^' or end of input");
        return e;
    }

private:
    const Token& peek() const { return tokens_[idx_]; }
    Token take() { return tokens_[idx_++]; }

    [[noreturn]] void fail(const std::string& expected) const {
        const Token& t = peek();
        std::string found =
            t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
        throw SyntaxError(t.pos, expected, found);
    }

    Token expect(Token::Kind kind, const std::string& expected) {
        if (peek().kind != kind) fail(expected);
        return take();
    }

    static ExprPtr node(Expr e) { return std::make_shared<Expr>(std::move(e)); }

    ExprPtr expression() {
        ExprPtr lhs = term();
        while (peek().kind == Token::Kind::Plus || peek().kind == Token::Kind::Minus) {
            Token op = take();
            ExprPtr rhs = term();
            Expr e;
            e.kind = op.kind == Token::Kind::Plus ? Expr::Kind::Add : Expr::Kind::Sub;
            e.pos = op.pos;
            e.args = {lhs, rhs};
            lhs = node(std::move(e));
        }
        return lhs;
    }

    ExprPtr term() {
        ExprPtr lhs = factor();
        while (peek().kind == Token::Kind::Star) {
            Token op = take();
            ExprPtr rhs = factor();
            Expr e;
            e.kind = Expr::Kind::Mul;
            e.pos = op.pos;
            e.args = {lhs, rhs};
            lhs = node(std::move(e));
        }
        return lhs;
    }

    ExprPtr factor() {
        if (peek().kind == Token::Kind::Minus) {
            Token op = take();
            Expr e;
            e.kind = Expr::Kind::Neg;
            e.pos = op.pos;
            e.args = {factor()};
            return node(std::move(e));
        }
        return power();
    }

    ExprPtr power() {
        ExprPtr base = primary();
        while (peek().kind == Token::Kind::Caret) {
            Token op = take();
            BigInt e = natural_exponent();
            Expr p;
            p.kind = Expr::Kind::Pow;
            p.pos = op.pos;
            p.args = {base};
            p.exponent = e;
            base = node(std::move(p));
        }
        return base;
    }

    // exponent := NAT | '(' NAT ')'; anything else (a sign in particular) is
    // rejected: exponents are naturals.
    BigInt natural_exponent() {
        if (peek().kind == Token::Kind::Nat) return BigInt(take().text);
        if (peek().kind == Token::Kind::LParen) {
            take();
            if (peek().kind != Token::Kind::Nat) fail("a natural number exponent");
            BigInt e(take().text);
            expect(Token::Kind::RParen, "')'");
            return e;
        }
        fail("a natural number exponent");
    }

    unsigned long natural_argument(const char* what) {
        if (peek().kind != Token::Kind::Nat) fail(std::string("a natural number ") + what);
        Token t = take();
        return to_ulong(BigInt(t.text), what);
    }

    ExprPtr primary() {
        const Token& t = peek();
        switch (t.kind) {
            case Token::Kind::Nat: {
                Token num = take();
                Expr e;
                e.pos = num.pos;
                if (peek().kind == Token::Kind::Slash) {
                    take();
                    Token den = expect(Token::Kind::Nat, "a natural number denominator");
                    e.kind = Expr::Kind::Rational;
                    e.number = make_rational(BigInt(num.text), BigInt(den.text));
                } else {
                    e.kind = Expr::Kind::Natural;
                    e.number = BigRat(BigInt(num.text));
                }
                return node(std::move(e));
            }
            case Token::Kind::Ident: {
                Token ident = take();
                if (peek().kind == Token::Kind::LParen) return call(ident);
                Expr e;
                e.kind = Expr::Kind::Variable;
                e.pos = ident.pos;
                e.name = ident.text;
                return node(std::move(e));
            }
            case Token::Kind::LParen: {
                take();
                ExprPtr e = expression();
                expect(Token::Kind::RParen, "')'");
                return e;
            }
            default:
                fail("a number, a variable, a function call or '('");
        }
    }

    ExprPtr call(const Token& ident) {
        static const std::vector<std::string> series_fns = {"exp",       "sin",       "cos",
                                                            "geom",      "geom_plus", "geom_minus"};
        expect(Token::Kind::LParen, "'('");
        Expr e;
        e.kind = Expr::Kind::Call;
        e.pos = ident.pos;
        e.name = ident.text;
        if (std::find(series_fns.begin(), series_fns.end(), ident.text) != series_fns.end() ||
            ident.text == "invert") {
            e.args = {expression()};
        } else if (ident.text == "deriv") {
            e.args = {expression()};
            expect(Token::Kind::Comma, "','");
            Token var = expect(Token::Kind::Ident, "a variable name");
            e.var = var.text;
            expect(Token::Kind::Comma, "','");
            e.order = natural_argument("derivative order");
        } else if (ident.text == "truncate") {
            e.args = {expression()};
            expect(Token::Kind::Comma, "','");
            e.order = natural_argument("truncation order");
        } else {
            throw SyntaxError(ident.pos,
                              "a function name (exp, sin, cos, geom, geom_plus, geom_minus, "
                              "deriv, invert, truncate)",
                              "'" + ident.text + "'");
        }
        expect(Token::Kind::RParen, "')'");
        return node(std::move(e));
    }

    std::vector<Token> tokens_;
    std::size_t idx_ = 0;
};

} // namespace

ExprPtr parse_expression(const std::string& input) { return Parser(input).parse(); }

// ---------------------------------------------------------------------------
// Evaluation

namespace {

Value literal_to_ring(const RingPtr& ring, const BigRat& q, std::size_t pos) {
    std::string sig = ring->signature();
    if (sig == "rat") return q;
    if (sig == "gauss") return Gaussian{q, BigRat(0)};
    if (q.get_den() == 1) return ring->from_integer(BigInt(q.get_num()));
    throw KernelError(ErrorCode::InvalidArgument,
                      "ring " + sig + " has no element " + q.get_num().get_str() + "/" +
                          q.get_den().get_str() + " (literal at position " +
                          std::to_string(pos) + ")");
}

bool is_imaginary_unit(const CliConfig& config, const std::string& name) {
    return name == "i" && config.ring->signature() == "gauss";
}

Polynomial variable_polynomial(const CliConfig& config, const Expr& e) {
    if (is_imaginary_unit(config, e.name))
        return Polynomial::constant(config.ring, Gaussian{BigRat(0), BigRat(1)});
    if (config.strict_vars &&
        std::find(config.declared_vars.begin(), config.declared_vars.end(), e.name) ==
            config.declared_vars.end())
        throw KernelError(ErrorCode::UnknownVariable,
                          "undeclared variable " + e.name + " (strict mode)");
    return Polynomial::variable(config.ring, e.name);
}

/// Argument shape c*v accepted by exp: one term, one variable, exponent 1.
std::pair<Value, std::string> linear_monomial(const EvalValue& arg, const std::string& fn) {
    const Polynomial* poly = std::get_if<Polynomial>(&arg);
    if (poly && poly->support_size() == 1) {
        auto [m, c] = poly->leading_term_min();
        auto entries = decompose_exponent(m);
        if (entries.size() == 1 && entries[0].second == 1)
            return {c, entries[0].first};
    }
    throw KernelError(ErrorCode::InvalidArgument,
                      fn + " expects a variable or constant*variable argument");
}

std::string plain_variable(const CliConfig& config, const EvalValue& arg, const std::string& fn) {
    auto [c, var] = linear_monomial(arg, fn);
    if (!config.ring->is_one(c))
        throw KernelError(ErrorCode::InvalidArgument, fn + " expects a plain variable argument");
    return var;
}

EvalValue eval(const CliConfig& config, const ExprPtr& expr);

EvalValue binary(const CliConfig& config, const Expr& e) {
    EvalValue lhs = eval(config, e.args[0]);
    EvalValue rhs = eval(config, e.args[1]);
    const Polynomial* lp = std::get_if<Polynomial>(&lhs);
    const Polynomial* rp = std::get_if<Polynomial>(&rhs);
    if (lp && rp) {
        switch (e.kind) {
            case Expr::Kind::Add: return lp->add(*rp);
            case Expr::Kind::Sub: return lp->sub(*rp);
            default: return lp->mul(*rp);
        }
    }
    PowerSeries ls = as_series(lhs);
    PowerSeries rs = as_series(rhs);
    switch (e.kind) {
        case Expr::Kind::Add: return ls.add(rs);
        case Expr::Kind::Sub: return ls.sub(rs);
        default: return ls.mul(rs);
    }
}

EvalValue eval(const CliConfig& config, const ExprPtr& expr) {
    const Expr& e = *expr;
    switch (e.kind) {
        case Expr::Kind::Natural:
        case Expr::Kind::Rational:
            return Polynomial::constant(config.ring, literal_to_ring(config.ring, e.number, e.pos));
        case Expr::Kind::Variable:
            return variable_polynomial(config, e);
        case Expr::Kind::Neg: {
            EvalValue v = eval(config, e.args[0]);
            if (const Polynomial* p = std::get_if<Polynomial>(&v)) return p->neg();
            return std::get<PowerSeries>(v).neg();
        }
        case Expr::Kind::Add:
        case Expr::Kind::Sub:
        case Expr::Kind::Mul:
            return binary(config, e);
        case Expr::Kind::Pow: {
            EvalValue v = eval(config, e.args[0]);
            if (const Polynomial* p = std::get_if<Polynomial>(&v)) return p->pow(e.exponent);
            return std::get<PowerSeries>(v).pow(e.exponent);
        }
        case Expr::Kind::Call: break;
    }

    if (e.name == "invert") return as_series(eval(config, e.args[0])).invert();
    if (e.name == "deriv") {
        EvalValue v = eval(config, e.args[0]);
        // Derivatives of polynomials stay polynomials.
        if (const Polynomial* p = std::get_if<Polynomial>(&v))
            return p->derivative(e.var, e.order);
        return std::get<PowerSeries>(v).derivative(e.var, e.order);
    }
    if (e.name == "truncate") {
        if (e.order == 0)
            throw KernelError(ErrorCode::InvalidArgument, "truncation order must be >= 1");
        return truncate(as_series(eval(config, e.args[0])), e.order);
    }

    EvalValue arg = eval(config, e.args[0]);
    if (e.name == "exp") {
        auto [c, var] = linear_monomial(arg, "exp");
        return PowerSeries::exponential(config.ring, c, var);
    }
    if (e.name == "sin") return PowerSeries::sine(config.ring, plain_variable(config, arg, "sin"));
    if (e.name == "cos")
        return PowerSeries::cosine(config.ring, plain_variable(config, arg, "cos"));
    if (e.name == "geom" || e.name == "geom_minus")
        return PowerSeries::geometric_minus(config.ring, plain_variable(config, arg, e.name));
    if (e.name == "geom_plus")
        return PowerSeries::geometric_plus(config.ring, plain_variable(config, arg, e.name));
    throw KernelError(ErrorCode::InvalidArgument, "unknown function " + e.name);
}

} // namespace

EvalValue evaluate_expression(const CliConfig& config, const ExprPtr& expr) {
    return eval(config, expr);
}

PowerSeries as_series(const EvalValue& v) {
    if (const Polynomial* p = std::get_if<Polynomial>(&v)) return PowerSeries::from_polynomial(*p);
    return std::get<PowerSeries>(v);
}

std::string render_text(const CliConfig& config, const EvalValue& v) {
    if (const Polynomial* p = std::get_if<Polynomial>(&v)) return p->to_text();
    return render_truncated(std::get<PowerSeries>(v), config.order);
}

nlohmann::json render_json(const CliConfig& config, const EvalValue& v) {
    if (const Polynomial* p = std::get_if<Polynomial>(&v)) return p->to_json();
    const PowerSeries& f = std::get<PowerSeries>(v);
    nlohmann::json terms = truncate(f, config.order).to_json().at("terms");
    return nlohmann::json{{"vars", f.variables()}, {"order", config.order}, {"terms", terms}};
}

RingPtr ring_from_selector(const std::string& selector) {
    if (selector == "int") return integer_ring();
    if (selector == "rat") return rational_ring();
    if (selector == "gauss") return gaussian_ring();
    if (selector.rfind("mod:", 0) == 0) {
        unsigned long n = 0;
        try {
            n = std::stoul(selector.substr(4));
        } catch (const std::exception&) {
            throw KernelError(ErrorCode::InvalidArgument, "bad modulus in " + selector);
        }
        if (n < 2)
            throw KernelError(ErrorCode::InvalidArgument, "modulus must be >= 2 in " + selector);
        return modular_ring(n);
    }
    throw KernelError(ErrorCode::InvalidArgument,
                      "unknown ring " + selector + " (use int, rat, gauss or mod:n)");
}

} // namespace monoidal
