#include "monoidal/power_series.hpp"

#include <algorithm>
#include <set>

#include "monoidal/format.hpp"

namespace monoidal {

namespace {

std::string exp_key(const ExponentVector& m) {
    std::string key;
    for (const auto& [var, exp] : m.entries())
        key += std::to_string(var.size()) + ":" + var + "^" + exp.get_str() + ";";
    return key;
}

std::vector<std::string> merge_vars(const std::vector<std::string>& a,
                                    const std::vector<std::string>& b) {
    std::set<std::string> u(a.begin(), a.end());
    u.insert(b.begin(), b.end());
    return {u.begin(), u.end()};
}

bool vars_contain(const std::vector<std::string>& vars, const ExponentVector& m) {
    for (const auto& [var, exp] : m.entries())
        if (!std::binary_search(vars.begin(), vars.end(), var)) return false;
    return true;
}

/// Coefficient of a child series, treating exponents outside its variable
/// list as zero coefficients (the child simply does not involve those vars).
Value child_coeff(const SeriesNodePtr& child, const ExponentVector& m) {
    if (!vars_contain(child->variables(), m)) return child->ring()->zero();
    return child->coefficient(m);
}

} // namespace

// ---------------------------------------------------------------------------
// SeriesNode

SeriesNode::SeriesNode(RingPtr ring, std::vector<std::string> vars)
    : ring_(std::move(ring)), vars_(std::move(vars)) {
    std::sort(vars_.begin(), vars_.end());
    vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
}

Value SeriesNode::coefficient(const ExponentVector& m) const {
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    std::string key = exp_key(m);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Value v = compute(m);
    memo_.emplace(std::move(key), v);
    return v;
}

void SeriesNode::clear_memo_recursive() const {
    {
        std::lock_guard<std::recursive_mutex> lock(mutex_);
        memo_.clear();
    }
    for (const auto& child : children()) child->clear_memo_recursive();
}

// ---------------------------------------------------------------------------
// Concrete nodes

namespace {

class TermsNode final : public SeriesNode {
public:
    TermsNode(RingPtr ring, std::vector<std::string> vars,
              std::map<std::string, Value> coeffs)
        : SeriesNode(std::move(ring), std::move(vars)), coeffs_(std::move(coeffs)) {}

protected:
    Value compute(const ExponentVector& m) const override {
        auto it = coeffs_.find(exp_key(m));
        return it == coeffs_.end() ? ring()->zero() : it->second;
    }

private:
    std::map<std::string, Value> coeffs_;
};

class OracleNode final : public SeriesNode {
public:
    OracleNode(RingPtr ring, std::vector<std::string> vars,
               std::function<Value(const ExponentVector&)> oracle)
        : SeriesNode(std::move(ring), std::move(vars)), oracle_(std::move(oracle)) {}

protected:
    Value compute(const ExponentVector& m) const override { return oracle_(m); }

private:
    std::function<Value(const ExponentVector&)> oracle_;
};

class AddNode final : public SeriesNode {
public:
    AddNode(SeriesNodePtr a, SeriesNodePtr b)
        : SeriesNode(a->ring(), merge_vars(a->variables(), b->variables())),
          a_(std::move(a)), b_(std::move(b)) {}

protected:
    Value compute(const ExponentVector& m) const override {
        return ring()->add(child_coeff(a_, m), child_coeff(b_, m));
    }
    std::vector<SeriesNodePtr> children() const override { return {a_, b_}; }

private:
    SeriesNodePtr a_, b_;
};

class NegNode final : public SeriesNode {
public:
    explicit NegNode(SeriesNodePtr a) : SeriesNode(a->ring(), a->variables()), a_(std::move(a)) {}

protected:
    Value compute(const ExponentVector& m) const override {
        return ring()->neg(a_->coefficient(m));
    }
    std::vector<SeriesNodePtr> children() const override { return {a_}; }

private:
    SeriesNodePtr a_;
};

class ScaleNode final : public SeriesNode {
public:
    ScaleNode(Value a, SeriesNodePtr f)
        : SeriesNode(f->ring(), f->variables()), a_(std::move(a)), f_(std::move(f)) {}

protected:
    Value compute(const ExponentVector& m) const override {
        return ring()->mul(a_, f_->coefficient(m));
    }
    std::vector<SeriesNodePtr> children() const override { return {f_}; }

private:
    Value a_;
    SeriesNodePtr f_;
};

class MulNode final : public SeriesNode {
public:
    MulNode(SeriesNodePtr a, SeriesNodePtr b)
        : SeriesNode(a->ring(), merge_vars(a->variables(), b->variables())),
          a_(std::move(a)), b_(std::move(b)) {}

protected:
    Value compute(const ExponentVector& u) const override {
        // (f.g)(u) = sum over the finite box 0 <= v <= u of f(v) g(u-v).
        Value acc = ring()->zero();
        for (const auto& v : exponents_in_box(u)) {
            Value fv = child_coeff(a_, v);
            if (ring()->is_zero(fv)) continue;
            acc = ring()->add(acc, ring()->mul(fv, child_coeff(b_, *u.minus(v))));
        }
        return acc;
    }
    std::vector<SeriesNodePtr> children() const override { return {a_, b_}; }

private:
    SeriesNodePtr a_, b_;
};

class DeriveNode final : public SeriesNode {
public:
    DeriveNode(SeriesNodePtr f, std::string var, unsigned long order)
        : SeriesNode(f->ring(), f->variables()), f_(std::move(f)), var_(std::move(var)),
          order_(order) {}

protected:
    Value compute(const ExponentVector& m) const override {
        BigInt mult = falling_ratio(m.at(var_), order_);
        Value shifted =
            f_->coefficient(m.plus(ExponentVector::unit(var_, BigInt((unsigned long)order_))));
        return ring()->mul(ring()->from_integer(mult), shifted);
    }
    std::vector<SeriesNodePtr> children() const override { return {f_}; }

private:
    SeriesNodePtr f_;
    std::string var_;
    unsigned long order_;
};

class InvertNode final : public SeriesNode {
public:
    InvertNode(SeriesNodePtr f, Value c0_inverse)
        : SeriesNode(f->ring(), f->variables()), f_(std::move(f)),
          c0_inv_(std::move(c0_inverse)) {}

protected:
    Value compute(const ExponentVector& u) const override {
        if (u.empty()) return c0_inv_;
        // g(u) = -f(0)^-1 * sum_{0 < v <= u} f(v) g(u-v); g queries itself at
        // strictly smaller exponents, served by the memo.
        Value acc = ring()->zero();
        for (const auto& v : exponents_in_box(u)) {
            if (v.empty()) continue;
            Value fv = f_->coefficient(v);
            if (ring()->is_zero(fv)) continue;
            acc = ring()->add(acc, ring()->mul(fv, coefficient(*u.minus(v))));
        }
        return ring()->neg(ring()->mul(c0_inv_, acc));
    }
    std::vector<SeriesNodePtr> children() const override { return {f_}; }

private:
    SeriesNodePtr f_;
    Value c0_inv_;
};

// Named univariate series: closed-form coefficient oracles from the exponent
// of the single variable.
class UnivariateNode final : public SeriesNode {
public:
    UnivariateNode(RingPtr ring, const std::string& var,
                   std::function<Value(unsigned long)> coeff_of_degree)
        : SeriesNode(std::move(ring), {var}), var_(var), fn_(std::move(coeff_of_degree)) {}

protected:
    Value compute(const ExponentVector& m) const override {
        return fn_(to_ulong(m.at(var_), "series degree"));
    }

private:
    std::string var_;
    std::function<Value(unsigned long)> fn_;
};

void require_characteristic_zero(const RingPtr& ring, const char* what) {
    if (ring->characteristic() != 0)
        throw KernelError(ErrorCode::CharacteristicNotZero,
                          std::string(what) + " requires a coefficient ring of characteristic "
                                              "zero (ring " +
                              ring->signature() + " has characteristic " +
                              ring->characteristic().get_str() + ")");
}

Value inverse_factorial(const RingPtr& ring, unsigned long n) {
    return invert_or_throw(*ring, ring->from_integer(factorial(n)));
}

} // namespace

// ---------------------------------------------------------------------------
// PowerSeries

PowerSeries::PowerSeries(SeriesNodePtr node) : node_(std::move(node)) {}

const RingPtr& PowerSeries::ring() const { return node_->ring(); }
const std::vector<std::string>& PowerSeries::variables() const { return node_->variables(); }

PowerSeries PowerSeries::zero(RingPtr ring, std::vector<std::string> vars) {
    return PowerSeries(std::make_shared<TermsNode>(std::move(ring), std::move(vars),
                                                   std::map<std::string, Value>{}));
}

PowerSeries PowerSeries::constant(RingPtr ring, const Value& a) {
    std::map<std::string, Value> coeffs;
    if (!ring->is_zero(a)) coeffs.emplace(exp_key(ExponentVector{}), a);
    return PowerSeries(
        std::make_shared<TermsNode>(std::move(ring), std::vector<std::string>{}, std::move(coeffs)));
}

PowerSeries PowerSeries::from_polynomial(const Polynomial& p) {
    std::map<std::string, Value> coeffs;
    for (const auto& [key, term] : p.element().terms())
        coeffs.emplace(exp_key(term.elem.as<ExponentVector>()), term.coef);
    return PowerSeries(std::make_shared<TermsNode>(p.ring(), p.variables(), std::move(coeffs)));
}

PowerSeries PowerSeries::from_oracle(RingPtr ring, std::vector<std::string> vars,
                                     std::function<Value(const ExponentVector&)> oracle) {
    return PowerSeries(
        std::make_shared<OracleNode>(std::move(ring), std::move(vars), std::move(oracle)));
}

PowerSeries PowerSeries::geometric_plus(RingPtr ring, const std::string& var) {
    RingPtr r = ring;
    return PowerSeries(std::make_shared<UnivariateNode>(ring, var, [r](unsigned long n) {
        return r->from_integer(n % 2 == 0 ? 1 : -1);
    }));
}

PowerSeries PowerSeries::geometric_minus(RingPtr ring, const std::string& var) {
    RingPtr r = ring;
    return PowerSeries(std::make_shared<UnivariateNode>(
        ring, var, [r](unsigned long) { return r->one(); }));
}

PowerSeries PowerSeries::exponential(RingPtr ring, const Value& a, const std::string& var) {
    require_characteristic_zero(ring, "the formal exponential");
    RingPtr r = ring;
    Value base = a;
    return PowerSeries(std::make_shared<UnivariateNode>(ring, var, [r, base](unsigned long n) {
        Value num = r->pow(base, BigInt(n));
        if (r->is_zero(num)) return num;
        return r->mul(num, inverse_factorial(r, n));
    }));
}

PowerSeries PowerSeries::sine(RingPtr ring, const std::string& var) {
    require_characteristic_zero(ring, "the formal sinus");
    RingPtr r = ring;
    return PowerSeries(std::make_shared<UnivariateNode>(ring, var, [r](unsigned long n) {
        if (n % 2 == 0) return r->zero();
        unsigned long s = (n - 1) / 2;
        Value sign = r->from_integer(s % 2 == 0 ? 1 : -1);
        return r->mul(sign, inverse_factorial(r, n));
    }));
}

PowerSeries PowerSeries::cosine(RingPtr ring, const std::string& var) {
    require_characteristic_zero(ring, "the formal co-sinus");
    RingPtr r = ring;
    return PowerSeries(std::make_shared<UnivariateNode>(ring, var, [r](unsigned long n) {
        if (n % 2 != 0) return r->zero();
        unsigned long s = n / 2;
        Value sign = r->from_integer(s % 2 == 0 ? 1 : -1);
        return r->mul(sign, inverse_factorial(r, n));
    }));
}

Value PowerSeries::coefficient(const ExponentVector& m) const {
    if (!vars_contain(variables(), m)) {
        std::string unknown;
        for (const auto& [var, exp] : m.entries())
            if (!std::binary_search(variables().begin(), variables().end(), var)) unknown = var;
        throw KernelError(ErrorCode::UnknownVariable,
                          "series does not involve variable " + unknown);
    }
    return node_->coefficient(m);
}

namespace {
void check_same_ring(const PowerSeries& a, const PowerSeries& b) {
    if (!a.ring()->same(*b.ring()))
        throw KernelError(ErrorCode::StructureMismatch,
                          "series coefficient rings differ: " + a.ring()->signature() + " vs " +
                              b.ring()->signature());
}
} // namespace

PowerSeries PowerSeries::add(const PowerSeries& o) const {
    check_same_ring(*this, o);
    return PowerSeries(std::make_shared<AddNode>(node_, o.node_));
}

PowerSeries PowerSeries::sub(const PowerSeries& o) const { return add(o.neg()); }

PowerSeries PowerSeries::neg() const { return PowerSeries(std::make_shared<NegNode>(node_)); }

PowerSeries PowerSeries::mul(const PowerSeries& o) const {
    check_same_ring(*this, o);
    return PowerSeries(std::make_shared<MulNode>(node_, o.node_));
}

PowerSeries PowerSeries::scale(const Value& a) const {
    return PowerSeries(std::make_shared<ScaleNode>(a, node_));
}

PowerSeries PowerSeries::pow(const BigInt& n) const {
    if (n < 0) throw KernelError(ErrorCode::InvalidArgument, "negative power");
    PowerSeries result = constant(ring(), ring()->one());
    PowerSeries base = *this;
    BigInt e = n;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) result = result.mul(base);
        e >>= 1;
        if (e > 0) base = base.mul(base);
    }
    return result;
}

PowerSeries PowerSeries::derivative(const std::string& var, unsigned long p) const {
    if (p == 0) return *this;
    if (!std::binary_search(variables().begin(), variables().end(), var))
        return zero(ring(), variables());
    return PowerSeries(std::make_shared<DeriveNode>(node_, var, p));
}

PowerSeries PowerSeries::invert() const {
    Value c0 = constant_term();
    auto inv = ring()->try_invert(c0);
    if (!inv)
        throw KernelError(ErrorCode::NonUnitConstantTerm,
                          "constant term " + ring()->to_text(c0) + " is not a unit of " +
                              ring()->signature());
    return PowerSeries(std::make_shared<InvertNode>(node_, *inv));
}

// ---------------------------------------------------------------------------
// Truncation-order helpers

bool equal_through_order(const PowerSeries& a, const PowerSeries& b, unsigned long order) {
    check_same_ring(a, b);
    const RingDescriptor& r = *a.ring();
    std::vector<std::string> vars = merge_vars(a.variables(), b.variables());
    for (const auto& m : exponents_below_degree(vars, order)) {
        Value ca = vars_contain(a.variables(), m) ? a.coefficient(m) : r.zero();
        Value cb = vars_contain(b.variables(), m) ? b.coefficient(m) : r.zero();
        if (!r.equal(ca, cb)) return false;
    }
    return true;
}

std::vector<std::pair<ExponentVector, Value>> truncated_terms(const PowerSeries& f,
                                                              unsigned long order) {
    std::vector<std::pair<ExponentVector, Value>> terms;
    for (const auto& m : exponents_below_degree(f.variables(), order)) {
        Value c = f.coefficient(m);
        if (!f.ring()->is_zero(c)) terms.emplace_back(m, c);
    }
    return terms; // enumeration is already in graded print order
}

std::string render_truncated(const PowerSeries& f, unsigned long order) {
    std::vector<std::pair<std::string, Value>> parts;
    for (const auto& [m, c] : truncated_terms(f, order))
        parts.emplace_back(m.empty() ? "" : exponent_to_text(m), c);
    std::string text = format_term_sequence(*f.ring(), parts);
    std::string marker = f.variables().size() == 1
                             ? "O(" + f.variables()[0] + "^" + std::to_string(order) + ")"
                             : "O(deg " + std::to_string(order) + ")";
    return text + " + " + marker;
}

// ---------------------------------------------------------------------------
// Nested series and currying

struct NestedSeries::State {
    RingPtr ring;
    std::vector<std::string> inner_vars;
    std::vector<std::string> outer_vars;
    std::function<PowerSeries(const ExponentVector&)> fetch;
    mutable std::mutex mutex;
    mutable std::map<std::string, PowerSeries> memo;
};

NestedSeries::NestedSeries(std::shared_ptr<const State> state) : state_(std::move(state)) {}

const RingPtr& NestedSeries::ring() const { return state_->ring; }
const std::vector<std::string>& NestedSeries::inner_variables() const {
    return state_->inner_vars;
}
const std::vector<std::string>& NestedSeries::outer_variables() const {
    return state_->outer_vars;
}

PowerSeries NestedSeries::outer_coefficient(const ExponentVector& t) const {
    if (!vars_contain(state_->outer_vars, t))
        throw KernelError(ErrorCode::UnknownVariable,
                          "outer exponent mentions a non-outer variable");
    std::lock_guard<std::mutex> lock(state_->mutex);
    std::string key = exp_key(t);
    auto it = state_->memo.find(key);
    if (it != state_->memo.end()) return it->second;
    PowerSeries s = state_->fetch(t);
    state_->memo.emplace(std::move(key), s);
    return s;
}

NestedSeries NestedSeries::curry(const PowerSeries& flat, std::vector<std::string> inner_vars,
                                 std::vector<std::string> outer_vars) {
    std::sort(inner_vars.begin(), inner_vars.end());
    std::sort(outer_vars.begin(), outer_vars.end());
    for (const auto& v : inner_vars)
        if (std::binary_search(outer_vars.begin(), outer_vars.end(), v))
            throw KernelError(ErrorCode::OverlappingVariables,
                              "variable " + v + " appears in both groups");
    std::vector<std::string> joint = merge_vars(inner_vars, outer_vars);
    for (const auto& v : flat.variables())
        if (!std::binary_search(joint.begin(), joint.end(), v))
            throw KernelError(ErrorCode::OverlappingVariables,
                              "variable " + v + " of the series is in neither group");

    auto state = std::make_shared<State>();
    state->ring = flat.ring();
    state->inner_vars = inner_vars;
    state->outer_vars = outer_vars;
    PowerSeries captured = flat;
    std::vector<std::string> inner = inner_vars;
    state->fetch = [captured, inner](const ExponentVector& t) {
        // Section of the flat series at fixed outer exponent t.
        auto node = captured.node();
        return PowerSeries::from_oracle(captured.ring(), inner,
                                        [node, t](const ExponentVector& s) {
                                            return child_coeff(node, s.plus(t));
                                        });
    };
    return NestedSeries(std::move(state));
}

namespace {
void check_same_shape(const NestedSeries& a, const NestedSeries& b) {
    if (!a.ring()->same(*b.ring()) || a.inner_variables() != b.inner_variables() ||
        a.outer_variables() != b.outer_variables())
        throw KernelError(ErrorCode::StructureMismatch,
                          "nested series have different variable groups or rings");
}
} // namespace

NestedSeries NestedSeries::add(const NestedSeries& o) const {
    check_same_shape(*this, o);
    auto state = std::make_shared<State>();
    state->ring = ring();
    state->inner_vars = inner_variables();
    state->outer_vars = outer_variables();
    NestedSeries lhs = *this, rhs = o;
    state->fetch = [lhs, rhs](const ExponentVector& t) {
        return lhs.outer_coefficient(t).add(rhs.outer_coefficient(t));
    };
    return NestedSeries(std::move(state));
}

NestedSeries NestedSeries::mul(const NestedSeries& o) const {
    check_same_shape(*this, o);
    auto state = std::make_shared<State>();
    state->ring = ring();
    state->inner_vars = inner_variables();
    state->outer_vars = outer_variables();
    NestedSeries lhs = *this, rhs = o;
    RingPtr r = ring();
    std::vector<std::string> inner = inner_variables();
    state->fetch = [lhs, rhs, r, inner](const ExponentVector& t) {
        // Outer convolution; each term is a lazy product of inner series.
        PowerSeries acc = PowerSeries::zero(r, inner);
        for (const auto& s : exponents_in_box(t))
            acc = acc.add(lhs.outer_coefficient(s).mul(rhs.outer_coefficient(*t.minus(s))));
        return acc;
    };
    return NestedSeries(std::move(state));
}

NestedSeries series_curry(const PowerSeries& flat, const std::vector<std::string>& inner_vars,
                          const std::vector<std::string>& outer_vars) {
    return NestedSeries::curry(flat, inner_vars, outer_vars);
}

PowerSeries series_uncurry(const NestedSeries& nested) {
    std::vector<std::string> all = merge_vars(nested.inner_variables(), nested.outer_variables());
    NestedSeries captured = nested;
    std::set<std::string> outer_set(nested.outer_variables().begin(),
                                    nested.outer_variables().end());
    return PowerSeries::from_oracle(nested.ring(), all,
                                    [captured, outer_set](const ExponentVector& m) {
                                        ExponentVector t = m.restricted_to(outer_set);
                                        ExponentVector s = *m.minus(t);
                                        return captured.outer_coefficient(t).coefficient(s);
                                    });
}

// ---------------------------------------------------------------------------
// Identity suites

SeriesIdentityReport euler_suite(RingPtr ring, const Value& lambda, const std::string& var,
                                 unsigned long order) {
    if (!ring->equal(ring->mul(lambda, lambda), ring->neg(ring->one())))
        throw KernelError(ErrorCode::InvalidArgument, "lambda^2 != -1 in " + ring->signature());

    SeriesIdentityReport report;
    auto record = [&report](const std::string& name, bool ok) {
        report.checks.push_back({name, ok, ok ? "exact" : "coefficient mismatch"});
    };

    PowerSeries sin = PowerSeries::sine(ring, var);
    PowerSeries cos = PowerSeries::cosine(ring, var);
    PowerSeries exp_pos = PowerSeries::exponential(ring, lambda, var);
    PowerSeries exp_neg = PowerSeries::exponential(ring, ring->neg(lambda), var);
    PowerSeries one = PowerSeries::constant(ring, ring->one());

    record("lambda*sin + cos = exp(lambda)",
           equal_through_order(sin.scale(lambda).add(cos), exp_pos, order));

    Value inv_2lambda =
        invert_or_throw(*ring, ring->mul(ring->from_integer(2), lambda));
    record("sin = (exp(lambda) - exp(-lambda))/(2*lambda)",
           equal_through_order(sin, exp_pos.sub(exp_neg).scale(inv_2lambda), order));

    Value inv_2 = invert_or_throw(*ring, ring->from_integer(2));
    record("cos = (exp(lambda) + exp(-lambda))/2",
           equal_through_order(cos, exp_pos.add(exp_neg).scale(inv_2), order));

    record("sin^2 + cos^2 = 1",
           equal_through_order(sin.mul(sin).add(cos.mul(cos)), one, order));
    return report;
}

SeriesIdentityReport derivative_laws_suite(RingPtr ring, unsigned long max_p,
                                           unsigned long order) {
    SeriesIdentityReport report;
    auto record = [&report](const std::string& name, bool ok) {
        report.checks.push_back({name, ok, ok ? "exact" : "coefficient mismatch"});
    };

    // Samples valid over any coefficient ring.
    Polynomial x = Polynomial::variable(ring, "x");
    Polynomial y = Polynomial::variable(ring, "y");
    Polynomial one_p = Polynomial::constant(ring, ring->one());
    std::vector<PowerSeries> samples = {
        PowerSeries::from_polynomial(one_p.add(x)),
        PowerSeries::from_polynomial(one_p.add(x).add(y.mul(y))),
        PowerSeries::geometric_minus(ring, "x"),
        PowerSeries::geometric_plus(ring, "x").mul(PowerSeries::geometric_minus(ring, "y")),
    };

    // (i) p-fold composition.
    bool ok_i = true;
    for (const auto& f : samples)
        for (unsigned long p = 1; p <= max_p; ++p)
            ok_i &= equal_through_order(f.derivative("x", p),
                                        f.derivative("x", p - 1).derivative("x", 1), order);
    record("(i) d^p = d^(p-1) o d", ok_i);

    // (ii) additivity and the Leibniz rule.
    bool ok_add = true, ok_leibniz = true;
    for (std::size_t i = 0; i < samples.size(); ++i)
        for (std::size_t j = 0; j < samples.size(); ++j) {
            const PowerSeries& f = samples[i];
            const PowerSeries& g = samples[j];
            for (unsigned long p = 1; p <= max_p; ++p) {
                ok_add &= equal_through_order(f.add(g).derivative("x", p),
                                              f.derivative("x", p).add(g.derivative("x", p)),
                                              order);
                PowerSeries sum = PowerSeries::zero(ring);
                for (unsigned long s = 0; s <= p; ++s)
                    sum = sum.add(f.derivative("x", p - s)
                                      .mul(g.derivative("x", s))
                                      .scale(ring->from_integer(binomial(p, s))));
                ok_leibniz &= equal_through_order(f.mul(g).derivative("x", p), sum, order);
            }
        }
    record("(ii) additivity", ok_add);
    record("(ii) Leibniz rule", ok_leibniz);

    // (iii) partials of variables and commuting mixed partials.
    PowerSeries xs = PowerSeries::from_polynomial(x);
    PowerSeries ys = PowerSeries::from_polynomial(y);
    bool ok_delta = equal_through_order(xs.derivative("x", 1),
                                        PowerSeries::constant(ring, ring->one()), order) &&
                    equal_through_order(xs.derivative("y", 1), PowerSeries::zero(ring), order) &&
                    equal_through_order(ys.derivative("x", 1), PowerSeries::zero(ring), order) &&
                    equal_through_order(ys.derivative("y", 1),
                                        PowerSeries::constant(ring, ring->one()), order);
    record("(iii) d_k(x_l) = delta_kl", ok_delta);

    bool ok_mixed = true;
    for (const auto& f : samples)
        for (auto [p, q] : {std::pair<unsigned long, unsigned long>{1, 1}, {2, 1}, {1, 2}})
            ok_mixed &= equal_through_order(f.derivative("x", p).derivative("y", q),
                                            f.derivative("y", q).derivative("x", p), order);
    record("(iii) mixed partials commute", ok_mixed);

    // sin/cos derivative sign pattern, where the ring allows the series.
    if (ring->characteristic() == 0 && ring->try_invert(ring->from_integer(2))) {
        PowerSeries sin = PowerSeries::sine(ring, "x");
        PowerSeries cos = PowerSeries::cosine(ring, "x");
        bool ok_signs = true;
        for (unsigned long p = 1; p <= 8; ++p) {
            int cp = (p % 4 == 0 || p % 4 == 1) ? 1 : -1;
            int cpp = (p % 4 == 0 || p % 4 == 3) ? 1 : -1;
            const PowerSeries& sin_target = p % 2 == 0 ? sin : cos;
            const PowerSeries& cos_target = p % 2 == 0 ? cos : sin;
            ok_signs &= equal_through_order(sin.derivative("x", p),
                                            sin_target.scale(ring->from_integer(cp)), order);
            ok_signs &= equal_through_order(cos.derivative("x", p),
                                            cos_target.scale(ring->from_integer(cpp)), order);
        }
        record("sin/cos derivative sign pattern (p = 1..8)", ok_signs);
    }
    return report;
}

} // namespace monoidal
