#include "monoidal/polynomial.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "monoidal/format.hpp"

namespace monoidal {

Polynomial::Polynomial(MonoidRingElement elem) : elem_(std::move(elem)) {
    if (elem_.monoid()->signature() != "exponent")
        throw KernelError(ErrorCode::StructureMismatch,
                          "polynomials require the exponent monoid");
}

Polynomial Polynomial::zero(RingPtr ring) {
    return Polynomial(MonoidRingElement::zero(std::move(ring), exponent_monoid()));
}

Polynomial Polynomial::constant(RingPtr ring, const Value& a) {
    return Polynomial(MonoidRingElement::eta(std::move(ring), exponent_monoid(), a));
}

Polynomial Polynomial::variable(RingPtr ring, const std::string& name) {
    return Polynomial(MonoidRingElement::delta(std::move(ring), exponent_monoid(),
                                               MonoidValue(ExponentVector::unit(name))));
}

Polynomial Polynomial::monomial(RingPtr ring, const ExponentVector& m) {
    return Polynomial(MonoidRingElement::delta(std::move(ring), exponent_monoid(), MonoidValue(m)));
}

Polynomial Polynomial::from_terms(RingPtr ring,
                                  const std::vector<std::pair<ExponentVector, Value>>& terms) {
    std::vector<std::pair<MonoidValue, Value>> wrapped;
    wrapped.reserve(terms.size());
    for (const auto& [m, c] : terms) wrapped.emplace_back(MonoidValue(m), c);
    return Polynomial(MonoidRingElement::from_terms(std::move(ring), exponent_monoid(), wrapped));
}

Value Polynomial::coefficient_at(const ExponentVector& m) const {
    return elem_.coefficient_at(MonoidValue(m));
}

std::vector<std::string> Polynomial::variables() const {
    std::set<std::string> vars;
    for (const auto& [key, term] : elem_.terms())
        for (const auto& [var, exp] : term.elem.as<ExponentVector>().entries()) vars.insert(var);
    return {vars.begin(), vars.end()};
}

std::vector<std::pair<ExponentVector, Value>> Polynomial::terms_in_print_order() const {
    std::vector<std::pair<ExponentVector, Value>> terms;
    terms.reserve(elem_.support_size());
    for (const auto& [key, term] : elem_.terms())
        terms.emplace_back(term.elem.as<ExponentVector>(), term.coef);
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return graded_print_less(a.first, b.first); });
    return terms;
}

Polynomial Polynomial::pow(const BigInt& n) const {
    if (n < 0) throw KernelError(ErrorCode::InvalidArgument, "negative power");
    Polynomial result = Polynomial::constant(ring(), ring()->one());
    Polynomial base = *this;
    BigInt e = n;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) result = result.mul(base);
        e >>= 1;
        if (e > 0) base = base.mul(base);
    }
    return result;
}

std::pair<ExponentVector, Value> Polynomial::leading_term_min() const {
    if (is_zero())
        throw KernelError(ErrorCode::ZeroPolynomial, "zero polynomial has no leading term");
    auto terms = terms_in_print_order();
    return terms.front();
}

BigInt Polynomial::max_total_degree() const {
    BigInt best = -1;
    for (const auto& [key, term] : elem_.terms())
        best = std::max(best, term.elem.as<ExponentVector>().total_degree());
    return best;
}

Polynomial Polynomial::derivative(const std::string& var, unsigned long p) const {
    if (p == 0) return *this;
    std::vector<std::pair<ExponentVector, Value>> terms;
    ExponentVector shift = ExponentVector::unit(var, BigInt((unsigned long)p));
    for (const auto& [key, term] : elem_.terms()) {
        const auto& n = term.elem.as<ExponentVector>();
        auto m = n.minus(shift);
        if (!m) continue;
        // multiplier (s+p)!/s! at s = target exponent of var
        BigInt mult = falling_ratio(m->at(var), p);
        terms.emplace_back(*m, ring()->mul(ring()->from_integer(mult), term.coef));
    }
    return from_terms(ring(), terms);
}

Value Polynomial::eval_at(const std::map<std::string, Value>& point, RingPtr target,
                          const std::function<Value(const Value&)>& phi) const {
    if (!target->is_commutative())
        throw KernelError(ErrorCode::NoncommutativeTarget,
                          "polynomial evaluation requires a commutative target");
    for (const auto& var : variables())
        if (!point.count(var))
            throw KernelError(ErrorCode::MissingAssignment, "no value assigned to " + var);
    EvaluationContext ctx{
        target, phi, [&](const MonoidValue& m) {
            Value acc = target->one();
            for (const auto& [var, exp] : m.as<ExponentVector>().entries())
                acc = target->mul(acc, target->pow(point.at(var), exp));
            return acc;
        }};
    return evaluate(elem_, ctx);
}

std::string Polynomial::to_text() const {
    std::vector<std::pair<std::string, Value>> parts;
    for (const auto& [m, c] : terms_in_print_order())
        parts.emplace_back(m.empty() ? "" : exponent_to_text(m), c);
    return format_term_sequence(*ring(), parts);
}

nlohmann::json Polynomial::to_json() const { return elem_.to_json(); }

MonoidRingElement split_variables(const Polynomial& f, const std::set<std::string>& outer_vars) {
    MonoidPtr product = product_monoid(exponent_monoid(), exponent_monoid());
    return map_monoid(f.element(), product, [&](const MonoidValue& m) {
        const auto& v = m.as<ExponentVector>();
        ExponentVector outer = v.restricted_to(outer_vars);
        auto inner = v.minus(outer);
        return make_product(MonoidValue(*inner), MonoidValue(outer));
    });
}

Polynomial merge_split_variables(const MonoidRingElement& f) {
    MonoidRingElement merged = map_monoid(f, exponent_monoid(), [](const MonoidValue& m) {
        const auto& p = m.as<ProductValue>();
        return MonoidValue(p.left->as<ExponentVector>().plus(p.right->as<ExponentVector>()));
    });
    return Polynomial(std::move(merged));
}

ZeroDivisorReport is_zero_product_witness(
    RingPtr ring, const std::vector<std::pair<Polynomial, Polynomial>>& samples) {
    ZeroDivisorReport report;
    std::vector<std::pair<Polynomial, Polynomial>> candidates;

    // Composite characteristic: d * (n/d) = 0 gives a constructed witness.
    BigInt ch = ring->characteristic();
    if (ch > 1) {
        for (BigInt d = 2; d * d <= ch; d += 1) {
            if (ch % d == 0) {
                Polynomial x = Polynomial::variable(ring, "x");
                candidates.emplace_back(x.scale(ring->from_integer(d)),
                                        x.scale(ring->from_integer(ch / d)));
                break;
            }
        }
    }
    candidates.insert(candidates.end(), samples.begin(), samples.end());

    for (const auto& [f, g] : candidates) {
        if (f.is_zero() || g.is_zero()) continue;
        ++report.pairs_checked;
        if (f.mul(g).is_zero()) {
            report.witness_found = true;
            report.witness = std::make_pair(f, g);
            return report;
        }
    }
    return report;
}

} // namespace monoidal
