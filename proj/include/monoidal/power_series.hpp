#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "monoidal/polynomial.hpp"

namespace monoidal {

class SeriesNode;
using SeriesNodePtr = std::shared_ptr<const SeriesNode>;

/// One node of a lazy series DAG: a deterministic coefficient oracle over a
/// finite variable list, with a per-node memo. Coefficient queries are
/// thread-safe: the memo sits behind a recursive mutex (recursive because
/// inversion queries itself at smaller exponents), and queries only ever walk
/// DAG edges parent to child, so no lock cycle can form.
class SeriesNode {
public:
    SeriesNode(RingPtr ring, std::vector<std::string> vars);
    virtual ~SeriesNode() = default;

    /// Memoized oracle value at m.
    Value coefficient(const ExponentVector& m) const;
    /// Drops this node's memo and every descendant's; queries afterwards
    /// recompute identical values.
    void clear_memo_recursive() const;

    const RingPtr& ring() const { return ring_; }
    const std::vector<std::string>& variables() const { return vars_; }

protected:
    virtual Value compute(const ExponentVector& m) const = 0;
    virtual std::vector<SeriesNodePtr> children() const { return {}; }

private:
    RingPtr ring_;
    std::vector<std::string> vars_;
    mutable std::recursive_mutex mutex_;
    mutable std::map<std::string, Value> memo_;
};

/// Formal power series in finitely many declared variables: an element of
/// R[[x_1..x_n]] presented as a coefficient oracle ExponentVector -> R.
/// Values are immutable; composite series share their operands as a DAG.
class PowerSeries {
public:
    static PowerSeries zero(RingPtr ring, std::vector<std::string> vars = {});
    static PowerSeries constant(RingPtr ring, const Value& a);
    static PowerSeries from_polynomial(const Polynomial& p);
    /// Wraps an arbitrary deterministic oracle (callers own determinism).
    static PowerSeries from_oracle(RingPtr ring, std::vector<std::string> vars,
                                   std::function<Value(const ExponentVector&)> oracle);

    // Named series, univariate in `var`. exp/sin/cos require characteristic
    // zero (CharacteristicNotZero) and invert n! on demand (NotAUnit when the
    // ring lacks the inverse, e.g. over the integers).
    static PowerSeries geometric_plus(RingPtr ring, const std::string& var);  // (-1)^n
    static PowerSeries geometric_minus(RingPtr ring, const std::string& var); // all ones
    static PowerSeries exponential(RingPtr ring, const Value& a, const std::string& var);
    static PowerSeries sine(RingPtr ring, const std::string& var);
    static PowerSeries cosine(RingPtr ring, const std::string& var);

    const RingPtr& ring() const;
    const std::vector<std::string>& variables() const;

    /// f(m). The exponent may only mention declared variables
    /// (UnknownVariable otherwise); repeated queries return equal values.
    Value coefficient(const ExponentVector& m) const;
    Value constant_term() const { return coefficient(ExponentVector{}); }

    PowerSeries add(const PowerSeries& o) const;
    PowerSeries sub(const PowerSeries& o) const;
    PowerSeries neg() const;
    /// Convolution: the coefficient at u sums f(v)g(u-v) over the finite box
    /// 0 <= v <= u.
    PowerSeries mul(const PowerSeries& o) const;
    PowerSeries scale(const Value& a) const;
    PowerSeries pow(const BigInt& n) const;

    /// Formal partial derivative of order p: coefficient at m is
    /// ((s_k+p)!/s_k!) f(m + p eps_k). For a variable the series does not
    /// carry, the derivative is the zero series.
    PowerSeries derivative(const std::string& var, unsigned long p) const;

    /// Multiplicative inverse via g(0) = f(0)^-1,
    /// g(u) = -f(0)^-1 sum_{0<v<=u} f(v) g(u-v); requires the constant term
    /// to be a unit (NonUnitConstantTerm).
    PowerSeries invert() const;

    void clear_memo() const { node_->clear_memo_recursive(); }
    const SeriesNodePtr& node() const { return node_; }

    explicit PowerSeries(SeriesNodePtr node);

private:
    SeriesNodePtr node_;
};

/// Coefficientwise equality on all exponents of total degree < order.
bool equal_through_order(const PowerSeries& a, const PowerSeries& b, unsigned long order);

/// Nonzero coefficients of total degree < order, in graded print order.
std::vector<std::pair<ExponentVector, Value>> truncated_terms(const PowerSeries& f,
                                                              unsigned long order);

/// Canonical truncated text: polynomial grammar plus an order marker,
/// "O(x^N)" for a univariate series and "O(deg N)" otherwise.
std::string render_truncated(const PowerSeries& f, unsigned long order);

/// Element of (R[[inner]])[[outer]]: outer exponents index lazy inner series.
/// The curry side of the isomorphism with R[[inner ∪ outer]].
class NestedSeries {
public:
    static NestedSeries curry(const PowerSeries& flat, std::vector<std::string> inner_vars,
                              std::vector<std::string> outer_vars);

    /// The inner series sitting at outer exponent t (lazy, memoized).
    PowerSeries outer_coefficient(const ExponentVector& t) const;

    NestedSeries add(const NestedSeries& o) const;
    NestedSeries mul(const NestedSeries& o) const;

    const RingPtr& ring() const;
    const std::vector<std::string>& inner_variables() const;
    const std::vector<std::string>& outer_variables() const;

private:
    struct State;
    explicit NestedSeries(std::shared_ptr<const State> state);
    std::shared_ptr<const State> state_;
};

/// R[[M x N]] -> (R[[M]])[[N]] and back; mutually inverse ring isomorphisms,
/// lazy in both directions. Variable groups must be disjoint
/// (OverlappingVariables).
NestedSeries series_curry(const PowerSeries& flat, const std::vector<std::string>& inner_vars,
                          const std::vector<std::string>& outer_vars);
PowerSeries series_uncurry(const NestedSeries& nested);

struct IdentityCheck {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct SeriesIdentityReport {
    std::vector<IdentityCheck> checks;
    bool all_ok() const {
        for (const auto& c : checks)
            if (!c.ok) return false;
        return true;
    }
};

/// Euler-identity suite over a ring containing lambda with lambda^2 = -1:
/// lambda sin + cos = exp_lambda, the two half-difference forms, and
/// sin^2 + cos^2 = 1, all coefficientwise through `order`.
SeriesIdentityReport euler_suite(RingPtr ring, const Value& lambda, const std::string& var,
                                 unsigned long order);

/// Formal-derivative law suite through `order`: p-fold composition,
/// additivity, the Leibniz rule with binomial coefficients, partials of
/// variables, commuting mixed partials, and (in characteristic zero with
/// invertible integers) the sin/cos derivative sign pattern for p = 1..8.
SeriesIdentityReport derivative_laws_suite(RingPtr ring, unsigned long max_p,
                                           unsigned long order);

} // namespace monoidal
