#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "monoidal/monoid_ring.hpp"

namespace monoidal {

/// Sparse multivariate polynomial: a monoid-ring element over the additive
/// monoid of exponent vectors. The variable universe is open; a polynomial
/// records only the variables it actually uses.
class Polynomial {
public:
    /// Wraps an existing element; its monoid must be the exponent monoid.
    explicit Polynomial(MonoidRingElement elem);

    static Polynomial zero(RingPtr ring);
    static Polynomial constant(RingPtr ring, const Value& a);
    /// x_i = delta(eps_i).
    static Polynomial variable(RingPtr ring, const std::string& name);
    /// x^m with coefficient 1.
    static Polynomial monomial(RingPtr ring, const ExponentVector& m);
    static Polynomial from_terms(RingPtr ring,
                                 const std::vector<std::pair<ExponentVector, Value>>& terms);

    const MonoidRingElement& element() const { return elem_; }
    const RingPtr& ring() const { return elem_.ring(); }
    bool is_zero() const { return elem_.is_zero(); }
    std::size_t support_size() const { return elem_.support_size(); }

    Value coefficient_at(const ExponentVector& m) const;
    /// Variables occurring in the support, sorted by name.
    std::vector<std::string> variables() const;
    /// Terms sorted ascending in the graded print order (constants first).
    std::vector<std::pair<ExponentVector, Value>> terms_in_print_order() const;

    Polynomial add(const Polynomial& o) const { return Polynomial(elem_.add(o.elem_)); }
    Polynomial sub(const Polynomial& o) const { return Polynomial(elem_.sub(o.elem_)); }
    Polynomial neg() const { return Polynomial(elem_.neg()); }
    Polynomial mul(const Polynomial& o) const { return Polynomial(elem_.mul(o.elem_)); }
    Polynomial scale(const Value& a) const { return Polynomial(elem_.scale(a)); }
    Polynomial pow(const BigInt& n) const;
    bool equals(const Polynomial& o) const { return elem_.equals(o.elem_); }

    /// Minimal term in the graded print order; ZeroPolynomial on 0.
    std::pair<ExponentVector, Value> leading_term_min() const;
    BigInt max_total_degree() const; // -1 for the zero polynomial

    /// Formal partial derivative of order p w.r.t. `var`; stays a polynomial.
    Polynomial derivative(const std::string& var, unsigned long p) const;

    /// The unique evaluation homomorphism into a commutative target: maps
    /// coefficients through phi and x_i to point[i]. Every variable in the
    /// support must be assigned (MissingAssignment) and the target must be
    /// commutative (NoncommutativeTarget).
    Value eval_at(const std::map<std::string, Value>& point, RingPtr target,
                  const std::function<Value(const Value&)>& phi) const;

    /// Canonical text, ascending graded print order, constants first.
    std::string to_text() const;
    nlohmann::json to_json() const;

private:
    MonoidRingElement elem_;
};

/// Regroups a polynomial as an element of R[M x N] where N carries the
/// exponents of `outer_vars` and M the rest: the monoid isomorphism behind
/// R[x,y] = (R[x])[y]. merge_split_variables is its inverse.
MonoidRingElement split_variables(const Polynomial& f, const std::set<std::string>& outer_vars);
Polynomial merge_split_variables(const MonoidRingElement& f);

struct ZeroDivisorReport {
    bool witness_found = false;
    std::optional<std::pair<Polynomial, Polynomial>> witness;
    std::size_t pairs_checked = 0;
};

/// Searches the sampled nonzero pairs for f*g = 0. Over an integral domain no
/// witness should turn up; over Z/n with composite n a constructed witness is
/// checked first so the report is deterministic.
ZeroDivisorReport is_zero_product_witness(
    RingPtr ring, const std::vector<std::pair<Polynomial, Polynomial>>& samples);

} // namespace monoidal
