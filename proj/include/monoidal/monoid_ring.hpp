#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "monoidal/monoid.hpp"
#include "monoidal/ring.hpp"

namespace monoidal {

/// Element of the monoid ring R[M]: a finite-support map from monoid elements
/// to nonzero coefficients, kept in canonical form (zero coefficients dropped,
/// terms sorted by stable key). Immutable; all operations return new values.
class MonoidRingElement {
public:
    struct Term {
        MonoidValue elem;
        Value coef;
    };

    static MonoidRingElement zero(RingPtr ring, MonoidPtr monoid);
    /// eta(a) = a*delta_e, the canonical embedding R -> R[M].
    static MonoidRingElement eta(RingPtr ring, MonoidPtr monoid, const Value& a);
    /// delta(m): the single term m -> 1.
    static MonoidRingElement delta(RingPtr ring, MonoidPtr monoid, const MonoidValue& m);
    static MonoidRingElement one(RingPtr ring, MonoidPtr monoid);
    /// Builds from arbitrary (element, coefficient) pairs, merging duplicates
    /// and dropping zeros.
    static MonoidRingElement from_terms(RingPtr ring, MonoidPtr monoid,
                                        const std::vector<std::pair<MonoidValue, Value>>& terms);

    const RingPtr& ring() const { return ring_; }
    const MonoidPtr& monoid() const { return monoid_; }
    const std::map<std::string, Term>& terms() const { return terms_; }
    std::size_t support_size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    /// f(m): the coefficient at m, zero when m is outside the support.
    Value coefficient_at(const MonoidValue& m) const;
    std::vector<MonoidValue> support() const;

    MonoidRingElement add(const MonoidRingElement& other) const;
    MonoidRingElement sub(const MonoidRingElement& other) const;
    MonoidRingElement neg() const;
    /// Convolution product: sums f(m1)*g(m2) over Supp(f) x Supp(g) keyed by
    /// m1*m2, preserving the f-then-g coefficient order.
    MonoidRingElement mul(const MonoidRingElement& other) const;
    MonoidRingElement scale(const Value& a) const; // a*f = eta(a)*f

    bool equals(const MonoidRingElement& other) const;

    /// Sum of all coefficients; the augmentation map R[M] -> R.
    Value augmentation() const;
    /// Coefficients c_m with f = sum c_m (delta_m - 1) over m != e; requires
    /// augmentation(f) = 0, else NotInKernel.
    std::vector<std::pair<MonoidValue, Value>> augmentation_kernel_decompose() const;

    std::string to_text() const;
    nlohmann::json to_json() const;

private:
    MonoidRingElement(RingPtr ring, MonoidPtr monoid)
        : ring_(std::move(ring)), monoid_(std::move(monoid)) {}

    void insert_accumulate(const MonoidValue& m, const Value& c);
    void check_compatible(const MonoidRingElement& other) const;

    RingPtr ring_;
    MonoidPtr monoid_;
    std::map<std::string, Term> terms_;
};

/// Target data (S, phi, psi) for the evaluation homomorphism theta: a ring map
/// phi: R -> S together with a monoid map psi: M -> (S, *) whose images
/// commute with the image of phi. The homomorphism laws are caller
/// obligations; validate() spot-checks them on supplied samples, and
/// evaluate() checks the commutation law on every support element it touches.
struct EvaluationContext {
    RingPtr target;
    std::function<Value(const Value&)> phi;
    std::function<Value(const MonoidValue&)> psi;

    /// Samples the homomorphism laws; throws CommutationViolation or
    /// InvalidArgument with the offending pair on failure.
    void validate(const RingDescriptor& source_ring, const MonoidStructure& source_monoid,
                  const std::vector<std::pair<Value, Value>>& ring_samples,
                  const std::vector<std::pair<MonoidValue, MonoidValue>>& monoid_samples) const;
};

/// theta(f) = sum over Supp(f) of phi(f(m)) * psi(m).
Value evaluate(const MonoidRingElement& f, const EvaluationContext& ctx);

/// Presents R[M] as a coefficient ring, so (R[M])[N] is itself a monoid ring.
/// Element values box MonoidRingElements over (base, inner).
RingPtr monoid_ring_coefficient_ring(RingPtr base, MonoidPtr inner);

Value box_element(const MonoidRingElement& f);
const MonoidRingElement& unbox_element(const Value& v);

/// R[M x N] -> (R[M])[N]: regroups terms by the right component. A ring
/// isomorphism; uncurry is its inverse.
MonoidRingElement curry(const MonoidRingElement& f);
MonoidRingElement uncurry(const MonoidRingElement& f);

/// Pushforward along a monoid homomorphism h: M -> N (covariant functor).
/// h(e) = e is always checked; h(a*b) = h(a)*h(b) is spot-checked on support
/// pairs, capped.
MonoidRingElement map_monoid(const MonoidRingElement& f, MonoidPtr target,
                             const std::function<MonoidValue(const MonoidValue&)>& h);

/// Coefficientwise image along a ring homomorphism phi: R -> R' (covariant
/// functor); terms mapped to zero are dropped.
MonoidRingElement map_coefficients(const MonoidRingElement& f, RingPtr target,
                                   const std::function<Value(const Value&)>& phi);

/// Support-restriction pullback f |-> f o psi for psi: M -> N, computed on the
/// supplied candidate elements of M. Plain support arithmetic; carries no ring
/// homomorphism claim (the induced map need not be one).
MonoidRingElement pullback_support(const MonoidRingElement& f, MonoidPtr source,
                                   const std::function<MonoidValue(const MonoidValue&)>& psi,
                                   const std::vector<MonoidValue>& candidates);

struct CommutativityReport {
    bool expected_commutative = false;
    bool witness_found = false;
    std::optional<std::pair<MonoidRingElement, MonoidRingElement>> witness;
    std::size_t pairs_checked = 0;
};

/// Checks f*g = g*f across the sampled pairs. When R is commutative and M
/// abelian no witness should exist; otherwise the first failing pair is
/// returned. For a non-abelian monoid the delta pair of a non-commuting
/// element pair is tried first, so a witness is found deterministically.
CommutativityReport commutativity_witness(
    RingPtr ring, MonoidPtr monoid,
    const std::vector<std::pair<MonoidRingElement, MonoidRingElement>>& samples);

} // namespace monoidal
