#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "monoidal/errors.hpp"
#include "monoidal/value.hpp"

namespace monoidal {

class RingDescriptor;
using RingPtr = std::shared_ptr<const RingDescriptor>;

/// Runtime-pluggable exact ring of scalars. Every element is immutable and
/// every operation pure, so values can be shared freely across threads.
class RingDescriptor {
public:
    virtual ~RingDescriptor() = default;

    /// Canonical name; two descriptors interoperate iff signatures match.
    virtual std::string signature() const = 0;
    virtual Value zero() const = 0;
    virtual Value one() const = 0;
    virtual Value add(const Value& a, const Value& b) const = 0;
    virtual Value neg(const Value& a) const = 0;
    virtual Value mul(const Value& a, const Value& b) const = 0;
    virtual bool equal(const Value& a, const Value& b) const = 0;
    virtual bool is_commutative() const = 0;
    /// 0 means characteristic zero.
    virtual BigInt characteristic() const = 0;
    /// Multiplicative inverse when the element is a unit, nullopt otherwise.
    virtual std::optional<Value> try_invert(const Value& a) const = 0;
    /// Image of an integer under the unique map Z -> R.
    virtual Value from_integer(const BigInt& n) const = 0;
    virtual std::string to_text(const Value& a) const = 0;
    virtual nlohmann::json to_json(const Value& a) const = 0;

    Value sub(const Value& a, const Value& b) const { return add(a, neg(b)); }
    bool is_zero(const Value& a) const { return equal(a, zero()); }
    bool is_one(const Value& a) const { return equal(a, one()); }
    bool same(const RingDescriptor& other) const { return signature() == other.signature(); }
    /// a^n for natural n, by repeated squaring.
    Value pow(const Value& a, const BigInt& n) const;
};

RingPtr integer_ring();
RingPtr rational_ring();
RingPtr gaussian_ring();
RingPtr modular_ring(std::uint64_t modulus);

Value make_gaussian(const BigRat& re, const BigRat& im);
Value make_modular(std::uint64_t modulus, std::uint64_t val);

/// Inverse of `a` in `r`, or a NotAUnit error. Thin throwing façade over
/// RingDescriptor::try_invert for callers that require a unit.
Value invert_or_throw(const RingDescriptor& r, const Value& a);

/// Outcome of checking the ring laws on sampled triples.
struct RingAxiomReport {
    bool add_associative = true;
    bool add_commutative = true;
    bool add_identity = true;
    bool add_inverse = true;
    bool mul_associative = true;
    bool mul_identity = true;
    bool distributive = true;
    bool mul_commutative = true; // only checked when the ring claims it
    std::vector<std::string> failures;

    bool all_pass() const {
        return add_associative && add_commutative && add_identity && add_inverse &&
               mul_associative && mul_identity && distributive && mul_commutative;
    }
};

/// Checks the ring axioms on each sampled (a, b, c); failures are recorded,
/// never thrown.
RingAxiomReport ring_axiom_check(const RingDescriptor& r,
                                 const std::vector<std::array<Value, 3>>& samples);

} // namespace monoidal
