#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "monoidal/errors.hpp"
#include "monoidal/numeric.hpp"

namespace monoidal {

/// Finitely supported map variable-name -> positive exponent. The additive
/// monoid of these vectors underlies both polynomials and power series; the
/// index universe is open (any string names a variable).
class ExponentVector {
public:
    ExponentVector() = default;

    static ExponentVector unit(const std::string& var, const BigInt& exp = 1);
    static ExponentVector from_entries(const std::vector<std::pair<std::string, BigInt>>& entries);

    /// Exponent of `var`; 0 when absent.
    BigInt at(const std::string& var) const;
    bool empty() const { return entries_.empty(); }
    const std::map<std::string, BigInt>& entries() const { return entries_; }
    std::vector<std::string> variables() const;

    ExponentVector plus(const ExponentVector& other) const;
    /// Componentwise difference; nullopt if any component would go negative.
    std::optional<ExponentVector> minus(const ExponentVector& other) const;
    bool componentwise_leq(const ExponentVector& other) const;
    BigInt total_degree() const;
    ExponentVector restricted_to(const std::set<std::string>& vars) const;

    bool operator==(const ExponentVector& other) const { return entries_ == other.entries_; }
    bool operator!=(const ExponentVector& other) const { return !(*this == other); }

private:
    std::map<std::string, BigInt> entries_; // no zero exponents stored
};

/// Element of the free monoid: a finite sequence of alphabet symbols.
struct Word {
    std::vector<std::string> symbols;
    bool operator==(const Word&) const = default;
};

/// Element of Z/n under addition; the order lives in the monoid structure.
struct CyclicValue {
    std::uint64_t value = 0;
    bool operator==(const CyclicValue&) const = default;
};

class MonoidValue;

/// Element of a product monoid M x N, components boxed.
struct ProductValue {
    std::shared_ptr<const MonoidValue> left;
    std::shared_ptr<const MonoidValue> right;
};

/// Type-erased monoid element. Which alternative is meaningful is decided by
/// the MonoidStructure the value travels with.
class MonoidValue {
public:
    using Data = std::variant<ExponentVector, Word, CyclicValue, ProductValue>;

    MonoidValue(ExponentVector v) : data_(std::move(v)) {}
    MonoidValue(Word w) : data_(std::move(w)) {}
    MonoidValue(CyclicValue c) : data_(c) {}
    MonoidValue(ProductValue p) : data_(std::move(p)) {}

    template <typename T>
    bool is() const { return std::holds_alternative<T>(data_); }

    template <typename T>
    const T& as() const {
        const T* p = std::get_if<T>(&data_);
        if (!p) throw KernelError(ErrorCode::StructureMismatch, "monoid element of unexpected kind");
        return *p;
    }

    const Data& data() const { return data_; }

private:
    Data data_;
};

class MonoidStructure;
using MonoidPtr = std::shared_ptr<const MonoidStructure>;

/// A monoid (M, *, e) presented behind a runtime descriptor: operation,
/// identity, decidable equality and an injective stable key used to index
/// finite-support maps.
class MonoidStructure {
public:
    virtual ~MonoidStructure() = default;

    /// Canonical name; two structures interoperate iff signatures match.
    virtual std::string signature() const = 0;
    virtual MonoidValue identity() const = 0;
    virtual MonoidValue op(const MonoidValue& a, const MonoidValue& b) const = 0;
    /// Injective encoding; key equality is element equality.
    virtual std::string stable_key(const MonoidValue& v) const = 0;
    /// Inverse of stable_key.
    virtual MonoidValue decode_key(const std::string& key) const = 0;
    virtual bool is_abelian() const = 0;
    /// Inverse element when one exists (groups, identity elsewhere).
    virtual std::optional<MonoidValue> try_inverse(const MonoidValue& v) const = 0;
    virtual std::string to_text(const MonoidValue& v) const = 0;
    virtual nlohmann::json to_json(const MonoidValue& v) const = 0;

    bool equal(const MonoidValue& a, const MonoidValue& b) const {
        return stable_key(a) == stable_key(b);
    }
    bool is_identity(const MonoidValue& v) const { return equal(v, identity()); }
    bool same(const MonoidStructure& other) const { return signature() == other.signature(); }
};

MonoidPtr exponent_monoid();
MonoidPtr word_monoid();
MonoidPtr cyclic_monoid(std::uint64_t order);
MonoidPtr product_monoid(MonoidPtr left, MonoidPtr right);

MonoidValue make_product(const MonoidValue& left, const MonoidValue& right);

/// The factor structures of a product monoid, nullopt for anything else.
std::optional<std::pair<MonoidPtr, MonoidPtr>> product_components(const MonoidPtr& monoid);

/// Splits v into its sorted (variable, exponent) pairs; recombining the unit
/// vectors under the monoid operation reproduces v.
std::vector<std::pair<std::string, BigInt>> decompose_exponent(const ExponentVector& v);

BigInt total_degree(const ExponentVector& v);

/// Prints "x^2*y" style, variables sorted by name; "1" for the identity.
std::string exponent_to_text(const ExponentVector& v);

/// All exponent vectors over `vars` of total degree < bound, in graded print
/// order. The enumeration is the finite set driving truncation.
std::vector<ExponentVector> exponents_below_degree(const std::vector<std::string>& vars,
                                                   unsigned long bound);

/// All exponent vectors v with 0 <= v <= u componentwise (the convolution box).
std::vector<ExponentVector> exponents_in_box(const ExponentVector& u);

/// Print order for monomials: total degree first, ties broken by giving the
/// alphabetically earlier variable the larger exponent first, so within one
/// grade x^3, x^2*y, x*y^2, y^3 print in that order.
bool graded_print_less(const ExponentVector& a, const ExponentVector& b);

} // namespace monoidal
