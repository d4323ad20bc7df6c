#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "monoidal/power_series.hpp"

namespace monoidal {

/// f_p: the polynomial keeping exactly the coefficients of total degree < p
/// (p >= 1). The projection pi_p sends f to f_p + I^p.
Polynomial truncate(const PowerSeries& f, unsigned long p);

/// Coherent family (g_p + I^p)_{p>=1}: level p holds all terms of degree < p
/// and consecutive levels differ only in degrees >= p. Levels materialize
/// lazily from a generator and coherence is checked as they do
/// (IncoherentTower on violation). Materialization is single-writer; reading
/// already-materialized levels is safe concurrently.
class TruncationTower {
public:
    static std::shared_ptr<TruncationTower> of_series(const PowerSeries& f);
    static std::shared_ptr<TruncationTower> from_generator(
        RingPtr ring, std::vector<std::string> vars,
        std::function<Polynomial(unsigned long)> level_fn);

    /// g_p (1-based); materializes and checks levels up to p.
    const Polynomial& level(unsigned long p) const;
    unsigned long materialized_levels() const;

    const RingPtr& ring() const { return ring_; }
    const std::vector<std::string>& variables() const { return vars_; }

    /// One line per level, canonical polynomial text.
    std::vector<std::string> dump_text(unsigned long levels) const;
    nlohmann::json to_json(unsigned long levels) const;

private:
    TruncationTower(RingPtr ring, std::vector<std::string> vars,
                    std::function<Polynomial(unsigned long)> level_fn);

    RingPtr ring_;
    std::vector<std::string> vars_;
    std::function<Polynomial(unsigned long)> source_;
    mutable std::mutex mutex_;
    mutable std::vector<Polynomial> levels_;
};

using TowerPtr = std::shared_ptr<TruncationTower>;

/// The completion map f -> (f_p + I^p)_{p>=1}.
TowerPtr tower_of(const PowerSeries& f);

/// Its inverse: the series reading level |m|+1 at exponent m. Queries
/// materialize tower levels on demand.
PowerSeries reconstruct(const TowerPtr& tower);

struct RemainderIdealReport {
    unsigned long p = 0;
    bool tail_vanishes_below_p = false;
    bool witness_recombines = false;
    std::size_t witness_monomials = 0;
    unsigned long checked_through_order = 0;
    bool ok() const { return tail_vanishes_below_p && witness_recombines; }
};

/// Concrete J^p membership check for f - f_p: every coefficient below total
/// degree p vanishes, and the witness decomposition
/// f = f_p + sum over |t| = p of h_t x^t re-multiplies to f through order
/// p + 5.
RemainderIdealReport check_remainder_ideal(const PowerSeries& f, unsigned long p);

struct QuotientIsoReport {
    unsigned long p = 0;
    bool series_match_truncation = false;
    bool injective_below_p = false;
    std::size_t series_checked = 0;
    std::size_t polynomials_checked = 0;
    bool ok() const { return series_match_truncation && injective_below_p; }
};

/// Checks the isomorphism R[x]/I^p -> S/J^p on samples: each series agrees
/// with its truncation below degree p, and distinct polynomial classes below
/// degree p stay distinct as series classes.
QuotientIsoReport quotient_iso_check(unsigned long p,
                                     const std::vector<PowerSeries>& series_samples,
                                     const std::vector<Polynomial>& poly_samples);

/// A = R[y]/(y^k): polynomials of degree < k in y with truncating
/// multiplication. Complete for the (y)-adic topology, so power series
/// evaluate exactly at ideal elements.
class NilpotentQuotientRing final : public RingDescriptor {
public:
    NilpotentQuotientRing(RingPtr base, std::string var, unsigned long order);

    std::string signature() const override;
    Value zero() const override;
    Value one() const override;
    Value add(const Value& a, const Value& b) const override;
    Value neg(const Value& a) const override;
    Value mul(const Value& a, const Value& b) const override;
    bool equal(const Value& a, const Value& b) const override;
    bool is_commutative() const override { return base_->is_commutative(); }
    BigInt characteristic() const override { return base_->characteristic(); }
    std::optional<Value> try_invert(const Value& a) const override;
    Value from_integer(const BigInt& n) const override;
    std::string to_text(const Value& a) const override;
    nlohmann::json to_json(const Value& a) const override;

    const RingPtr& base() const { return base_; }
    const std::string& variable() const { return var_; }
    unsigned long order() const { return order_; }

    /// Constant embedding R -> A.
    Value embed(const Value& base_value) const;
    /// Element from base-ring coefficients of 1, y, y^2, ...
    Value from_coefficients(const std::vector<Value>& coeffs) const;
    /// The ideal generator y.
    Value generator() const;
    /// Base-ring coefficients, trimmed.
    std::vector<Value> coefficients(const Value& a) const;
    /// Whether a lies in the ideal (y), i.e. has zero constant coefficient.
    bool in_ideal(const Value& a) const;

private:
    std::vector<Value> unpack(const Value& a) const;
    Value pack(std::vector<Value> coeffs) const;

    RingPtr base_;
    std::string var_;
    unsigned long order_;
};

using NilRingPtr = std::shared_ptr<const NilpotentQuotientRing>;

NilRingPtr nilpotent_quotient_ring(RingPtr base, const std::string& var, unsigned long order);

/// The power-series universal property at a nilpotent target: the unique ring
/// map with psi(x_i) = args[i] extending phi. Computed exactly as
/// eval_at(truncate(f, n(k-1)+1), args): any monomial of total degree
/// >= n(k-1)+1 places exponent >= k on some variable and vanishes. Each arg
/// must lie in the ideal (ArgumentNotInIdeal); the target must be commutative
/// (NoncommutativeTarget).
Value eval_complete(const PowerSeries& f, const NilRingPtr& target,
                    const std::map<std::string, Value>& args,
                    const std::function<Value(const Value&)>& phi);

} // namespace monoidal
