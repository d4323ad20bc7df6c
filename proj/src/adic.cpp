#include "monoidal/adic.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "monoidal/format.hpp"

namespace monoidal {

Polynomial truncate(const PowerSeries& f, unsigned long p) {
    if (p == 0) throw KernelError(ErrorCode::InvalidArgument, "truncation order must be >= 1");
    return Polynomial::from_terms(f.ring(), truncated_terms(f, p));
}

// ---------------------------------------------------------------------------
// TruncationTower

TruncationTower::TruncationTower(RingPtr ring, std::vector<std::string> vars,
                                 std::function<Polynomial(unsigned long)> level_fn)
    : ring_(std::move(ring)), vars_(std::move(vars)), source_(std::move(level_fn)) {}

TowerPtr TruncationTower::of_series(const PowerSeries& f) {
    PowerSeries captured = f;
    return TowerPtr(new TruncationTower(
        f.ring(), f.variables(),
        [captured](unsigned long p) { return truncate(captured, p); }));
}

TowerPtr TruncationTower::from_generator(RingPtr ring, std::vector<std::string> vars,
                                         std::function<Polynomial(unsigned long)> level_fn) {
    return TowerPtr(new TruncationTower(std::move(ring), std::move(vars), std::move(level_fn)));
}

const Polynomial& TruncationTower::level(unsigned long p) const {
    if (p == 0) throw KernelError(ErrorCode::InvalidArgument, "tower levels start at 1");
    std::lock_guard<std::mutex> lock(mutex_);
    while (levels_.size() < p) {
        unsigned long q = levels_.size() + 1;
        Polynomial g = source_(q);
        for (const auto& [m, c] : g.terms_in_print_order())
            if (m.total_degree() >= q)
                throw KernelError(ErrorCode::IncoherentTower,
                                  "level " + std::to_string(q) + " contains a term of degree >= " +
                                      std::to_string(q));
        if (q >= 2) {
            Polynomial diff = g.sub(levels_.back());
            for (const auto& [m, c] : diff.terms_in_print_order())
                if (m.total_degree() < q - 1)
                    throw KernelError(ErrorCode::IncoherentTower,
                                      "levels " + std::to_string(q - 1) + " and " +
                                          std::to_string(q) + " disagree below degree " +
                                          std::to_string(q - 1));
        }
        levels_.push_back(std::move(g));
    }
    return levels_[p - 1];
}

unsigned long TruncationTower::materialized_levels() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return levels_.size();
}

std::vector<std::string> TruncationTower::dump_text(unsigned long levels) const {
    std::vector<std::string> lines;
    lines.reserve(levels);
    for (unsigned long p = 1; p <= levels; ++p) lines.push_back(level(p).to_text());
    return lines;
}

nlohmann::json TruncationTower::to_json(unsigned long levels) const {
    nlohmann::json arr = nlohmann::json::array();
    for (unsigned long p = 1; p <= levels; ++p)
        arr.push_back({{"level", p}, {"poly", level(p).to_json()}});
    return arr;
}

TowerPtr tower_of(const PowerSeries& f) { return TruncationTower::of_series(f); }

PowerSeries reconstruct(const TowerPtr& tower) {
    TowerPtr t = tower;
    return PowerSeries::from_oracle(
        tower->ring(), tower->variables(), [t](const ExponentVector& m) {
            unsigned long p = to_ulong(m.total_degree(), "tower level");
            return t->level(p + 1).coefficient_at(m);
        });
}

// ---------------------------------------------------------------------------
// J^p membership

namespace {

/// The canonical weight-p prefix of m: exponents taken greedily from the
/// alphabetically first variables until p is consumed. Defined whenever
/// |m| >= p; used to route each tail monomial to exactly one witness h_t.
ExponentVector canonical_prefix(const ExponentVector& m, unsigned long p) {
    ExponentVector t;
    BigInt budget = p;
    for (const auto& [var, exp] : m.entries()) {
        if (budget == 0) break;
        BigInt take = std::min(exp, budget);
        t = t.plus(ExponentVector::unit(var, take));
        budget -= take;
    }
    return t;
}

} // namespace

RemainderIdealReport check_remainder_ideal(const PowerSeries& f, unsigned long p) {
    if (p == 0) throw KernelError(ErrorCode::InvalidArgument, "p must be >= 1");
    RemainderIdealReport report;
    report.p = p;
    const RingDescriptor& r = *f.ring();

    PowerSeries fp = PowerSeries::from_polynomial(truncate(f, p));
    PowerSeries tail = f.sub(fp);

    report.tail_vanishes_below_p = true;
    for (const auto& m : exponents_below_degree(f.variables(), p))
        if (!r.is_zero(tail.coefficient(m))) report.tail_vanishes_below_p = false;

    // Witness decomposition f = f_p + sum over |t| = p of h_t x^t, with
    // h_t(u) = f(u + t) exactly when t is the canonical prefix of u + t.
    std::vector<ExponentVector> degree_p;
    for (const auto& t : exponents_below_degree(f.variables(), p + 1))
        if (t.total_degree() == p) degree_p.push_back(t);
    report.witness_monomials = degree_p.size();

    PowerSeries recombined = fp;
    for (const auto& t : degree_p) {
        PowerSeries h = PowerSeries::from_oracle(
            f.ring(), f.variables(), [f, t, p](const ExponentVector& u) {
                ExponentVector full = u.plus(t);
                if (canonical_prefix(full, p) != t) return f.ring()->zero();
                return f.coefficient(full);
            });
        recombined = recombined.add(h.mul(PowerSeries::from_polynomial(
            Polynomial::monomial(f.ring(), t))));
    }
    report.checked_through_order = p + 5;
    report.witness_recombines = equal_through_order(recombined, f, p + 5);
    return report;
}

QuotientIsoReport quotient_iso_check(unsigned long p,
                                     const std::vector<PowerSeries>& series_samples,
                                     const std::vector<Polynomial>& poly_samples) {
    if (p == 0) throw KernelError(ErrorCode::InvalidArgument, "p must be >= 1");
    QuotientIsoReport report;
    report.p = p;

    report.series_match_truncation = true;
    for (const auto& f : series_samples) {
        ++report.series_checked;
        PowerSeries fp = PowerSeries::from_polynomial(truncate(f, p));
        if (!equal_through_order(f, fp, p)) report.series_match_truncation = false;
    }

    // Distinct classes mod I^p must have distinct images: a differing
    // coefficient below degree p must exist.
    report.injective_below_p = true;
    for (std::size_t i = 0; i < poly_samples.size(); ++i)
        for (std::size_t j = i + 1; j < poly_samples.size(); ++j) {
            ++report.polynomials_checked;
            PowerSeries a = PowerSeries::from_polynomial(poly_samples[i]);
            PowerSeries b = PowerSeries::from_polynomial(poly_samples[j]);
            Polynomial ap = truncate(a, p);
            Polynomial bp = truncate(b, p);
            if (ap.equals(bp)) continue; // same class mod I^p
            bool differs = !equal_through_order(a, b, p);
            if (!differs) report.injective_below_p = false;
        }
    return report;
}

// ---------------------------------------------------------------------------
// NilpotentQuotientRing

NilpotentQuotientRing::NilpotentQuotientRing(RingPtr base, std::string var, unsigned long order)
    : base_(std::move(base)), var_(std::move(var)), order_(order) {
    if (order_ == 0)
        throw KernelError(ErrorCode::InvalidArgument, "nilpotency order must be >= 1");
}

std::string NilpotentQuotientRing::signature() const {
    return "nilq(" + base_->signature() + ";" + var_ + ";" + std::to_string(order_) + ")";
}

std::vector<Value> NilpotentQuotientRing::unpack(const Value& a) const {
    const auto* p = std::get_if<std::shared_ptr<const NilpotentPoly>>(&a);
    if (!p || !*p)
        throw KernelError(ErrorCode::StructureMismatch, "value is not a nilpotent-quotient element");
    const std::vector<Value>& coeffs = (*p)->coeffs;
    if (coeffs.size() > order_)
        throw KernelError(ErrorCode::StructureMismatch, "element from a larger quotient");
    return coeffs;
}

Value NilpotentQuotientRing::pack(std::vector<Value> coeffs) const {
    if (coeffs.size() > order_) coeffs.resize(order_);
    while (!coeffs.empty() && base_->is_zero(coeffs.back())) coeffs.pop_back();
    auto p = std::make_shared<NilpotentPoly>();
    p->coeffs = std::move(coeffs);
    return Value(std::shared_ptr<const NilpotentPoly>(std::move(p)));
}

Value NilpotentQuotientRing::zero() const { return pack({}); }
Value NilpotentQuotientRing::one() const { return pack({base_->one()}); }

Value NilpotentQuotientRing::add(const Value& a, const Value& b) const {
    std::vector<Value> x = unpack(a), y = unpack(b);
    std::vector<Value> out(std::max(x.size(), y.size()), base_->zero());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i];
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = base_->add(out[i], y[i]);
    return pack(std::move(out));
}

Value NilpotentQuotientRing::neg(const Value& a) const {
    std::vector<Value> x = unpack(a);
    for (auto& c : x) c = base_->neg(c);
    return pack(std::move(x));
}

Value NilpotentQuotientRing::mul(const Value& a, const Value& b) const {
    std::vector<Value> x = unpack(a), y = unpack(b);
    std::vector<Value> out(order_, base_->zero());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size() && i + j < order_; ++j)
            out[i + j] = base_->add(out[i + j], base_->mul(x[i], y[j]));
    return pack(std::move(out));
}

bool NilpotentQuotientRing::equal(const Value& a, const Value& b) const {
    std::vector<Value> x = unpack(a), y = unpack(b);
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!base_->equal(x[i], y[i])) return false;
    return true;
}

std::optional<Value> NilpotentQuotientRing::try_invert(const Value& a) const {
    std::vector<Value> x = unpack(a);
    if (x.empty()) return std::nullopt;
    auto c0_inv = base_->try_invert(x[0]);
    if (!c0_inv) return std::nullopt;
    // Same recurrence as series inversion, cut off at y^k.
    std::vector<Value> out(order_, base_->zero());
    out[0] = *c0_inv;
    for (std::size_t i = 1; i < order_; ++i) {
        Value acc = base_->zero();
        for (std::size_t j = 1; j <= i && j < x.size(); ++j)
            acc = base_->add(acc, base_->mul(x[j], out[i - j]));
        out[i] = base_->neg(base_->mul(*c0_inv, acc));
    }
    return pack(std::move(out));
}

Value NilpotentQuotientRing::from_integer(const BigInt& n) const {
    return pack({base_->from_integer(n)});
}

Value NilpotentQuotientRing::embed(const Value& base_value) const { return pack({base_value}); }

Value NilpotentQuotientRing::from_coefficients(const std::vector<Value>& coeffs) const {
    return pack(coeffs);
}

Value NilpotentQuotientRing::generator() const {
    if (order_ == 1) return zero(); // y = 0 in R[y]/(y)
    return pack({base_->zero(), base_->one()});
}

std::vector<Value> NilpotentQuotientRing::coefficients(const Value& a) const { return unpack(a); }

bool NilpotentQuotientRing::in_ideal(const Value& a) const {
    std::vector<Value> x = unpack(a);
    return x.empty() || base_->is_zero(x[0]);
}

std::string NilpotentQuotientRing::to_text(const Value& a) const {
    std::vector<Value> x = unpack(a);
    std::vector<std::pair<std::string, Value>> parts;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (base_->is_zero(x[i])) continue;
        std::string mono = i == 0 ? "" : (i == 1 ? var_ : var_ + "^" + std::to_string(i));
        parts.emplace_back(mono, x[i]);
    }
    return format_term_sequence(*base_, parts);
}

nlohmann::json NilpotentQuotientRing::to_json(const Value& a) const {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : unpack(a)) coeffs.push_back(base_->to_json(c));
    return nlohmann::json{{"var", var_}, {"order", order_}, {"coeffs", coeffs}};
}

NilRingPtr nilpotent_quotient_ring(RingPtr base, const std::string& var, unsigned long order) {
    return std::make_shared<NilpotentQuotientRing>(std::move(base), var, order);
}

Value eval_complete(const PowerSeries& f, const NilRingPtr& target,
                    const std::map<std::string, Value>& args,
                    const std::function<Value(const Value&)>& phi) {
    if (!target->is_commutative())
        throw KernelError(ErrorCode::NoncommutativeTarget,
                          "eval_complete requires a commutative target");
    for (const auto& var : f.variables()) {
        auto it = args.find(var);
        if (it == args.end())
            throw KernelError(ErrorCode::MissingAssignment, "no value assigned to " + var);
        if (!target->in_ideal(it->second))
            throw KernelError(ErrorCode::ArgumentNotInIdeal,
                              "argument for " + var + " has a nonzero constant term");
    }
    unsigned long n = f.variables().size();
    unsigned long k = target->order();
    unsigned long bound = n == 0 ? 1 : n * (k - 1) + 1;
    return truncate(f, bound).eval_at(args, target, phi);
}

} // namespace monoidal
