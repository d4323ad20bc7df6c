#include "monoidal/monoid_ring.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "monoidal/format.hpp"

namespace monoidal {

// ---------------------------------------------------------------------------
// MonoidRingElement

MonoidRingElement MonoidRingElement::zero(RingPtr ring, MonoidPtr monoid) {
    return MonoidRingElement(std::move(ring), std::move(monoid));
}

MonoidRingElement MonoidRingElement::eta(RingPtr ring, MonoidPtr monoid, const Value& a) {
    MonoidRingElement out(std::move(ring), std::move(monoid));
    out.insert_accumulate(out.monoid_->identity(), a);
    return out;
}

MonoidRingElement MonoidRingElement::delta(RingPtr ring, MonoidPtr monoid, const MonoidValue& m) {
    MonoidRingElement out(std::move(ring), std::move(monoid));
    out.insert_accumulate(m, out.ring_->one());
    return out;
}

MonoidRingElement MonoidRingElement::one(RingPtr ring, MonoidPtr monoid) {
    MonoidPtr m = monoid;
    return delta(std::move(ring), std::move(monoid), m->identity());
}

MonoidRingElement MonoidRingElement::from_terms(
    RingPtr ring, MonoidPtr monoid, const std::vector<std::pair<MonoidValue, Value>>& terms) {
    MonoidRingElement out(std::move(ring), std::move(monoid));
    for (const auto& [m, c] : terms) out.insert_accumulate(m, c);
    return out;
}

void MonoidRingElement::insert_accumulate(const MonoidValue& m, const Value& c) {
    if (ring_->is_zero(c)) return;
    std::string key = monoid_->stable_key(m);
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), Term{m, c});
        return;
    }
    Value sum = ring_->add(it->second.coef, c);
    if (ring_->is_zero(sum))
        terms_.erase(it);
    else
        it->second.coef = std::move(sum);
}

void MonoidRingElement::check_compatible(const MonoidRingElement& other) const {
    if (!ring_->same(*other.ring_) || !monoid_->same(*other.monoid_))
        throw KernelError(ErrorCode::StructureMismatch,
                          "operands live in different monoid rings: " + ring_->signature() + "[" +
                              monoid_->signature() + "] vs " + other.ring_->signature() + "[" +
                              other.monoid_->signature() + "]");
}

Value MonoidRingElement::coefficient_at(const MonoidValue& m) const {
    auto it = terms_.find(monoid_->stable_key(m));
    return it == terms_.end() ? ring_->zero() : it->second.coef;
}

std::vector<MonoidValue> MonoidRingElement::support() const {
    std::vector<MonoidValue> out;
    out.reserve(terms_.size());
    for (const auto& [key, term] : terms_) out.push_back(term.elem);
    return out;
}

MonoidRingElement MonoidRingElement::add(const MonoidRingElement& other) const {
    check_compatible(other);
    MonoidRingElement out = *this;
    for (const auto& [key, term] : other.terms_) out.insert_accumulate(term.elem, term.coef);
    return out;
}

MonoidRingElement MonoidRingElement::neg() const {
    MonoidRingElement out(ring_, monoid_);
    for (const auto& [key, term] : terms_)
        out.terms_.emplace(key, Term{term.elem, ring_->neg(term.coef)});
    return out;
}

MonoidRingElement MonoidRingElement::sub(const MonoidRingElement& other) const {
    return add(other.neg());
}

MonoidRingElement MonoidRingElement::mul(const MonoidRingElement& other) const {
    check_compatible(other);
    MonoidRingElement out(ring_, monoid_);
    for (const auto& [k1, t1] : terms_)
        for (const auto& [k2, t2] : other.terms_)
            out.insert_accumulate(monoid_->op(t1.elem, t2.elem), ring_->mul(t1.coef, t2.coef));
    return out;
}

MonoidRingElement MonoidRingElement::scale(const Value& a) const {
    MonoidRingElement out(ring_, monoid_);
    for (const auto& [key, term] : terms_)
        out.insert_accumulate(term.elem, ring_->mul(a, term.coef));
    return out;
}

bool MonoidRingElement::equals(const MonoidRingElement& other) const {
    check_compatible(other);
    if (terms_.size() != other.terms_.size()) return false;
    auto it = terms_.begin();
    auto jt = other.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt) {
        if (it->first != jt->first) return false;
        if (!ring_->equal(it->second.coef, jt->second.coef)) return false;
    }
    return true;
}

Value MonoidRingElement::augmentation() const {
    Value sum = ring_->zero();
    for (const auto& [key, term] : terms_) sum = ring_->add(sum, term.coef);
    return sum;
}

std::vector<std::pair<MonoidValue, Value>> MonoidRingElement::augmentation_kernel_decompose()
    const {
    if (!ring_->is_zero(augmentation()))
        throw KernelError(ErrorCode::NotInKernel,
                          "element has nonzero augmentation; not in the augmentation kernel");
    // f = sum over m != e of f(m) (delta_m - 1); the identity coefficient is
    // forced by the kernel condition.
    std::vector<std::pair<MonoidValue, Value>> out;
    std::string identity_key = monoid_->stable_key(monoid_->identity());
    for (const auto& [key, term] : terms_)
        if (key != identity_key) out.emplace_back(term.elem, term.coef);
    return out;
}

std::string MonoidRingElement::to_text() const {
    std::vector<std::pair<std::string, Value>> parts;
    parts.reserve(terms_.size());
    std::string identity_key = monoid_->stable_key(monoid_->identity());
    for (const auto& [key, term] : terms_)
        parts.emplace_back(key == identity_key ? "" : monoid_->to_text(term.elem), term.coef);
    return format_term_sequence(*ring_, parts);
}

nlohmann::json MonoidRingElement::to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [key, term] : terms_)
        terms.push_back({{"elem", monoid_->to_json(term.elem)}, {"coef", ring_->to_json(term.coef)}});
    return nlohmann::json{
        {"ring", ring_->signature()}, {"monoid", monoid_->signature()}, {"terms", terms}};
}

// ---------------------------------------------------------------------------
// Evaluation (universal property)

void EvaluationContext::validate(
    const RingDescriptor& source_ring, const MonoidStructure& source_monoid,
    const std::vector<std::pair<Value, Value>>& ring_samples,
    const std::vector<std::pair<MonoidValue, MonoidValue>>& monoid_samples) const {
    const RingDescriptor& s = *target;
    if (!s.equal(phi(source_ring.one()), s.one()))
        throw KernelError(ErrorCode::InvalidArgument, "phi(1) != 1");
    for (const auto& [a, b] : ring_samples) {
        if (!s.equal(phi(source_ring.add(a, b)), s.add(phi(a), phi(b))))
            throw KernelError(ErrorCode::InvalidArgument, "phi is not additive on a sampled pair");
        if (!s.equal(phi(source_ring.mul(a, b)), s.mul(phi(a), phi(b))))
            throw KernelError(ErrorCode::InvalidArgument,
                              "phi is not multiplicative on a sampled pair");
    }
    if (!s.equal(psi(source_monoid.identity()), s.one()))
        throw KernelError(ErrorCode::InvalidArgument, "psi(e) != 1");
    for (const auto& [m, n] : monoid_samples) {
        if (!s.equal(psi(source_monoid.op(m, n)), s.mul(psi(m), psi(n))))
            throw KernelError(ErrorCode::InvalidArgument,
                              "psi is not a monoid homomorphism on a sampled pair");
    }
    std::size_t checked = 0;
    for (const auto& [a, b] : ring_samples) {
        for (const auto& [m, n] : monoid_samples) {
            if (checked++ > 64) return;
            if (!s.equal(s.mul(phi(a), psi(m)), s.mul(psi(m), phi(a))))
                throw KernelError(ErrorCode::CommutationViolation,
                                  "phi(a) and psi(m) do not commute on a sampled pair");
        }
    }
}

Value evaluate(const MonoidRingElement& f, const EvaluationContext& ctx) {
    const RingDescriptor& s = *ctx.target;
    Value acc = s.zero();
    for (const auto& [key, term] : f.terms()) {
        Value pa = ctx.phi(term.coef);
        Value pm = ctx.psi(term.elem);
        Value left = s.mul(pa, pm);
        if (!s.equal(left, s.mul(pm, pa)))
            throw KernelError(ErrorCode::CommutationViolation,
                              "phi(" + f.ring()->to_text(term.coef) + ") and psi(" +
                                  f.monoid()->to_text(term.elem) + ") do not commute");
        acc = s.add(acc, left);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// R[M] as a coefficient ring

namespace {

class MonoidRingCoefficientRing final : public RingDescriptor {
public:
    MonoidRingCoefficientRing(RingPtr base, MonoidPtr inner)
        : base_(std::move(base)), inner_(std::move(inner)) {}

    std::string signature() const override {
        return "mre(" + base_->signature() + ";" + inner_->signature() + ")";
    }

    Value zero() const override { return box_element(MonoidRingElement::zero(base_, inner_)); }
    Value one() const override { return box_element(MonoidRingElement::one(base_, inner_)); }

    Value add(const Value& a, const Value& b) const override {
        return box_element(unbox_element(a).add(unbox_element(b)));
    }
    Value neg(const Value& a) const override { return box_element(unbox_element(a).neg()); }
    Value mul(const Value& a, const Value& b) const override {
        return box_element(unbox_element(a).mul(unbox_element(b)));
    }
    bool equal(const Value& a, const Value& b) const override {
        return unbox_element(a).equals(unbox_element(b));
    }
    bool is_commutative() const override {
        return base_->is_commutative() && inner_->is_abelian();
    }
    BigInt characteristic() const override { return base_->characteristic(); }

    std::optional<Value> try_invert(const Value& a) const override {
        const MonoidRingElement& f = unbox_element(a);
        // Units of the form c*delta_m with c a unit and m invertible in M.
        if (f.support_size() != 1) return std::nullopt;
        const auto& term = f.terms().begin()->second;
        auto minv = inner_->try_inverse(term.elem);
        auto cinv = base_->try_invert(term.coef);
        if (!minv || !cinv) return std::nullopt;
        return box_element(
            MonoidRingElement::from_terms(base_, inner_, {{*minv, *cinv}}));
    }

    Value from_integer(const BigInt& n) const override {
        return box_element(MonoidRingElement::eta(base_, inner_, base_->from_integer(n)));
    }

    std::string to_text(const Value& a) const override { return unbox_element(a).to_text(); }
    nlohmann::json to_json(const Value& a) const override { return unbox_element(a).to_json(); }

    const RingPtr& base() const { return base_; }
    const MonoidPtr& inner() const { return inner_; }

private:
    RingPtr base_;
    MonoidPtr inner_;
};

} // namespace

RingPtr monoid_ring_coefficient_ring(RingPtr base, MonoidPtr inner) {
    return std::make_shared<MonoidRingCoefficientRing>(std::move(base), std::move(inner));
}

Value box_element(const MonoidRingElement& f) {
    return std::make_shared<const MonoidRingElement>(f);
}

const MonoidRingElement& unbox_element(const Value& v) {
    const auto* p = std::get_if<std::shared_ptr<const MonoidRingElement>>(&v);
    if (!p || !*p)
        throw KernelError(ErrorCode::StructureMismatch, "value is not a monoid-ring element");
    return **p;
}

// ---------------------------------------------------------------------------
// Currying

MonoidRingElement curry(const MonoidRingElement& f) {
    auto components = product_components(f.monoid());
    if (!components)
        throw KernelError(ErrorCode::StructureMismatch, "curry requires a product monoid");
    auto [m_monoid, n_monoid] = *components;
    RingPtr inner_ring = monoid_ring_coefficient_ring(f.ring(), m_monoid);

    // Group terms by the N component; each group becomes one R[M] coefficient.
    std::map<std::string, std::pair<MonoidValue, std::vector<std::pair<MonoidValue, Value>>>>
        groups;
    for (const auto& [key, term] : f.terms()) {
        const auto& p = term.elem.as<ProductValue>();
        std::string nkey = n_monoid->stable_key(*p.right);
        auto it = groups.find(nkey);
        if (it == groups.end())
            it = groups.emplace(nkey, std::make_pair(*p.right,
                                                     std::vector<std::pair<MonoidValue, Value>>{}))
                     .first;
        it->second.second.emplace_back(*p.left, term.coef);
    }
    std::vector<std::pair<MonoidValue, Value>> outer;
    outer.reserve(groups.size());
    for (const auto& [nkey, group] : groups)
        outer.emplace_back(group.first, box_element(MonoidRingElement::from_terms(
                                            f.ring(), m_monoid, group.second)));
    return MonoidRingElement::from_terms(inner_ring, n_monoid, outer);
}

MonoidRingElement uncurry(const MonoidRingElement& f) {
    const auto* mre_ring = dynamic_cast<const MonoidRingCoefficientRing*>(f.ring().get());
    if (!mre_ring)
        throw KernelError(ErrorCode::StructureMismatch,
                          "uncurry requires coefficients in a monoid ring");
    MonoidPtr product = product_monoid(mre_ring->inner(), f.monoid());
    std::vector<std::pair<MonoidValue, Value>> flat;
    for (const auto& [nkey, outer_term] : f.terms()) {
        const MonoidRingElement& inner = unbox_element(outer_term.coef);
        for (const auto& [mkey, inner_term] : inner.terms())
            flat.emplace_back(make_product(inner_term.elem, outer_term.elem), inner_term.coef);
    }
    return MonoidRingElement::from_terms(mre_ring->base(), product, flat);
}

// ---------------------------------------------------------------------------
// Functoriality

MonoidRingElement map_monoid(const MonoidRingElement& f, MonoidPtr target,
                             const std::function<MonoidValue(const MonoidValue&)>& h) {
    const MonoidStructure& source = *f.monoid();
    if (!target->is_identity(h(source.identity())))
        throw KernelError(ErrorCode::InvalidArgument, "h(e) != e");
    std::vector<MonoidValue> supp = f.support();
    std::size_t checked = 0;
    for (std::size_t i = 0; i < supp.size() && checked < 64; ++i)
        for (std::size_t j = 0; j < supp.size() && checked < 64; ++j, ++checked)
            if (!target->equal(h(source.op(supp[i], supp[j])), target->op(h(supp[i]), h(supp[j]))))
                throw KernelError(ErrorCode::InvalidArgument,
                                  "h is not a monoid homomorphism on a support pair");
    std::vector<std::pair<MonoidValue, Value>> terms;
    terms.reserve(f.support_size());
    for (const auto& [key, term] : f.terms()) terms.emplace_back(h(term.elem), term.coef);
    return MonoidRingElement::from_terms(f.ring(), std::move(target), terms);
}

MonoidRingElement map_coefficients(const MonoidRingElement& f, RingPtr target,
                                   const std::function<Value(const Value&)>& phi) {
    const RingDescriptor& source = *f.ring();
    if (!target->is_zero(phi(source.zero())) || !target->is_one(phi(source.one())))
        throw KernelError(ErrorCode::InvalidArgument, "phi does not preserve 0 and 1");
    std::vector<Value> coefs;
    for (const auto& [key, term] : f.terms()) coefs.push_back(term.coef);
    std::size_t checked = 0;
    for (std::size_t i = 0; i < coefs.size() && checked < 64; ++i)
        for (std::size_t j = 0; j < coefs.size() && checked < 64; ++j, ++checked) {
            if (!target->equal(phi(source.add(coefs[i], coefs[j])),
                               target->add(phi(coefs[i]), phi(coefs[j]))) ||
                !target->equal(phi(source.mul(coefs[i], coefs[j])),
                               target->mul(phi(coefs[i]), phi(coefs[j]))))
                throw KernelError(ErrorCode::InvalidArgument,
                                  "phi is not a ring homomorphism on a support pair");
        }
    std::vector<std::pair<MonoidValue, Value>> terms;
    terms.reserve(f.support_size());
    for (const auto& [key, term] : f.terms()) terms.emplace_back(term.elem, phi(term.coef));
    return MonoidRingElement::from_terms(std::move(target), f.monoid(), terms);
}

MonoidRingElement pullback_support(const MonoidRingElement& f, MonoidPtr source,
                                   const std::function<MonoidValue(const MonoidValue&)>& psi,
                                   const std::vector<MonoidValue>& candidates) {
    std::vector<std::pair<MonoidValue, Value>> terms;
    for (const auto& m : candidates) terms.emplace_back(m, f.coefficient_at(psi(m)));
    return MonoidRingElement::from_terms(f.ring(), std::move(source), terms);
}

// ---------------------------------------------------------------------------
// Commutativity probe

CommutativityReport commutativity_witness(
    RingPtr ring, MonoidPtr monoid,
    const std::vector<std::pair<MonoidRingElement, MonoidRingElement>>& samples) {
    CommutativityReport report;
    report.expected_commutative = ring->is_commutative() && monoid->is_abelian();

    std::vector<std::pair<MonoidRingElement, MonoidRingElement>> candidates;
    if (!monoid->is_abelian()) {
        // delta_{m*n} = delta_m . delta_n, so a non-commuting element pair
        // yields a witness directly.
        std::vector<MonoidValue> elems;
        for (const auto& [f, g] : samples) {
            for (const auto& m : f.support()) elems.push_back(m);
            for (const auto& m : g.support()) elems.push_back(m);
        }
        for (std::size_t i = 0; i < elems.size(); ++i)
            for (std::size_t j = 0; j < elems.size(); ++j)
                if (!monoid->equal(monoid->op(elems[i], elems[j]),
                                   monoid->op(elems[j], elems[i]))) {
                    candidates.emplace_back(MonoidRingElement::delta(ring, monoid, elems[i]),
                                            MonoidRingElement::delta(ring, monoid, elems[j]));
                    i = elems.size();
                    break;
                }
    }
    candidates.insert(candidates.end(), samples.begin(), samples.end());

    for (const auto& [f, g] : candidates) {
        ++report.pairs_checked;
        if (!f.mul(g).equals(g.mul(f))) {
            report.witness_found = true;
            report.witness = std::make_pair(f, g);
            return report;
        }
    }
    return report;
}

} // namespace monoidal
