#pragma once

// Deterministic sample generators and independent oracles shared by the unit
// and acceptance suites. Everything is seeded; reruns see identical samples.

#include <cstdint>
#include <random>
#include <vector>

#include "monoidal/adic.hpp"
#include "monoidal/monoid_ring.hpp"
#include "monoidal/polynomial.hpp"
#include "monoidal/power_series.hpp"

namespace testutil {

using namespace monoidal;

using Rng = std::mt19937_64;

inline std::uint64_t rand_below(Rng& rng, std::uint64_t n) { return rng() % n; }

inline long rand_range(Rng& rng, long lo, long hi) {
    return lo + static_cast<long>(rand_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

inline Value random_value(Rng& rng, const RingPtr& ring) {
    std::string sig = ring->signature();
    if (sig == "int") return BigInt(rand_range(rng, -9, 9));
    if (sig == "rat") return make_rational(rand_range(rng, -9, 9), rand_range(rng, 1, 9));
    if (sig == "gauss")
        return Gaussian{make_rational(rand_range(rng, -5, 5), rand_range(rng, 1, 5)),
                        make_rational(rand_range(rng, -5, 5), rand_range(rng, 1, 5))};
    if (sig.rfind("mod:", 0) == 0) {
        std::uint64_t m = std::stoull(sig.substr(4));
        return make_modular(m, rand_below(rng, m));
    }
    return ring->from_integer(rand_range(rng, -9, 9));
}

inline ExponentVector random_exponent(Rng& rng, const std::vector<std::string>& vars,
                                      unsigned long max_exp) {
    ExponentVector v;
    for (const auto& var : vars) {
        unsigned long e = rand_below(rng, max_exp + 1);
        if (e > 0) v = v.plus(ExponentVector::unit(var, e));
    }
    return v;
}

inline MonoidValue random_monoid_value(Rng& rng, const MonoidPtr& monoid) {
    std::string sig = monoid->signature();
    if (sig == "exponent") return MonoidValue(random_exponent(rng, {"x", "y", "z"}, 3));
    if (sig == "word") {
        Word w;
        std::size_t len = rand_below(rng, 4);
        for (std::size_t i = 0; i < len; ++i)
            w.symbols.push_back(rand_below(rng, 2) == 0 ? "a" : "b");
        return MonoidValue(w);
    }
    if (sig.rfind("cyclic:", 0) == 0) {
        std::uint64_t order = std::stoull(sig.substr(7));
        return MonoidValue(CyclicValue{rand_below(rng, order)});
    }
    auto components = product_components(monoid);
    if (components)
        return make_product(random_monoid_value(rng, components->first),
                            random_monoid_value(rng, components->second));
    return monoid->identity();
}

inline MonoidRingElement random_element(Rng& rng, const RingPtr& ring, const MonoidPtr& monoid,
                                        std::size_t max_terms = 4) {
    std::vector<std::pair<MonoidValue, Value>> terms;
    std::size_t n = rand_below(rng, max_terms + 1);
    for (std::size_t i = 0; i < n; ++i)
        terms.emplace_back(random_monoid_value(rng, monoid), random_value(rng, ring));
    return MonoidRingElement::from_terms(ring, monoid, terms);
}

inline Polynomial random_polynomial(Rng& rng, const RingPtr& ring,
                                    const std::vector<std::string>& vars, unsigned long max_exp,
                                    std::size_t max_terms) {
    std::vector<std::pair<ExponentVector, Value>> terms;
    std::size_t n = rand_below(rng, max_terms + 1);
    for (std::size_t i = 0; i < n; ++i)
        terms.emplace_back(random_exponent(rng, vars, max_exp), random_value(rng, ring));
    return Polynomial::from_terms(ring, terms);
}

/// Independent associativity oracle: computes the triple product of f, g, h
/// as the flat sum over Supp(f) x Supp(g) x Supp(h) keyed by m1*m2*m3,
/// mirroring the proof-side recalculation, without calling mul.
inline MonoidRingElement triple_sum_oracle(const MonoidRingElement& f, const MonoidRingElement& g,
                                           const MonoidRingElement& h) {
    std::vector<std::pair<MonoidValue, Value>> terms;
    const auto& monoid = *f.monoid();
    const auto& ring = *f.ring();
    for (const auto& [k1, t1] : f.terms())
        for (const auto& [k2, t2] : g.terms())
            for (const auto& [k3, t3] : h.terms())
                terms.emplace_back(monoid.op(monoid.op(t1.elem, t2.elem), t3.elem),
                                   ring.mul(ring.mul(t1.coef, t2.coef), t3.coef));
    return MonoidRingElement::from_terms(f.ring(), f.monoid(), terms);
}

} // namespace testutil
