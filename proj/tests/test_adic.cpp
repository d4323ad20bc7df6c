#include <doctest.h>

#include "test_util.hpp"

using namespace monoidal;
using testutil::Rng;

namespace {

ExponentVector xn(unsigned long n) { return ExponentVector::unit("x", n); }

Value rat(long num, long den = 1) { return make_rational(num, den); }

} // namespace

TEST_SUITE("adic") {

TEST_CASE("truncation keeps exactly the coefficients below total degree p") {
    RingPtr q = rational_ring();
    PowerSeries geo = PowerSeries::geometric_minus(q, "x");
    Polynomial t3 = truncate(geo, 3);
    Polynomial x = Polynomial::variable(q, "x");
    Polynomial expected = Polynomial::constant(q, q->one()).add(x).add(x.pow(2));
    CHECK(t3.equals(expected));

    CHECK(truncate(geo, 1).equals(Polynomial::constant(q, q->one())));

    CHECK_THROWS_AS((void)truncate(geo, 0), KernelError);
}

TEST_CASE("pi_p is a homomorphism: (f+g)_p = f_p + g_p and f_p g_p = (fg)_p below p") {
    RingPtr q = rational_ring();
    PowerSeries f = PowerSeries::geometric_minus(q, "x");
    PowerSeries g =
        PowerSeries::from_polynomial(Polynomial::constant(q, q->one())
                                         .add(Polynomial::variable(q, "x")))
            .invert();
    for (unsigned long p = 1; p <= 8; ++p) {
        CHECK(truncate(f.add(g), p).equals(truncate(f, p).add(truncate(g, p))));
        // product: agreement below degree p only
        PowerSeries via_truncs = PowerSeries::from_polynomial(truncate(f, p))
                                     .mul(PowerSeries::from_polynomial(truncate(g, p)));
        PowerSeries direct = f.mul(g);
        for (const auto& m : exponents_below_degree({"x"}, p))
            CHECK(q->equal(via_truncs.coefficient(m), direct.coefficient(m)));
    }
}

TEST_CASE("towers of simple series: zero, and 1+x stabilizing at level 2") {
    RingPtr q = rational_ring();
    TowerPtr zt = tower_of(PowerSeries::zero(q, {"x"}));
    for (unsigned long p = 1; p <= 6; ++p) CHECK(zt->level(p).is_zero());

    Polynomial one_plus_x =
        Polynomial::constant(q, q->one()).add(Polynomial::variable(q, "x"));
    TowerPtr t = tower_of(PowerSeries::from_polynomial(one_plus_x));
    CHECK(t->level(1).equals(Polynomial::constant(q, q->one())));
    for (unsigned long p = 2; p <= 8; ++p) CHECK(t->level(p).equals(one_plus_x));
}

TEST_CASE("tower coherence holds for materialized levels of random series") {
    RingPtr q = rational_ring();
    Rng rng(41);
    for (int i = 0; i < 50; ++i) {
        Polynomial fp = testutil::random_polynomial(rng, q, {"x", "y"}, 4, 5);
        TowerPtr t = tower_of(PowerSeries::from_polynomial(fp));
        for (unsigned long p = 1; p <= 7; ++p) {
            // every term of g_p lies below degree p
            for (const auto& [m, c] : t->level(p).terms_in_print_order())
                CHECK(m.total_degree() < p);
            // g_{p+1} - g_p concentrated in degrees >= p
            Polynomial diff = t->level(p + 1).sub(t->level(p));
            for (const auto& [m, c] : diff.terms_in_print_order())
                CHECK(m.total_degree() >= p);
        }
    }
}

TEST_CASE("the theorem's construction: levels sum_{i<p} x^i reconstruct geom_minus") {
    RingPtr q = rational_ring();
    TowerPtr t = TruncationTower::from_generator(q, {"x"}, [q](unsigned long p) {
        std::vector<std::pair<ExponentVector, Value>> terms;
        for (unsigned long i = 0; i < p; ++i) terms.emplace_back(xn(i), q->one());
        return Polynomial::from_terms(q, terms);
    });
    PowerSeries rebuilt = reconstruct(t);
    CHECK(equal_through_order(rebuilt, PowerSeries::geometric_minus(q, "x"), 12));
}

TEST_CASE("tower_of and reconstruct are mutually inverse on random polynomials") {
    RingPtr q = rational_ring();
    Rng rng(42);
    for (int i = 0; i < 100; ++i) {
        Polynomial fp = testutil::random_polynomial(rng, q, {"x", "y", "z"}, 3, 6);
        PowerSeries f = PowerSeries::from_polynomial(fp);
        PowerSeries back = reconstruct(tower_of(f));
        CHECK(equal_through_order(back, f, 11));
        // and tower_of(reconstruct(t)) = t levelwise
        TowerPtr t = tower_of(f);
        TowerPtr t2 = tower_of(reconstruct(t));
        for (unsigned long p = 1; p <= 6; ++p) CHECK(t2->level(p).equals(t->level(p)));
    }
}

TEST_CASE("stability: level q agrees with level p+1 at degree-p exponents for q > p") {
    RingPtr q = rational_ring();
    PowerSeries f = PowerSeries::geometric_plus(q, "x");
    TowerPtr t = tower_of(f);
    for (unsigned long deg = 0; deg <= 5; ++deg) {
        Value pinned = t->level(deg + 1 + 0).coefficient_at(xn(deg));
        for (unsigned long later = deg + 1; later <= 10; ++later)
            CHECK(q->equal(t->level(later).coefficient_at(xn(deg)), pinned));
    }
}

TEST_CASE("incoherent towers are rejected when materialized") {
    RingPtr q = rational_ring();
    // Level p carries a term of degree p: violates the degree bound.
    TowerPtr bad1 = TruncationTower::from_generator(q, {"x"}, [q](unsigned long p) {
        return Polynomial::monomial(q, xn(p));
    });
    CHECK_THROWS_AS((void)bad1->level(1), KernelError);

    // Levels disagree below their shared degree: violates coherence.
    TowerPtr bad2 = TruncationTower::from_generator(q, {"x"}, [q](unsigned long p) {
        return Polynomial::constant(q, q->from_integer(BigInt((unsigned long)p)));
    });
    CHECK_THROWS_AS((void)bad2->level(2), KernelError);
    // reconstruct propagates the failure lazily
    TowerPtr bad3 = TruncationTower::from_generator(q, {"x"}, [q](unsigned long p) {
        return Polynomial::constant(q, q->from_integer(BigInt((unsigned long)p)));
    });
    PowerSeries r = reconstruct(bad3);
    CHECK_THROWS_AS((void)r.coefficient(xn(1)), KernelError);
}

TEST_CASE("remainder criterion: exp_1 at p = 4, polynomials below p, witness recombination") {
    RingPtr q = rational_ring();
    PowerSeries exp1 = PowerSeries::exponential(q, q->one(), "x");
    auto report = check_remainder_ideal(exp1, 4);
    CHECK(report.tail_vanishes_below_p);
    CHECK(report.witness_recombines);
    CHECK(report.witness_monomials == 1); // x^4 is the only degree-4 monomial in one variable

    Polynomial low = Polynomial::variable(q, "x").add(Polynomial::constant(q, rat(7)));
    PowerSeries lows = PowerSeries::from_polynomial(low);
    auto preport = check_remainder_ideal(lows, 5);
    CHECK(preport.ok());
    CHECK(q->is_zero(lows.sub(PowerSeries::from_polynomial(truncate(lows, 5))).coefficient(xn(1))));

    // multivariate witness: all degree-p monomials show up
    Polynomial two_var = Polynomial::variable(q, "x").add(Polynomial::variable(q, "y")).pow(3);
    auto wreport = check_remainder_ideal(PowerSeries::from_polynomial(two_var), 2);
    CHECK(wreport.ok());
    CHECK(wreport.witness_monomials == 2); // x and y
}

TEST_CASE("quotient isomorphism checks at p = 1..6") {
    RingPtr q = rational_ring();
    Rng rng(43);
    std::vector<PowerSeries> series = {PowerSeries::geometric_minus(q, "x"),
                                       PowerSeries::exponential(q, rat(1), "x")};
    std::vector<Polynomial> polys;
    for (int i = 0; i < 10; ++i)
        polys.push_back(testutil::random_polynomial(rng, q, {"x"}, 5, 4));
    for (unsigned long p = 1; p <= 6; ++p) {
        auto report = quotient_iso_check(p, series, polys);
        CHECK(report.ok());
    }
}

TEST_CASE("nilpotent quotient ring: axioms, y^k = 0, inversion") {
    RingPtr q = rational_ring();
    NilRingPtr a = nilpotent_quotient_ring(q, "y", 4);
    CHECK(a->signature() == "nilq(rat;y;4)");

    Value y = a->generator();
    CHECK(a->is_zero(a->pow(y, BigInt(4))));
    CHECK_FALSE(a->is_zero(a->pow(y, BigInt(3))));

    Rng rng(44);
    std::vector<std::array<Value, 3>> triples;
    for (int i = 0; i < 2000; ++i) {
        auto rand_nil = [&]() {
            std::vector<Value> coeffs;
            for (int j = 0; j < 4; ++j) coeffs.push_back(testutil::random_value(rng, q));
            return a->from_coefficients(coeffs);
        };
        triples.push_back({rand_nil(), rand_nil(), rand_nil()});
    }
    CHECK(ring_axiom_check(*a, triples).all_pass());

    // (1 - y)^-1 = 1 + y + y^2 + y^3 in Q[y]/(y^4)
    Value one_minus_y = a->sub(a->one(), y);
    auto inv = a->try_invert(one_minus_y);
    REQUIRE(inv);
    CHECK(a->equal(*inv, a->from_coefficients({rat(1), rat(1), rat(1), rat(1)})));
    CHECK(a->is_one(a->mul(one_minus_y, *inv)));
    CHECK_FALSE(a->try_invert(y).has_value());
}

TEST_CASE("eval_complete: the paper's substitution examples, frozen") {
    RingPtr q = rational_ring();
    auto phi = [&](const Value& v) { return v; };

    // geom_plus at y in Q[y]/(y^3): 1 - y + y^2
    NilRingPtr a3 = nilpotent_quotient_ring(q, "y", 3);
    Value r1 = eval_complete(PowerSeries::geometric_plus(q, "x"), a3, {{"x", a3->generator()}},
                             [&](const Value& v) { return a3->embed(v); });
    CHECK(a3->equal(r1, a3->from_coefficients({rat(1), rat(-1), rat(1)})));

    // exp_1 at y in Q[y]/(y^4): 1 + y + y^2/2 + y^3/6, checked against an
    // independent truncated-substitution oracle.
    NilRingPtr a4 = nilpotent_quotient_ring(q, "y", 4);
    Value r2 = eval_complete(PowerSeries::exponential(q, rat(1), "x"), a4,
                             {{"x", a4->generator()}},
                             [&](const Value& v) { return a4->embed(v); });
    // oracle: sum_{n<4} (1/n!) y^n computed with plain coefficient arithmetic
    std::vector<Value> oracle;
    for (unsigned long n = 0; n < 4; ++n) oracle.push_back(make_rational(1, factorial(n)));
    CHECK(a4->equal(r2, a4->from_coefficients(oracle)));
    CHECK(a4->equal(r2, a4->from_coefficients({rat(1), rat(1), rat(1, 2), rat(1, 6)})));
    (void)phi;
}

TEST_CASE("eval_complete is a ring homomorphism on random pairs") {
    RingPtr q = rational_ring();
    Rng rng(45);
    for (unsigned long k : {2ul, 4ul, 6ul}) {
        NilRingPtr a = nilpotent_quotient_ring(q, "y", k);
        auto embed = [&](const Value& v) { return a->embed(v); };
        Value arg_x = a->mul(a->generator(), a->embed(rat(1, 2)));
        Value arg_y = a->add(a->generator(), a->mul(a->generator(), a->generator()));
        std::map<std::string, Value> args{{"x", arg_x}, {"y", arg_y}};
        for (int i = 0; i < 40; ++i) {
            Polynomial fp = testutil::random_polynomial(rng, q, {"x", "y"}, 3, 4);
            Polynomial gp = testutil::random_polynomial(rng, q, {"x", "y"}, 3, 4);
            PowerSeries f = PowerSeries::from_polynomial(fp);
            PowerSeries g = PowerSeries::from_polynomial(gp);
            Value vf = eval_complete(f, a, args, embed);
            Value vg = eval_complete(g, a, args, embed);
            CHECK(a->equal(eval_complete(f.mul(g), a, args, embed), a->mul(vf, vg)));
            CHECK(a->equal(eval_complete(f.add(g), a, args, embed), a->add(vf, vg)));
        }
    }
}

TEST_CASE("eval_complete rejects non-ideal arguments and noncommutative targets") {
    RingPtr q = rational_ring();
    NilRingPtr a = nilpotent_quotient_ring(q, "y", 3);
    PowerSeries f = PowerSeries::geometric_minus(q, "x");
    CHECK_THROWS_AS(
        (void)eval_complete(f, a, {{"x", a->one()}}, [&](const Value& v) { return a->embed(v); }),
        KernelError);
    CHECK_THROWS_AS((void)eval_complete(f, a, {}, [&](const Value& v) { return a->embed(v); }),
                    KernelError);

    RingPtr words = monoid_ring_coefficient_ring(integer_ring(), word_monoid());
    NilRingPtr bad = nilpotent_quotient_ring(words, "y", 2);
    PowerSeries fz = PowerSeries::geometric_minus(integer_ring(), "x");
    CHECK_THROWS_AS((void)eval_complete(fz, bad, {{"x", bad->generator()}},
                                        [&](const Value& v) { return bad->embed(v); }),
                    KernelError);
}

TEST_CASE("eval_complete factors through truncation at every level p") {
    RingPtr q = rational_ring();
    NilRingPtr a = nilpotent_quotient_ring(q, "y", 4);
    auto embed = [&](const Value& v) { return a->embed(v); };
    PowerSeries f = PowerSeries::exponential(q, rat(2), "x");
    std::map<std::string, Value> args{{"x", a->generator()}};
    Value full = eval_complete(f, a, args, embed);
    unsigned long k = 4, n = 1;
    for (unsigned long p = 1; p <= k * n + 1; ++p) {
        Value partial = truncate(f, p).eval_at(args, a, embed);
        // equal modulo a^p: coefficients of y^0..y^{min(p,k)-1} agree
        auto cf = a->coefficients(full);
        auto cp = a->coefficients(partial);
        for (unsigned long j = 0; j < std::min(p, k); ++j) {
            Value vf = j < cf.size() ? cf[j] : q->zero();
            Value vp = j < cp.size() ? cp[j] : q->zero();
            CHECK(q->equal(vf, vp));
        }
    }
}

TEST_CASE("alternative evaluation order (curry, innermost first) gives the same value") {
    RingPtr q = rational_ring();
    NilRingPtr a = nilpotent_quotient_ring(q, "y", 3);
    auto embed = [&](const Value& v) { return a->embed(v); };
    Rng rng(46);
    Value arg_x = a->generator();
    Value arg_y = a->mul(a->generator(), a->embed(rat(3)));
    std::map<std::string, Value> args{{"x", arg_x}, {"y", arg_y}};
    for (int i = 0; i < 30; ++i) {
        Polynomial fp = testutil::random_polynomial(rng, q, {"x", "y"}, 3, 5);
        PowerSeries f = PowerSeries::from_polynomial(fp);
        Value direct = eval_complete(f, a, args, embed);

        // Innermost-first: curry into (Q[[x]])[[y]], evaluate each inner
        // series at arg_x, then sum against powers of arg_y.
        NestedSeries nested = series_curry(f, {"x"}, {"y"});
        unsigned long bound = 2 * (3 - 1) + 1;
        Value acc = a->zero();
        for (unsigned long j = 0; j < bound; ++j) {
            PowerSeries inner = nested.outer_coefficient(ExponentVector::unit("y", j));
            Value inner_val = eval_complete(inner, a, {{"x", arg_x}}, embed);
            acc = a->add(acc, a->mul(inner_val, a->pow(arg_y, BigInt(j))));
        }
        CHECK(a->equal(direct, acc));
    }
}

} // TEST_SUITE
