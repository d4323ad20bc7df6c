#include <doctest.h>

#include <set>
#include <thread>

#include "test_util.hpp"

using namespace monoidal;
using testutil::Rng;

namespace {

ExponentVector xn(unsigned long n) { return ExponentVector::unit("x", n); }

PowerSeries series_of(const Polynomial& p) { return PowerSeries::from_polynomial(p); }

Polynomial poly_1_plus_x(const RingPtr& ring) {
    return Polynomial::constant(ring, ring->one()).add(Polynomial::variable(ring, "x"));
}

} // namespace

TEST_SUITE("power_series") {

TEST_CASE("named-series coefficients match their closed forms") {
    RingPtr q = rational_ring();

    PowerSeries geo_plus = PowerSeries::geometric_plus(q, "x");
    CHECK(q->equal(geo_plus.coefficient(xn(3)), make_rational(-1, 1)));
    CHECK(q->equal(geo_plus.coefficient(xn(0)), make_rational(1, 1)));

    // exp_a(n) = a^n / n!
    Value a = make_rational(2, 1);
    PowerSeries exp2 = PowerSeries::exponential(q, a, "x");
    for (unsigned long n = 0; n <= 8; ++n) {
        BigRat expected = BigRat(2);
        mpz_pow_ui(expected.get_num_mpz_t(), BigRat(2).get_num_mpz_t(), n);
        expected /= BigRat(factorial(n));
        expected.canonicalize();
        CHECK(q->equal(exp2.coefficient(xn(n)), expected));
    }

    // cos = 1 - x^2/2! + x^4/4! - ...
    PowerSeries cos = PowerSeries::cosine(q, "x");
    std::vector<BigRat> cos_expected{BigRat(1), BigRat(0), BigRat(-1, 2), BigRat(0),
                                     BigRat(1, 24)};
    for (unsigned long n = 0; n < cos_expected.size(); ++n) {
        BigRat e = cos_expected[n];
        e.canonicalize();
        CHECK(q->equal(cos.coefficient(xn(n)), e));
    }

    PowerSeries sin = PowerSeries::sine(q, "x");
    CHECK(q->equal(sin.coefficient(xn(1)), BigRat(1)));
    CHECK(q->is_zero(sin.coefficient(xn(0))));
    CHECK(q->equal(sin.coefficient(xn(3)), make_rational(-1, 6)));

    // exp_0 = 1
    PowerSeries exp0 = PowerSeries::exponential(q, q->zero(), "x");
    CHECK(q->is_one(exp0.coefficient(xn(0))));
    for (unsigned long n = 1; n <= 6; ++n) CHECK(q->is_zero(exp0.coefficient(xn(n))));

    // Any series at the identity exponent is its constant term.
    CHECK(q->is_one(PowerSeries::geometric_minus(q, "x").constant_term()));
}

TEST_CASE("exp/sin/cos preconditions: modular rings refuse, Z lacks 1/n!") {
    CHECK_THROWS_AS((void)PowerSeries::exponential(modular_ring(5), make_modular(5, 1), "x"),
                    KernelError);
    CHECK_THROWS_AS((void)PowerSeries::sine(modular_ring(7), "x"), KernelError);
    // exp_0 over Z works (all coefficients past 0 vanish before dividing)...
    PowerSeries exp0 = PowerSeries::exponential(integer_ring(), BigInt(0), "x");
    CHECK(integer_ring()->is_zero(exp0.coefficient(xn(3))));
    // ...but exp_1 needs 1/2 at n = 2.
    PowerSeries exp1 = PowerSeries::exponential(integer_ring(), BigInt(1), "x");
    CHECK_THROWS_AS((void)exp1.coefficient(xn(2)), KernelError);
}

TEST_CASE("the paper's geometric identities: (1+x) geom_plus = 1 and (1-x) geom_minus = 1") {
    for (const RingPtr& r : {integer_ring(), rational_ring()}) {
        PowerSeries one = PowerSeries::constant(r, r->one());
        Polynomial x = Polynomial::variable(r, "x");
        PowerSeries lhs1 =
            series_of(poly_1_plus_x(r)).mul(PowerSeries::geometric_plus(r, "x"));
        CHECK(equal_through_order(lhs1, one, 25));
        PowerSeries lhs2 = series_of(Polynomial::constant(r, r->one()).sub(x))
                               .mul(PowerSeries::geometric_minus(r, "x"));
        CHECK(equal_through_order(lhs2, one, 25));
    }
}

TEST_CASE("f * 0 = 0 and structure mismatch raises") {
    RingPtr q = rational_ring();
    PowerSeries f = PowerSeries::geometric_minus(q, "x");
    CHECK(equal_through_order(f.mul(PowerSeries::zero(q)), PowerSeries::zero(q), 10));
    CHECK_THROWS_AS((void)f.mul(PowerSeries::zero(integer_ring())), KernelError);
}

TEST_CASE("derivative of x^3 is 3x^2; derivative in an absent variable is zero") {
    RingPtr z = integer_ring();
    PowerSeries x3 = series_of(Polynomial::variable(z, "x").pow(3));
    PowerSeries d = x3.derivative("x", 1);
    CHECK(z->equal(d.coefficient(xn(2)), BigInt(3)));
    for (unsigned long n : {0ul, 1ul, 3ul, 4ul}) CHECK(z->is_zero(d.coefficient(xn(n))));

    PowerSeries y2 = series_of(Polynomial::variable(z, "y").pow(2));
    PowerSeries dy2 = y2.derivative("x", 1);
    CHECK(equal_through_order(dy2, PowerSeries::zero(z, {"y"}), 8));
}

TEST_CASE("d^p exp_a = a^p exp_a for p <= 5 and a in {1, 2, -1/3}, through order 12") {
    RingPtr q = rational_ring();
    for (const Value& a : {make_rational(1, 1), make_rational(2, 1), make_rational(-1, 3)}) {
        PowerSeries exp_a = PowerSeries::exponential(q, a, "x");
        for (unsigned long p = 1; p <= 5; ++p) {
            PowerSeries lhs = exp_a.derivative("x", p);
            PowerSeries rhs = exp_a.scale(q->pow(a, BigInt(p)));
            CHECK(equal_through_order(lhs, rhs, 13));
        }
    }
}

TEST_CASE("inversion: alternating signs, identity, frozen 1/(2+x), two-sided, idempotent") {
    RingPtr q = rational_ring();

    PowerSeries inv_1px = series_of(poly_1_plus_x(q)).invert();
    CHECK(equal_through_order(inv_1px, PowerSeries::geometric_plus(q, "x"), 20));

    CHECK(equal_through_order(PowerSeries::constant(q, q->one()).invert(),
                              PowerSeries::constant(q, q->one()), 10));

    // 1/(2+x): recurrence unrolled by hand: g(0) = 1/2, g(n) = -(1/2) g(n-1).
    PowerSeries f = series_of(Polynomial::constant(q, BigRat(2)).add(Polynomial::variable(q, "x")));
    PowerSeries g = f.invert();
    std::vector<std::pair<long, long>> frozen{{1, 2}, {-1, 4}, {1, 8}, {-1, 16}, {1, 32}, {-1, 64}};
    for (unsigned long n = 0; n < frozen.size(); ++n)
        CHECK(q->equal(g.coefficient(xn(n)), make_rational(frozen[n].first, frozen[n].second)));
    PowerSeries one = PowerSeries::constant(q, q->one());
    CHECK(equal_through_order(f.mul(g), one, 6));
    CHECK(equal_through_order(g.mul(f), one, 6));
    CHECK(equal_through_order(g.invert(), f, 10));

    CHECK_THROWS_AS((void)series_of(Polynomial::variable(q, "x")).invert(), KernelError);
    RingPtr z = integer_ring();
    CHECK_THROWS_AS(
        (void)series_of(Polynomial::constant(z, BigInt(2)).add(Polynomial::variable(z, "x")))
            .invert(),
        KernelError);
}

TEST_CASE("euler suite holds exactly through order 20 over the Gaussian rationals") {
    RingPtr g = gaussian_ring();
    auto report = euler_suite(g, make_gaussian(BigRat(0), BigRat(1)), "x", 20);
    REQUIRE(report.checks.size() == 4);
    for (const auto& check : report.checks) {
        CAPTURE(check.name);
        CHECK(check.ok);
    }
    CHECK_THROWS_AS((void)euler_suite(rational_ring(), BigRat(1), "x", 5), KernelError);
}

TEST_CASE("sin^2 + cos^2: constant term 1; x^2 coefficient 0 by brute expansion") {
    RingPtr q = rational_ring();
    PowerSeries sum = PowerSeries::sine(q, "x").pow(2).add(PowerSeries::cosine(q, "x").pow(2));
    CHECK(q->is_one(sum.constant_term()));

    // Brute expansion with plain rational arithmetic:
    // sin = x - x^3/6 + ..., cos = 1 - x^2/2 + ...; coefficient of x^2 in
    // sin^2 is 1*1, in cos^2 is 2 * 1 * (-1/2) = -1; total 0.
    BigRat sin2_x2 = BigRat(1) * BigRat(1);
    BigRat cos2_x2 = BigRat(2) * BigRat(1) * BigRat(-1, 2);
    BigRat total = sin2_x2 + cos2_x2;
    CHECK(total == 0);
    CHECK(q->equal(sum.coefficient(xn(2)), total));
}

TEST_CASE("derivative law suite passes over the rationals") {
    auto report = derivative_laws_suite(rational_ring(), 4, 10);
    REQUIRE(report.checks.size() == 6);
    for (const auto& check : report.checks) {
        CAPTURE(check.name);
        CHECK(check.ok);
    }
    // Leibniz example frozen by hand: f = g = 1 + x, d^2(fg) = 2.
    RingPtr q = rational_ring();
    PowerSeries f = series_of(poly_1_plus_x(q));
    PowerSeries d2 = f.mul(f).derivative("x", 2);
    CHECK(q->equal(d2.constant_term(), BigRat(2)));
    CHECK(q->is_zero(d2.coefficient(xn(1))));
}

TEST_CASE("series curry: single term regroups; round-trip and multiplicativity") {
    RingPtr q = rational_ring();
    Polynomial x = Polynomial::variable(q, "x");
    Polynomial y = Polynomial::variable(q, "y");

    PowerSeries flat = series_of(x.mul(y));
    NestedSeries nested = series_curry(flat, {"x"}, {"y"});
    PowerSeries at_y1 = nested.outer_coefficient(ExponentVector::unit("y", 1));
    CHECK(q->is_one(at_y1.coefficient(xn(1))));
    CHECK(q->is_zero(at_y1.coefficient(xn(0))));
    PowerSeries at_y0 = nested.outer_coefficient(ExponentVector{});
    CHECK(q->is_zero(at_y0.coefficient(xn(1))));

    Rng rng(31);
    for (int i = 0; i < 30; ++i) {
        Polynomial fp = testutil::random_polynomial(rng, q, {"x", "y"}, 3, 5);
        Polynomial gp = testutil::random_polynomial(rng, q, {"x", "y"}, 3, 5);
        PowerSeries fs = series_of(fp), gs = series_of(gp);
        NestedSeries nf = series_curry(fs, {"x"}, {"y"});
        NestedSeries ng = series_curry(gs, {"x"}, {"y"});

        // round-trip coefficient equality at 50 random exponents
        PowerSeries back = series_uncurry(nf);
        for (int k = 0; k < 50; ++k) {
            ExponentVector m = testutil::random_exponent(rng, {"x", "y"}, 4);
            CHECK(q->equal(back.coefficient(m), fp.coefficient_at(m)));
        }

        // multiplicativity: curry(f*g) = curry(f)*curry(g), compared flat.
        PowerSeries lhs = series_uncurry(series_curry(fs.mul(gs), {"x"}, {"y"}));
        PowerSeries rhs = series_uncurry(nf.mul(ng));
        CHECK(equal_through_order(lhs, rhs, 7));
        // additivity too
        CHECK(equal_through_order(series_uncurry(series_curry(fs.add(gs), {"x"}, {"y"})),
                                  series_uncurry(nf.add(ng)), 7));
    }

    CHECK_THROWS_AS((void)series_curry(flat, {"x", "y"}, {"y"}), KernelError);
    CHECK_THROWS_AS((void)series_curry(flat, {"x"}, {"z"}), KernelError);
}

TEST_CASE("convolution reads only the finite box below the query") {
    RingPtr z = integer_ring();
    auto recorded_f = std::make_shared<std::vector<ExponentVector>>();
    auto recorded_g = std::make_shared<std::vector<ExponentVector>>();
    PowerSeries f = PowerSeries::from_oracle(z, {"x", "y"}, [recorded_f, z](const ExponentVector& m) {
        recorded_f->push_back(m);
        return z->one();
    });
    PowerSeries g = PowerSeries::from_oracle(z, {"x", "y"}, [recorded_g, z](const ExponentVector& m) {
        recorded_g->push_back(m);
        return z->one();
    });
    ExponentVector u = ExponentVector::from_entries({{"x", 3}, {"y", 2}});
    (void)f.mul(g).coefficient(u);
    std::size_t box_size = (3 + 1) * (2 + 1);
    CHECK(recorded_f->size() <= box_size);
    CHECK(recorded_g->size() <= box_size);
    for (const auto& m : *recorded_f) CHECK(m.componentwise_leq(u));
    for (const auto& m : *recorded_g) CHECK(m.componentwise_leq(u));
}

TEST_CASE("multiplication is associative against the flat triple-sum oracle") {
    RingPtr z = integer_ring();
    Rng rng(32);
    for (int i = 0; i < 25; ++i) {
        Polynomial fp = testutil::random_polynomial(rng, z, {"x", "y"}, 3, 4);
        Polynomial gp = testutil::random_polynomial(rng, z, {"x", "y"}, 3, 4);
        Polynomial hp = testutil::random_polynomial(rng, z, {"x", "y"}, 3, 4);
        PowerSeries f = series_of(fp), g = series_of(gp), h = series_of(hp);

        PowerSeries left = f.mul(g).mul(h);
        PowerSeries right = f.mul(g.mul(h));
        // flat oracle over {(u,v,w): u+v+w = m}
        auto triple = [&](const ExponentVector& m) {
            Value acc = z->zero();
            for (const auto& u : exponents_in_box(m))
                for (const auto& v : exponents_in_box(*m.minus(u))) {
                    ExponentVector w = *(*m.minus(u)).minus(v);
                    acc = z->add(acc, z->mul(z->mul(fp.coefficient_at(u), gp.coefficient_at(v)),
                                             hp.coefficient_at(w)));
                }
            return acc;
        };
        for (const auto& m : exponents_below_degree({"x", "y"}, 10)) {
            Value expected = triple(m);
            CHECK(z->equal(left.coefficient(m), expected));
            CHECK(z->equal(right.coefficient(m), expected));
        }
    }
}

TEST_CASE("memoization is semantically invisible") {
    RingPtr q = rational_ring();
    PowerSeries f = series_of(poly_1_plus_x(q)).invert();
    std::vector<Value> first;
    for (unsigned long n = 0; n < 12; ++n) first.push_back(f.coefficient(xn(n)));
    f.clear_memo();
    for (unsigned long n = 0; n < 12; ++n) CHECK(q->equal(f.coefficient(xn(n)), first[n]));
    for (unsigned long n = 0; n < 12; ++n) CHECK(q->equal(f.coefficient(xn(n)), first[n]));
}

TEST_CASE("concurrent queries of a shared series agree") {
    RingPtr q = rational_ring();
    PowerSeries f =
        series_of(poly_1_plus_x(q)).invert().mul(PowerSeries::exponential(q, BigRat(1), "x"));
    constexpr int kThreads = 4, kOrder = 25;
    std::vector<std::vector<Value>> results(kThreads);
    std::vector<std::thread> threads;
    for (int t = 0; t < kThreads; ++t)
        threads.emplace_back([&, t] {
            for (unsigned long n = 0; n < kOrder; ++n)
                results[t].push_back(f.coefficient(xn(n)));
        });
    for (auto& th : threads) th.join();
    for (int t = 1; t < kThreads; ++t)
        for (unsigned long n = 0; n < kOrder; ++n) CHECK(q->equal(results[t][n], results[0][n]));
}

TEST_CASE("unknown variables are rejected at the query boundary") {
    RingPtr q = rational_ring();
    PowerSeries f = PowerSeries::geometric_minus(q, "x");
    CHECK_THROWS_AS((void)f.coefficient(ExponentVector::unit("z", 1)), KernelError);
}

TEST_CASE("truncated rendering with order markers") {
    RingPtr q = rational_ring();
    CHECK(render_truncated(series_of(poly_1_plus_x(q)).invert(), 6) ==
          "1 - x + x^2 - x^3 + x^4 - x^5 + O(x^6)");
    Polynomial y = Polynomial::variable(q, "y");
    PowerSeries multi = series_of(poly_1_plus_x(q).add(y));
    CHECK(render_truncated(multi, 4) == "1 + x + y + O(deg 4)");
    CHECK(render_truncated(PowerSeries::zero(q, {"x"}), 3) == "0 + O(x^3)");
}

} // TEST_SUITE
