#include <doctest.h>

#include <nlohmann/json.hpp>

#include "test_util.hpp"

using namespace monoidal;
using testutil::Rng;

namespace {

std::vector<std::array<Value, 3>> sample_triples(Rng& rng, const RingPtr& ring, std::size_t n) {
    std::vector<std::array<Value, 3>> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back({testutil::random_value(rng, ring), testutil::random_value(rng, ring),
                       testutil::random_value(rng, ring)});
    return out;
}

} // namespace

TEST_SUITE("ring") {

TEST_CASE("axiom suite passes on 10^4 sampled triples for every shipped ring") {
    Rng rng(20260810);
    for (const RingPtr& ring :
         {integer_ring(), rational_ring(), gaussian_ring(), modular_ring(6), modular_ring(5)}) {
        CAPTURE(ring->signature());
        RingAxiomReport report = ring_axiom_check(*ring, sample_triples(rng, ring, 10000));
        CHECK(report.all_pass());
        CHECK(report.failures.empty());
    }
}

TEST_CASE("gaussian lambda squares to -1") {
    RingPtr g = gaussian_ring();
    Value lambda = make_gaussian(BigRat(0), BigRat(1));
    CHECK(g->equal(g->mul(lambda, lambda), g->neg(g->one())));
}

TEST_CASE("mod 6 has the zero divisor 2*3 while the ring axioms still hold") {
    RingPtr r = modular_ring(6);
    Value two = make_modular(6, 2), three = make_modular(6, 3);
    CHECK(r->is_zero(r->mul(two, three)));
    Rng rng(7);
    CHECK(ring_axiom_check(*r, sample_triples(rng, r, 500)).all_pass());
}

TEST_CASE("try_invert: field inverse, integer non-unit, modular inverse") {
    RingPtr q = rational_ring();
    auto inv = q->try_invert(make_rational(2, 3));
    REQUIRE(inv);
    CHECK(q->equal(*inv, make_rational(3, 2)));

    CHECK_FALSE(integer_ring()->try_invert(BigInt(2)).has_value());
    CHECK_THROWS_AS((void)invert_or_throw(*integer_ring(), BigInt(2)), KernelError);

    // Oracle: brute-force search over residues 0..4.
    RingPtr m5 = modular_ring(5);
    std::uint64_t expected = 0;
    for (std::uint64_t b = 0; b < 5; ++b)
        if (m5->is_one(m5->mul(make_modular(5, 3), make_modular(5, b)))) expected = b;
    CHECK(expected == 2);
    auto minv = m5->try_invert(make_modular(5, 3));
    REQUIRE(minv);
    CHECK(m5->equal(*minv, make_modular(5, expected)));

    CHECK_FALSE(modular_ring(6)->try_invert(make_modular(6, 2)).has_value());
}

TEST_CASE("exact arithmetic: (a + b) - b = a on sampled pairs") {
    Rng rng(11);
    for (const RingPtr& ring : {rational_ring(), gaussian_ring()}) {
        for (int i = 0; i < 2000; ++i) {
            Value a = testutil::random_value(rng, ring);
            Value b = testutil::random_value(rng, ring);
            CHECK(ring->equal(ring->sub(ring->add(a, b), b), a));
        }
    }
}

TEST_CASE("characteristic is 0 for int/rat/gauss and n for mod:n, verified by summing one") {
    CHECK(integer_ring()->characteristic() == 0);
    CHECK(rational_ring()->characteristic() == 0);
    CHECK(gaussian_ring()->characteristic() == 0);
    for (std::uint64_t n : {2ull, 5ull, 6ull, 12ull}) {
        RingPtr r = modular_ring(n);
        CHECK(r->characteristic() == BigInt((unsigned long)n));
        Value acc = r->zero();
        for (std::uint64_t k = 1; k <= n; ++k) {
            acc = r->add(acc, r->one());
            if (k < n) CHECK_FALSE(r->is_zero(acc));
        }
        CHECK(r->is_zero(acc));
    }
    // Characteristic zero: no partial sum of ones vanishes (sampled).
    Value acc = integer_ring()->zero();
    for (int k = 0; k < 50; ++k) {
        acc = integer_ring()->add(acc, integer_ring()->one());
        CHECK_FALSE(integer_ring()->is_zero(acc));
    }
}

TEST_CASE("rationals stay reduced with positive denominators") {
    Value q = make_rational(6, -8);
    const BigRat& r = std::get<BigRat>(q);
    CHECK(r.get_num() == -3);
    CHECK(r.get_den() == 4);
    Value sum = rational_ring()->add(make_rational(1, 6), make_rational(1, 3));
    CHECK(rational_ring()->equal(sum, make_rational(1, 2)));
}

TEST_CASE("json encodings per ring") {
    CHECK(integer_ring()->to_json(BigInt(-17)) == nlohmann::json("-17"));
    CHECK(rational_ring()->to_json(make_rational(1, 2)) == nlohmann::json("1/2"));
    CHECK(rational_ring()->to_json(make_rational(3, 1)) == nlohmann::json("3/1"));
    nlohmann::json g = gaussian_ring()->to_json(make_gaussian(BigRat(1, 2), BigRat(-1, 3)));
    CHECK(g == nlohmann::json({{"re", "1/2"}, {"im", "-1/3"}}));
    nlohmann::json m = modular_ring(6)->to_json(make_modular(6, 4));
    CHECK(m == nlohmann::json({{"mod", 6}, {"val", 4}}));
}

TEST_CASE("structure mismatch is detected") {
    CHECK_THROWS_AS((void)integer_ring()->add(BigInt(1), make_rational(1, 2)), KernelError);
    CHECK_THROWS_AS((void)modular_ring(5)->add(make_modular(5, 1), make_modular(7, 1)),
                    KernelError);
}

} // TEST_SUITE
