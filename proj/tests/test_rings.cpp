#include <catch_amalgamated.hpp>

#include <random>

#include "localg/rings.hpp"

using namespace localg;

namespace {

Scalar random_free_elem(std::mt19937& rng, const RingDescriptor& r, int max_terms = 4,
                        int max_len = 3) {
    auto ri = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    Scalar s = s_zero(r);
    int nt = ri(0, max_terms);
    for (int t = 0; t < nt; ++t) {
        Word w;
        int len = ri(0, max_len);
        for (int i = 0; i < len; ++i) w.push_back(ri(0, r.vars - 1));
        int c = ri(-5, 5);
        if (c == 0) continue;
        s = s_add(s, s_monomial(r, w, Rat(c)));
    }
    return s;
}

} // namespace

TEST_CASE("ring descriptors") {
    REQUIRE(RingDescriptor::integers() == RingDescriptor::integers());
    REQUIRE(RingDescriptor::integers() != RingDescriptor::rationals());
    REQUIRE(RingDescriptor::prime_field(5) != RingDescriptor::prime_field(7));
    RingDescriptor f1 = RingDescriptor::free_algebra(RingDescriptor::rationals(), 2);
    RingDescriptor f2 = RingDescriptor::free_algebra(RingDescriptor::rationals(), 3);
    REQUIRE(f1 != f2);
    REQUIRE(f1.base_ring() == RingDescriptor::rationals());
    REQUIRE(!f1.commutative());
    REQUIRE(!f1.is_field());
    REQUIRE(RingDescriptor::rationals().is_field());
    REQUIRE_THROWS_AS(RingDescriptor::prime_field(6), Error);
    REQUIRE_THROWS_AS(RingDescriptor::free_algebra(RingDescriptor::integers(), 2), Error);
    REQUIRE_THROWS_AS(RingDescriptor::free_algebra(RingDescriptor::rationals(), 0), Error);
    REQUIRE_THROWS_AS(RingDescriptor::free_algebra(RingDescriptor::rationals(), 10), Error);
}

TEST_CASE("primality matches trial division") {
    auto trial = [](long n) {
        if (n < 2) return false;
        for (long d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    };
    for (long n = 0; n <= 2000; ++n) REQUIRE(is_prime(Int(n)) == trial(n));
    REQUIRE(is_prime(Int("1000000007")));
    REQUIRE(!is_prime(Int("1000000008")));
}

TEST_CASE("integers reject fractions") {
    RingDescriptor Z = RingDescriptor::integers();
    REQUIRE(s_eq(s_from_rat(Z, Rat(4, 2)), s_from_int(Z, 2)));
    try {
        s_from_rat(Z, Rat(1, 2));
        FAIL("expected rejection");
    } catch (const Error& e) {
        REQUIRE(e.kind == "semantic");
    }
}

TEST_CASE("prime field arithmetic matches modular oracle") {
    RingDescriptor F = RingDescriptor::prime_field(7);
    std::mt19937 rng(11);
    for (int it = 0; it < 200; ++it) {
        long a = std::uniform_int_distribution<long>(-30, 30)(rng);
        long b = std::uniform_int_distribution<long>(-30, 30)(rng);
        auto md = [](long v) { return ((v % 7) + 7) % 7; };
        Scalar sa = s_from_int(F, a), sb = s_from_int(F, b);
        REQUIRE(s_add(sa, sb).value == Rat(md(a + b)));
        REQUIRE(s_mul(sa, sb).value == Rat(md(a * b)));
        REQUIRE(s_neg(sa).value == Rat(md(-a)));
        if (md(a) != 0) {
            Scalar inv = s_invert(sa);
            REQUIRE(s_mul(sa, inv).value == Rat(1));
            REQUIRE(den(inv.value) == 1);
            REQUIRE(num(inv.value) >= 0);
            REQUIRE(num(inv.value) < 7);
        }
    }
    // fractions fold in: 1/2 = 4 mod 7
    REQUIRE(s_from_rat(F, Rat(1, 2)).value == Rat(4));
    REQUIRE_THROWS_AS(s_from_rat(F, Rat(1, 7)), Error);
}

TEST_CASE("unit inversion per backend") {
    RingDescriptor Z = RingDescriptor::integers();
    REQUIRE(s_eq(s_invert(s_from_int(Z, -1)), s_from_int(Z, -1)));
    try {
        s_invert(s_from_int(Z, 2));
        FAIL("expected rejection");
    } catch (const Error& e) {
        REQUIRE(e.kind == "non-unit");
    }
    RingDescriptor Q = RingDescriptor::rationals();
    REQUIRE(s_invert(s_from_rat(Q, Rat(3, 4))).value == Rat(4, 3));
    REQUIRE_THROWS_AS(s_invert(s_zero(Q)), Error);

    RingDescriptor F = RingDescriptor::free_algebra(Q, 2);
    REQUIRE(s_eq(s_invert(s_from_int(F, 2)), s_from_rat(F, Rat(1, 2))));
    REQUIRE_THROWS_AS(s_invert(s_monomial(F, {0}, Rat(1))), Error);
    REQUIRE_THROWS_AS(s_invert(s_zero(F)), Error);
}

TEST_CASE("word order is length first, then lexicographic") {
    WordLess less;
    REQUIRE(less({}, {0}));
    REQUIRE(less({1}, {0, 0}));
    REQUIRE(less({0, 1}, {1, 0}));
    REQUIRE(!less({1, 0}, {0, 1}));
    // term maps iterate in that order
    RingDescriptor F = RingDescriptor::free_algebra(RingDescriptor::rationals(), 2);
    Scalar s = s_add(s_monomial(F, {1, 0}, Rat(1)),
                     s_add(s_monomial(F, {0}, Rat(2)), s_from_int(F, 3)));
    std::vector<Word> seen;
    for (const auto& [w, c] : s.terms) seen.push_back(w);
    REQUIRE(seen == std::vector<Word>{{}, {0}, {1, 0}});
}

TEST_CASE("free algebra multiplication concatenates words") {
    RingDescriptor F = RingDescriptor::free_algebra(RingDescriptor::rationals(), 2);
    Scalar x1 = s_monomial(F, {0}, Rat(1)), x2 = s_monomial(F, {1}, Rat(1));
    Scalar a = s_mul(x1, x2), b = s_mul(x2, x1);
    REQUIRE(!s_eq(a, b)); // noncommutative
    REQUIRE(s_coefficient(a, {0, 1}) == Rat(1));
    REQUIRE(s_coefficient(a, {1, 0}) == Rat(0));
    // (x1 + x2)^2 = x1x1 + x1x2 + x2x1 + x2x2
    Scalar s = s_add(x1, x2), sq = s_mul(s, s);
    REQUIRE(sq.terms.size() == 4);
    for (Word w : {Word{0, 0}, Word{0, 1}, Word{1, 0}, Word{1, 1}})
        REQUIRE(s_coefficient(sq, w) == Rat(1));
}

TEST_CASE("involution is an anti-automorphism") {
    RingDescriptor F = RingDescriptor::free_algebra(RingDescriptor::rationals(), 3);
    std::mt19937 rng(23);
    for (int it = 0; it < 100; ++it) {
        Scalar a = random_free_elem(rng, F), b = random_free_elem(rng, F);
        REQUIRE(s_eq(s_involute(s_involute(a)), a));
        REQUIRE(s_eq(s_involute(s_add(a, b)), s_add(s_involute(a), s_involute(b))));
        REQUIRE(s_eq(s_involute(s_mul(a, b)), s_mul(s_involute(b), s_involute(a))));
    }
    Scalar w = s_monomial(F, {0, 1, 2}, Rat(5));
    REQUIRE(s_coefficient(s_involute(w), {2, 1, 0}) == Rat(5));
}

TEST_CASE("augmentation is a ring map onto the base field") {
    RingDescriptor F = RingDescriptor::free_algebra(RingDescriptor::prime_field(5), 2);
    std::mt19937 rng(31);
    for (int it = 0; it < 100; ++it) {
        Scalar a = random_free_elem(rng, F), b = random_free_elem(rng, F);
        REQUIRE(s_eq(s_augment(s_add(a, b)), s_add(s_augment(a), s_augment(b))));
        REQUIRE(s_eq(s_augment(s_mul(a, b)), s_mul(s_augment(a), s_augment(b))));
        REQUIRE(s_augment(a).ring.kind == RingKind::PrimeField);
    }
    REQUIRE(s_is_zero(s_augment(s_monomial(F, {0}, Rat(1)))));
}

TEST_CASE("degree, truncation, coefficients") {
    RingDescriptor F = RingDescriptor::free_algebra(RingDescriptor::rationals(), 2);
    Scalar a = s_add(s_from_int(F, 1), s_monomial(F, {0, 1, 1}, Rat(2)));
    REQUIRE(s_degree(a) == 3);
    REQUIRE(s_degree(s_zero(F)) == -1);
    Scalar t = s_truncate(a, 2);
    REQUIRE(s_degree(t) == 0);
    REQUIRE(s_coefficient(a, {0, 1, 1}) == Rat(2));
    REQUIRE(s_coefficient(a, {1, 1, 0}) == Rat(0));
    RingDescriptor Z = RingDescriptor::integers();
    REQUIRE(s_degree(s_from_int(Z, 7)) == 0);
    REQUIRE(s_coefficient(s_from_int(Z, 7), {}) == Rat(7));
}

TEST_CASE("element grammar round trip") {
    RingDescriptor Q = RingDescriptor::rationals();
    REQUIRE(s_parse(Q, "-12").value == Rat(-12));
    REQUIRE(s_parse(Q, "3/4").value == Rat(3, 4));
    REQUIRE(s_parse(Q, " 1 + 1/2 - 2 ").value == Rat(-1, 2));

    RingDescriptor F = RingDescriptor::free_algebra(Q, 2);
    Scalar e = s_parse(F, "2*x1*x2 - x2 + 1");
    REQUIRE(s_coefficient(e, {0, 1}) == Rat(2));
    REQUIRE(s_coefficient(e, {1}) == Rat(-1));
    REQUIRE(s_coefficient(e, {}) == Rat(1));
    REQUIRE(s_to_string(e) == "2*x1*x2 - x2 + 1");

    std::mt19937 rng(47);
    for (int it = 0; it < 200; ++it) {
        Scalar a = random_free_elem(rng, F);
        REQUIRE(s_eq(s_parse(F, s_to_string(a)), a));
    }
    RingDescriptor Fp = RingDescriptor::free_algebra(RingDescriptor::prime_field(3), 3);
    for (int it = 0; it < 100; ++it) {
        Scalar a = random_free_elem(rng, Fp);
        REQUIRE(s_eq(s_parse(Fp, s_to_string(a)), a));
    }
    REQUIRE(s_to_string(s_zero(F)) == "0");
    REQUIRE(s_eq(s_parse(F, "0"), s_zero(F)));
    // canonical print orders longest words first
    Scalar m = s_add(s_from_int(F, 5), s_monomial(F, {1, 1}, Rat(-1, 3)));
    REQUIRE(s_to_string(m) == "-1/3*x2*x2 + 5");
}

TEST_CASE("element grammar rejects malformed input") {
    RingDescriptor Q = RingDescriptor::rationals();
    RingDescriptor F = RingDescriptor::free_algebra(Q, 2);
    for (const char* bad : {"", "1 +", "x0", "x10", "2 2", "1/0", "*x1", "x3"}) {
        try {
            s_parse(F, bad);
            FAIL("accepted: " << bad);
        } catch (const Error& e) {
            REQUIRE(e.kind == "parse");
        }
    }
    // variables require a free-algebra ring
    REQUIRE_THROWS_AS(s_parse(Q, "x1"), Error);
}
