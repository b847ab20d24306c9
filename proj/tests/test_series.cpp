#include <catch_amalgamated.hpp>

#include <random>

#include "localg/series.hpp"

using namespace localg;

namespace {

Matrix m_truncate_all(const Matrix& A, int L) {
    Matrix m = A;
    for (auto& e : m.a) e = s_truncate(e, L);
    return m;
}

/// Independent oracle: expand s^-1 = (sum_m B^m) eps(s)^-1 with
/// B = I - eps(s)^-1 s as a truncated geometric series and read off
/// f s^-1 g up to word length L. B has no constant term, so words of length
/// <= L only need B^0 .. B^L.
Scalar series_eval_oracle(const CohnTriple& t, int L) {
    const RingDescriptor& F = t.sigma.ring;
    RingDescriptor k = F.base_ring();
    int n = t.size();
    Matrix eps = m_zero(k, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) eps.at(i, j) = s_augment(t.s.at(i, j));
    Matrix eps_inv = inverse_field(eps);
    Matrix eps_inv_F = m_zero(F, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) eps_inv_F.at(i, j) = s_from_rat(F, eps_inv.at(i, j).value);
    Matrix B = m_sub(m_identity(F, n), m_mul(eps_inv_F, t.s));
    Matrix acc = m_identity(F, n), pw = m_identity(F, n);
    for (int m = 1; m <= L; ++m) {
        pw = m_truncate_all(m_mul(pw, B), L);
        acc = m_add(acc, pw);
    }
    Matrix sinv = m_mul(acc, eps_inv_F);
    return s_truncate(m_mul(t.f, m_mul(sinv, t.g)).at(0, 0), L);
}

void all_words(int letters, int max_len, Word& w, std::vector<Word>& out) {
    out.push_back(w);
    if (int(w.size()) == max_len) return;
    for (int x = 0; x < letters; ++x) {
        w.push_back(x);
        all_words(letters, max_len, w, out);
        w.pop_back();
    }
}

std::vector<Word> words_up_to(int letters, int max_len) {
    std::vector<Word> out;
    Word w;
    all_words(letters, max_len, w, out);
    return out;
}

Scalar random_elem(std::mt19937& rng, const RingDescriptor& F, bool zero_constant) {
    auto ri = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    Scalar s = zero_constant ? s_zero(F) : s_from_int(F, ri(-2, 2));
    for (int t = ri(0, 2); t > 0; --t) {
        Word w;
        for (int i = ri(1, 2); i > 0; --i) w.push_back(ri(0, F.vars - 1));
        s = s_add(s, s_monomial(F, w, Rat(ri(-2, 2))));
    }
    return s;
}

CohnTriple random_triple(std::mt19937& rng, const SigmaSet& sigma, int n) {
    const RingDescriptor& F = sigma.ring;
    RingDescriptor k = F.base_ring();
    auto ri = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    while (true) {
        Matrix s = m_zero(F, n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                long c = i == j ? (ri(0, 1) ? 1 : -1) : ri(-1, 1);
                s.at(i, j) = s_add(s_from_int(F, c), random_elem(rng, F, true));
            }
        Matrix eps = m_zero(k, n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) eps.at(i, j) = s_augment(s.at(i, j));
        if (!invertible_field(eps)) continue;
        Matrix f = m_zero(F, 1, n), g = m_zero(F, n, 1);
        for (int j = 0; j < n; ++j) f.at(0, j) = random_elem(rng, F, false);
        for (int i = 0; i < n; ++i) g.at(i, 0) = random_elem(rng, F, false);
        return triple_make(sigma, f, s, g);
    }
}

} // namespace

TEST_CASE("linear representation matches the truncated series") {
    RingDescriptor F = RingDescriptor::free_algebra(RingDescriptor::rationals(), 2);
    SigmaSet sigma = SigmaSet::augmentation_invertible(F);
    std::mt19937 rng(71);
    const int L = 4;
    std::vector<Word> ws = words_up_to(2, L);
    for (int it = 0; it < 12; ++it) {
        CohnTriple t = random_triple(rng, sigma, std::uniform_int_distribution<int>(1, 2)(rng));
        LinearRepresentation rep = triple_to_linrep(t);
        Scalar expanded = series_eval_oracle(t, L);
        for (const Word& w : ws)
            REQUIRE(linrep_coefficient(rep, w).value == s_coefficient(expanded, w));
    }
}

TEST_CASE("inverted geometric element squares to shifted coefficients") {
    RingDescriptor F = RingDescriptor::free_algebra(RingDescriptor::rationals(), 2);
    SigmaSet sigma = SigmaSet::augmentation_invertible(F);
    Matrix one = m_zero(F, 1, 1);
    one.at(0, 0) = s_one(F);
    Matrix s = m_zero(F, 1, 1);
    s.at(0, 0) = s_parse(F, "1 - x1");
    CohnTriple inv = triple_make(sigma, one, s, one); // (1 - x1)^-1
    CohnTriple sq = triple_mul(inv, inv);
    LinearRepresentation rep = triple_to_linrep(sq);
    // (1 - x1)^-2 = sum (m+1) x1^m
    for (int m = 0; m <= 6; ++m) {
        Word w(m, 0);
        REQUIRE(linrep_coefficient(rep, w).value == Rat(m + 1));
    }
    // no word touching x2 appears
    REQUIRE(s_is_zero(linrep_coefficient(rep, {1})));
    REQUIRE(s_is_zero(linrep_coefficient(rep, {0, 1})));
    REQUIRE(s_is_zero(linrep_coefficient(rep, {1, 0, 0})));

    // the product triple equals the handmade 2x2 presentation
    Matrix f2 = m_zero(F, 1, 2), s2 = m_zero(F, 2, 2), g2 = m_zero(F, 2, 1);
    f2.at(0, 0) = s_one(F);
    s2.at(0, 0) = s_parse(F, "1 - x1");
    s2.at(0, 1) = s_parse(F, "-1");
    s2.at(1, 1) = s_parse(F, "1 - x1");
    g2.at(1, 0) = s_one(F);
    REQUIRE(triple_eq(sq, triple_make(sigma, f2, s2, g2)));
}

TEST_CASE("triple equality by automaton zeroness") {
    RingDescriptor F = RingDescriptor::free_algebra(RingDescriptor::rationals(), 2);
    SigmaSet sigma = SigmaSet::augmentation_invertible(F);
    Matrix one = m_zero(F, 1, 1);
    one.at(0, 0) = s_one(F);
    auto geom = [&](const char* e) {
        Matrix s = m_zero(F, 1, 1);
        s.at(0, 0) = s_parse(F, e);
        return triple_make(sigma, one, s, one);
    };
    CohnTriple a = geom("1 - x1"), b = geom("1 - x2");
    // (a + b)^2 = a^2 + ab + ba + b^2
    CohnTriple lhs = triple_mul(triple_add(a, b), triple_add(a, b));
    CohnTriple rhs = triple_add(triple_add(triple_mul(a, a), triple_mul(a, b)),
                                triple_add(triple_mul(b, a), triple_mul(b, b)));
    REQUIRE(triple_eq(lhs, rhs));
    // ab != ba in the free algebra
    REQUIRE(!triple_eq(triple_mul(a, b), triple_mul(b, a)));
    REQUIRE(triple_is_zero(triple_sub(lhs, rhs)));
    REQUIRE(!triple_is_zero(a));
    REQUIRE(triple_is_zero(triple_zero(sigma)));

    LinearRepresentation zero_rep = triple_to_linrep(triple_sub(lhs, rhs));
    REQUIRE(linrep_is_zero(zero_rep));
    REQUIRE(!linrep_is_zero(triple_to_linrep(a)));
}

TEST_CASE("series work over a prime base field") {
    RingDescriptor F = RingDescriptor::free_algebra(RingDescriptor::prime_field(2), 1);
    SigmaSet sigma = SigmaSet::augmentation_invertible(F);
    Matrix one = m_zero(F, 1, 1);
    one.at(0, 0) = s_one(F);
    Matrix s = m_zero(F, 1, 1);
    s.at(0, 0) = s_parse(F, "1 + x1"); // = 1 - x1 over F_2
    CohnTriple inv = triple_make(sigma, one, s, one);
    CohnTriple sq = triple_mul(inv, inv);
    LinearRepresentation rep = triple_to_linrep(sq);
    // coefficients (m+1) mod 2: 1, 0, 1, 0, ...
    for (int m = 0; m <= 6; ++m) {
        Word w(m, 0);
        REQUIRE(linrep_coefficient(rep, w).value == Rat((m + 1) % 2));
    }
    // (1+x)^-1 * (1+x) = 1
    CohnTriple prod = triple_mul(inv, triple_from_scalar(sigma, s.at(0, 0)));
    REQUIRE(triple_eq(prod, triple_from_scalar(sigma, s_one(F))));
}

TEST_CASE("non-invertible augmentation is rejected") {
    RingDescriptor F = RingDescriptor::free_algebra(RingDescriptor::rationals(), 2);
    SigmaSet sigma = SigmaSet::augmentation_invertible(F);
    Matrix one = m_zero(F, 1, 1);
    one.at(0, 0) = s_one(F);
    Matrix s = m_zero(F, 1, 1);
    s.at(0, 0) = s_parse(F, "x1");
    try {
        triple_make(sigma, one, s, one);
        FAIL("expected rejection");
    } catch (const Error& e) {
        REQUIRE(e.kind == "sigma");
    }
}
