#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "localg/error.hpp"

namespace localg {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rat& q) { return boost::multiprecision::denominator(q); }

/// Deterministic Miller-Rabin, exact for all inputs below 3.3e24.
inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    Int d = n - 1;
    unsigned long r = 0;
    while (d % 2 == 0) { d /= 2; ++r; }
    for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        Int x = boost::multiprecision::powm(Int(a), d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (unsigned long i = 0; i + 1 < r; ++i) {
            x = x * x % n;
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

enum class RingKind { Integers, Rationals, PrimeField, FreeAlgebra };

/// A backend ring: Z, Q, F_p, or the free associative algebra k<x1..x_mu>
/// with k = Q or F_p. Finitely many variables, fixed by the descriptor.
struct RingDescriptor {
    RingKind kind = RingKind::Integers;
    Int p = 0;               // PrimeField modulus (also for a PrimeField base)
    RingKind base = RingKind::Rationals; // FreeAlgebra coefficient field
    int vars = 0;            // FreeAlgebra variable count, 1..9

    static RingDescriptor integers() { return {RingKind::Integers, 0, RingKind::Rationals, 0}; }
    static RingDescriptor rationals() { return {RingKind::Rationals, 0, RingKind::Rationals, 0}; }
    static RingDescriptor prime_field(const Int& p) {
        if (!is_prime(p)) fail("semantic", "prime field modulus must be prime");
        return {RingKind::PrimeField, p, RingKind::Rationals, 0};
    }
    static RingDescriptor free_algebra(const RingDescriptor& base, int vars) {
        if (base.kind != RingKind::Rationals && base.kind != RingKind::PrimeField)
            fail("semantic", "free algebra base must be Q or F_p");
        if (vars < 1 || vars > 9) fail("semantic", "free algebra supports 1..9 variables");
        return {RingKind::FreeAlgebra, base.p, base.kind, vars};
    }

    bool commutative() const { return kind != RingKind::FreeAlgebra; }
    bool is_field() const { return kind == RingKind::Rationals || kind == RingKind::PrimeField; }
    RingDescriptor base_ring() const {
        if (kind != RingKind::FreeAlgebra) return *this;
        return base == RingKind::Rationals ? rationals() : prime_field(p);
    }

    bool operator==(const RingDescriptor& o) const {
        return kind == o.kind && p == o.p &&
               (kind != RingKind::FreeAlgebra || (base == o.base && vars == o.vars));
    }
    bool operator!=(const RingDescriptor& o) const { return !(*this == o); }

    std::string name() const {
        switch (kind) {
            case RingKind::Integers: return "Z";
            case RingKind::Rationals: return "Q";
            case RingKind::PrimeField: return "F_" + p.str();
            case RingKind::FreeAlgebra: {
                std::string k = base == RingKind::Rationals ? "Q" : "F_" + p.str();
                return k + "<" + std::to_string(vars) + " vars>";
            }
        }
        return "?";
    }
};

inline void require_same_ring(const RingDescriptor& a, const RingDescriptor& b) {
    if (a != b) fail("ring-mismatch", "operands over " + a.name() + " and " + b.name());
}

/// A word in the free algebra: sequence of 0-based letter indices.
using Word = std::vector<int>;

/// Monomial order: length first, then lexicographic on letters.
struct WordLess {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

using TermMap = std::map<Word, Rat, WordLess>;

/// One element of a backend ring, always in canonical form:
///   Z      integer-valued `value`
///   Q      reduced `value` (cpp_rational invariant)
///   F_p    integer-valued `value` in [0, p)
///   free   `terms` sorted by word order, no zero coefficients; coefficients
///          canonical in the base field (F_p base: integer values in [0, p))
struct Scalar {
    RingDescriptor ring;
    Rat value;
    TermMap terms;
};

// --- base-field coefficient arithmetic (Q or F_p semantics on Rat) ---

inline Rat base_normalize(const RingDescriptor& base, const Rat& v) {
    if (base.kind == RingKind::Rationals) return v;
    // F_p: fold the denominator in via its inverse mod p.
    Int n = num(v) % base.p, d = den(v) % base.p;
    if (n < 0) n += base.p;
    if (d < 0) d += base.p;
    if (d == 0) fail("non-unit", "denominator divisible by p");
    Int inv = boost::multiprecision::powm(d, base.p - 2, base.p);
    return Rat(n * inv % base.p);
}

inline Rat base_add(const RingDescriptor& base, const Rat& a, const Rat& b) {
    return base_normalize(base, a + b);
}
inline Rat base_mul(const RingDescriptor& base, const Rat& a, const Rat& b) {
    return base_normalize(base, a * b);
}
inline Rat base_neg(const RingDescriptor& base, const Rat& a) {
    return base_normalize(base, -a);
}
inline Rat base_inv(const RingDescriptor& base, const Rat& a) {
    if (a == 0) fail("non-unit", "division by zero");
    if (base.kind == RingKind::Rationals) return Rat(1) / a;
    return base_normalize(base, Rat(Int(1), num(a)));
}

// --- construction ---

inline Scalar s_zero(const RingDescriptor& r) { return Scalar{r, Rat(0), {}}; }

inline Scalar s_from_rat(const RingDescriptor& r, const Rat& v) {
    Scalar s{r, Rat(0), {}};
    switch (r.kind) {
        case RingKind::Integers:
            if (den(v) != 1) fail("semantic", "not an integer: " + num(v).str() + "/" + den(v).str());
            s.value = v;
            break;
        case RingKind::Rationals:
            s.value = v;
            break;
        case RingKind::PrimeField:
            s.value = base_normalize(r, v);
            break;
        case RingKind::FreeAlgebra: {
            Rat c = base_normalize(r.base_ring(), v);
            if (c != 0) s.terms[{}] = c;
            break;
        }
    }
    return s;
}

inline Scalar s_from_int(const RingDescriptor& r, long v) { return s_from_rat(r, Rat(v)); }
inline Scalar s_one(const RingDescriptor& r) { return s_from_int(r, 1); }

/// coeff * word over a free-algebra ring.
inline Scalar s_monomial(const RingDescriptor& r, const Word& w, const Rat& coeff) {
    if (r.kind != RingKind::FreeAlgebra) fail("semantic", "monomial needs a free-algebra ring");
    for (int x : w)
        if (x < 0 || x >= r.vars) fail("semantic", "letter index out of range");
    Scalar s{r, Rat(0), {}};
    Rat c = base_normalize(r.base_ring(), coeff);
    if (c != 0) s.terms[w] = c;
    return s;
}

// --- predicates ---

inline bool s_is_zero(const Scalar& a) {
    return a.ring.kind == RingKind::FreeAlgebra ? a.terms.empty() : a.value == 0;
}

inline bool s_eq(const Scalar& a, const Scalar& b) {
    require_same_ring(a.ring, b.ring);
    if (a.ring.kind == RingKind::FreeAlgebra) return a.terms == b.terms;
    return a.value == b.value;
}

// --- ring operations ---

inline Scalar s_add(const Scalar& a, const Scalar& b) {
    require_same_ring(a.ring, b.ring);
    if (a.ring.kind != RingKind::FreeAlgebra) {
        Scalar s{a.ring, Rat(0), {}};
        s.value = a.ring.kind == RingKind::PrimeField ? base_add(a.ring, a.value, b.value)
                                                      : a.value + b.value;
        return s;
    }
    Scalar s{a.ring, Rat(0), a.terms};
    RingDescriptor k = a.ring.base_ring();
    for (const auto& [w, c] : b.terms) {
        auto it = s.terms.find(w);
        if (it == s.terms.end()) {
            s.terms[w] = c;
        } else {
            it->second = base_add(k, it->second, c);
            if (it->second == 0) s.terms.erase(it);
        }
    }
    return s;
}

inline Scalar s_neg(const Scalar& a) {
    Scalar s{a.ring, Rat(0), {}};
    if (a.ring.kind != RingKind::FreeAlgebra) {
        s.value = a.ring.kind == RingKind::PrimeField ? base_neg(a.ring, a.value) : -a.value;
        return s;
    }
    RingDescriptor k = a.ring.base_ring();
    for (const auto& [w, c] : a.terms) s.terms[w] = base_neg(k, c);
    return s;
}

inline Scalar s_sub(const Scalar& a, const Scalar& b) { return s_add(a, s_neg(b)); }

inline Scalar s_mul(const Scalar& a, const Scalar& b) {
    require_same_ring(a.ring, b.ring);
    if (a.ring.kind != RingKind::FreeAlgebra) {
        Scalar s{a.ring, Rat(0), {}};
        s.value = a.ring.kind == RingKind::PrimeField ? base_mul(a.ring, a.value, b.value)
                                                      : a.value * b.value;
        return s;
    }
    // Word concatenation; noncommutative.
    Scalar s{a.ring, Rat(0), {}};
    RingDescriptor k = a.ring.base_ring();
    for (const auto& [u, cu] : a.terms)
        for (const auto& [v, cv] : b.terms) {
            Word w = u;
            w.insert(w.end(), v.begin(), v.end());
            Rat c = base_mul(k, cu, cv);
            auto it = s.terms.find(w);
            if (it == s.terms.end()) {
                if (c != 0) s.terms[w] = c;
            } else {
                it->second = base_add(k, it->second, c);
                if (it->second == 0) s.terms.erase(it);
            }
        }
    return s;
}

/// Involution: identity on commutative backends, word reversal (an
/// anti-automorphism) on the free algebra.
inline Scalar s_involute(const Scalar& a) {
    if (a.ring.kind != RingKind::FreeAlgebra) return a;
    Scalar s{a.ring, Rat(0), {}};
    for (const auto& [w, c] : a.terms) {
        Word r(w.rbegin(), w.rend());
        s.terms[r] = c;
    }
    return s;
}

/// Augmentation x_i -> 0: the constant term, landing in the base field.
/// Commutative backends: the identity map.
inline Scalar s_augment(const Scalar& a) {
    if (a.ring.kind != RingKind::FreeAlgebra) return a;
    RingDescriptor k = a.ring.base_ring();
    auto it = a.terms.find(Word{});
    return it == a.terms.end() ? s_zero(k) : s_from_rat(k, it->second);
}

/// Units: Z has +-1, fields everything nonzero, the free algebra exactly the
/// nonzero constants of its base field.
inline Scalar s_invert(const Scalar& a) {
    switch (a.ring.kind) {
        case RingKind::Integers:
            if (a.value != 1 && a.value != -1) fail("non-unit", "not a unit of Z");
            return a;
        case RingKind::Rationals:
            if (a.value == 0) fail("non-unit", "division by zero");
            return s_from_rat(a.ring, Rat(1) / a.value);
        case RingKind::PrimeField:
            return s_from_rat(a.ring, base_inv(a.ring, a.value));
        case RingKind::FreeAlgebra: {
            if (a.terms.size() != 1 || !a.terms.begin()->first.empty())
                fail("non-unit", "free-algebra units are nonzero constants");
            return s_from_rat(a.ring, base_inv(a.ring.base_ring(), a.terms.begin()->second));
        }
    }
    fail("unsupported", "unreachable");
}

inline int s_degree(const Scalar& a) {
    if (a.ring.kind != RingKind::FreeAlgebra) return s_is_zero(a) ? -1 : 0;
    if (a.terms.empty()) return -1;
    return int(a.terms.rbegin()->first.size());
}

/// Drop all words longer than `max_len`. Truncation helper for series work.
inline Scalar s_truncate(const Scalar& a, int max_len) {
    if (a.ring.kind != RingKind::FreeAlgebra) return a;
    Scalar s{a.ring, Rat(0), {}};
    for (const auto& [w, c] : a.terms)
        if (int(w.size()) <= max_len) s.terms[w] = c;
    return s;
}

inline Rat s_coefficient(const Scalar& a, const Word& w) {
    if (a.ring.kind != RingKind::FreeAlgebra) {
        if (!w.empty()) return Rat(0);
        return a.value;
    }
    auto it = a.terms.find(w);
    return it == a.terms.end() ? Rat(0) : it->second;
}

// --- text form ---
// Grammar: sum of terms, `*` mandatory between factors, variables x1..x9,
// coefficients integers or fractions. Examples: -12, 3/4, 2*x1*x2 - x2 + 1.

inline std::string rat_str(const Rat& v) {
    if (den(v) == 1) return num(v).str();
    return num(v).str() + "/" + den(v).str();
}

inline std::string s_to_string(const Scalar& a) {
    if (a.ring.kind != RingKind::FreeAlgebra) return rat_str(a.value);
    if (a.terms.empty()) return "0";
    // Print longest words first, lexicographic within a length.
    std::vector<const TermMap::value_type*> ts;
    for (const auto& t : a.terms) ts.push_back(&t);
    std::sort(ts.begin(), ts.end(), [](auto* x, auto* y) {
        if (x->first.size() != y->first.size()) return x->first.size() > y->first.size();
        return x->first < y->first;
    });
    std::string out;
    bool first = true;
    for (auto* t : ts) {
        Rat c = t->second;
        bool negative = c < 0;
        if (first) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        Rat mag = negative ? Rat(-c) : c;
        if (t->first.empty()) {
            out += rat_str(mag);
        } else {
            if (mag != 1) out += rat_str(mag) + "*";
            bool fw = true;
            for (int x : t->first) {
                if (!fw) out += "*";
                out += "x" + std::to_string(x + 1);
                fw = false;
            }
        }
    }
    return out;
}

namespace detail {

struct ElementParser {
    const std::string& src;
    size_t pos = 0;
    const RingDescriptor& ring;

    void skip() { while (pos < src.size() && std::isspace((unsigned char)src[pos])) ++pos; }
    bool peek(char c) { skip(); return pos < src.size() && src[pos] == c; }
    bool take(char c) { if (peek(c)) { ++pos; return true; } return false; }

    Int integer() {
        skip();
        size_t start = pos;
        while (pos < src.size() && std::isdigit((unsigned char)src[pos])) ++pos;
        if (pos == start) fail("parse", "expected digits at offset " + std::to_string(pos));
        return Int(src.substr(start, pos - start));
    }

    // var := 'x' digit, digit in 1..9
    int variable() {
        ++pos; // 'x'
        if (pos >= src.size() || !std::isdigit((unsigned char)src[pos]))
            fail("parse", "variable needs an index digit");
        int idx = src[pos] - '0';
        ++pos;
        if (idx < 1 || idx > 9) fail("parse", "variables are x1..x9");
        if (pos < src.size() && std::isdigit((unsigned char)src[pos]))
            fail("parse", "variables are x1..x9, single digit");
        if (ring.kind != RingKind::FreeAlgebra)
            fail("parse", "variables only exist over a free algebra");
        if (idx > ring.vars) fail("parse", "variable x" + std::to_string(idx) + " out of range");
        return idx - 1;
    }

    // term := coeff | coeff '*' vars | vars, with coeff := int ('/' int)?
    Scalar term() {
        skip();
        Rat coeff(1);
        Word word;
        bool have_coeff = false;
        if (pos < src.size() && std::isdigit((unsigned char)src[pos])) {
            Int n = integer();
            if (take('/')) {
                Int d = integer();
                if (d == 0) fail("parse", "zero denominator");
                coeff = Rat(n, d);
            } else {
                coeff = Rat(n);
            }
            have_coeff = true;
        }
        bool want_var = !have_coeff;
        while (true) {
            skip();
            if (want_var || peek('*')) {
                if (!want_var) take('*');
                skip();
                if (pos < src.size() && src[pos] == 'x') {
                    word.push_back(variable());
                    want_var = false;
                    continue;
                }
                if (want_var) fail("parse", "expected a term at offset " + std::to_string(pos));
                fail("parse", "expected variable after '*'");
            }
            break;
        }
        if (word.empty()) return s_from_rat(ring, coeff);
        return s_monomial(ring, word, coeff);
    }

    Scalar element() {
        skip();
        bool neg = take('-');
        Scalar acc = term();
        if (neg) acc = s_neg(acc);
        while (true) {
            skip();
            if (take('+')) {
                acc = s_add(acc, term());
            } else if (take('-')) {
                acc = s_sub(acc, term());
            } else {
                break;
            }
        }
        skip();
        if (pos != src.size()) fail("parse", "trailing input at offset " + std::to_string(pos));
        return acc;
    }
};

} // namespace detail

/// Parse one ring element in the textual grammar over `ring`.
inline Scalar s_parse(const RingDescriptor& ring, const std::string& text) {
    detail::ElementParser p{text, 0, ring};
    return p.element();
}

} // namespace localg
