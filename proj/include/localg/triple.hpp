#pragma once

#include "localg/fraction.hpp"
#include "localg/linalg.hpp"
#include "localg/sigma.hpp"

namespace localg {

/// Schofield-style presentation of an element of sigma^-1 R: a row f (1 x n),
/// a sigma-matrix s (n x n), a column g (n x 1), standing for f s^-1 g.
/// n = 0 is the canonical zero element.
struct CohnTriple {
    SigmaSet sigma;
    Matrix f, s, g;

    int size() const { return s.rows; }
};

inline void triple_check(const CohnTriple& t) {
    int n = t.s.rows;
    require_shape(t.s, n, n, "triple s");
    require_shape(t.f, 1, n, "triple f");
    require_shape(t.g, n, 1, "triple g");
    require_same_ring(t.f.ring, t.sigma.ring);
    require_same_ring(t.s.ring, t.sigma.ring);
    require_same_ring(t.g.ring, t.sigma.ring);
    if (n > 0 && !sigma_validate(t.sigma, t.s))
        fail("sigma", "triple denominator matrix is not in sigma");
}

inline CohnTriple triple_zero(const SigmaSet& sigma) {
    RingDescriptor r = sigma.ring;
    return CohnTriple{sigma, m_zero(r, 1, 0), m_zero(r, 0, 0), m_zero(r, 0, 1)};
}

inline CohnTriple triple_make(const SigmaSet& sigma, Matrix f, Matrix s, Matrix g) {
    CohnTriple t{sigma, std::move(f), std::move(s), std::move(g)};
    triple_check(t);
    return t;
}

/// r -> (r, [[1]], [1]): the canonical image of R in sigma^-1 R.
inline CohnTriple triple_from_scalar(const SigmaSet& sigma, const Scalar& r) {
    require_same_ring(r.ring, sigma.ring);
    RingDescriptor R = sigma.ring;
    Matrix f = m_zero(R, 1, 1), s = m_identity(R, 1), g = m_zero(R, 1, 1);
    f.at(0, 0) = r;
    g.at(0, 0) = s_one(R);
    return triple_make(sigma, f, s, g);
}

inline CohnTriple triple_neg(const CohnTriple& a) {
    return CohnTriple{a.sigma, m_neg(a.f), a.s, a.g};
}

/// Sum: block-diagonal s, concatenated f and g. A zero-size operand is the
/// additive identity.
inline CohnTriple triple_add(const CohnTriple& a, const CohnTriple& b) {
    if (!sigma_eq(a.sigma, b.sigma)) fail("ring-mismatch", "triples over different sigma sets");
    if (a.size() == 0) return b;
    if (b.size() == 0) return a;
    RingDescriptor R = a.sigma.ring;
    int n = a.size(), m = b.size();
    Matrix f = m_zero(R, 1, n + m), s = m_zero(R, n + m, n + m), g = m_zero(R, n + m, 1);
    m_paste(f, a.f, 0, 0);
    m_paste(f, b.f, 0, n);
    m_paste(s, a.s, 0, 0);
    m_paste(s, b.s, n, n);
    m_paste(g, a.g, 0, 0);
    m_paste(g, b.g, n, 0);
    return triple_make(a.sigma, f, s, g);
}

/// Product: s block upper triangular with off-diagonal -g*f', so that
/// [f 0] s^-1 [0; g'] = f s^-1 g f' s'^-1 g'. A zero-size operand annihilates.
inline CohnTriple triple_mul(const CohnTriple& a, const CohnTriple& b) {
    if (!sigma_eq(a.sigma, b.sigma)) fail("ring-mismatch", "triples over different sigma sets");
    if (a.size() == 0 || b.size() == 0) return triple_zero(a.sigma);
    RingDescriptor R = a.sigma.ring;
    int n = a.size(), m = b.size();
    Matrix f = m_zero(R, 1, n + m), s = m_zero(R, n + m, n + m), g = m_zero(R, n + m, 1);
    m_paste(f, a.f, 0, 0);
    m_paste(s, a.s, 0, 0);
    m_paste(s, m_neg(m_mul(a.g, b.f)), 0, n);
    m_paste(s, b.s, n, n);
    m_paste(g, b.g, n, 0);
    return triple_make(a.sigma, f, s, g);
}

inline CohnTriple triple_sub(const CohnTriple& a, const CohnTriple& b) {
    return triple_add(a, triple_neg(b));
}

/// Evaluate over an Ore backend: solve s y = g exactly in the fraction field
/// and return f y as a canonical fraction.
inline OreFraction triple_eval_ore(const CohnTriple& t) {
    if (t.sigma.mode != SigmaSet::Mode::Central)
        fail("unsupported", "Ore evaluation needs a central sigma");
    if (t.size() == 0) return frac_from_scalar(t.sigma, s_zero(t.sigma.ring));
    RingDescriptor R = t.sigma.ring;
    Matrix s = t.s, g = t.g, f = t.f;
    if (R.kind == RingKind::Integers) {
        s = m_to_rational(s);
        g = m_to_rational(g);
        f = m_to_rational(f);
    } else if (!R.is_field()) {
        fail("unsupported", "Ore evaluation over this ring");
    }
    auto sol = solve_field(s, g);
    if (!sol || sol->kernel.cols != 0) fail("singular", "triple denominator matrix is singular");
    Matrix v = m_mul(f, sol->particular); // 1 x 1
    Rat val = v.at(0, 0).value;
    if (R.kind == RingKind::Integers) {
        Scalar n = s_from_rat(R, Rat(num(val)));
        Scalar d = s_from_rat(R, Rat(den(val)));
        return frac_make(t.sigma, n, d);
    }
    return frac_from_scalar(t.sigma, s_from_rat(R, val));
}

} // namespace localg
