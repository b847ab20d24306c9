#pragma once

#include "localg/sigma.hpp"

namespace localg {

/// r/s with s a sigma-denominator, over a commutative backend. Canonical
/// form over Z: reduced, positive denominator. Over a field the denominator
/// is always 1.
struct OreFraction {
    SigmaSet sigma;
    Scalar num_part;
    Scalar den_part;
};

inline OreFraction frac_make(const SigmaSet& sigma, const Scalar& n, const Scalar& d) {
    if (sigma.mode != SigmaSet::Mode::Central)
        fail("semantic", "Ore fractions need a central sigma");
    require_same_ring(n.ring, sigma.ring);
    require_same_ring(d.ring, sigma.ring);
    if (!sigma_unit(sigma, d)) fail("sigma", "denominator is not a sigma-unit: " + s_to_string(d));
    if (sigma.ring.is_field()) {
        return OreFraction{sigma, s_mul(n, s_invert(d)), s_one(sigma.ring)};
    }
    // Z: reduce and normalise the sign into the denominator.
    Rat v = n.value / d.value;
    Scalar nn = s_zero(sigma.ring), dd = s_zero(sigma.ring);
    nn.value = Rat(num(v));
    dd.value = Rat(den(v));
    return OreFraction{sigma, nn, dd};
}

inline OreFraction frac_from_scalar(const SigmaSet& sigma, const Scalar& r) {
    return frac_make(sigma, r, s_one(sigma.ring));
}

inline OreFraction frac_add(const OreFraction& a, const OreFraction& b) {
    if (!sigma_eq(a.sigma, b.sigma)) fail("ring-mismatch", "fractions over different sigma sets");
    Scalar n = s_add(s_mul(a.num_part, b.den_part), s_mul(b.num_part, a.den_part));
    return frac_make(a.sigma, n, s_mul(a.den_part, b.den_part));
}

inline OreFraction frac_neg(const OreFraction& a) {
    return OreFraction{a.sigma, s_neg(a.num_part), a.den_part};
}

inline OreFraction frac_sub(const OreFraction& a, const OreFraction& b) {
    return frac_add(a, frac_neg(b));
}

inline OreFraction frac_mul(const OreFraction& a, const OreFraction& b) {
    if (!sigma_eq(a.sigma, b.sigma)) fail("ring-mismatch", "fractions over different sigma sets");
    return frac_make(a.sigma, s_mul(a.num_part, b.num_part), s_mul(a.den_part, b.den_part));
}

/// Ore equivalence by cross-multiplication; canonical forms make this a
/// direct comparison but the cross check keeps the contract visible.
inline bool frac_eq(const OreFraction& a, const OreFraction& b) {
    if (!sigma_eq(a.sigma, b.sigma)) fail("ring-mismatch", "fractions over different sigma sets");
    return s_eq(s_mul(a.num_part, b.den_part), s_mul(b.num_part, a.den_part));
}

inline bool frac_is_zero(const OreFraction& a) { return s_is_zero(a.num_part); }

inline Rat frac_value(const OreFraction& a) {
    if (a.sigma.ring.kind == RingKind::PrimeField)
        fail("unsupported", "no rational value over F_p");
    return a.num_part.value / a.den_part.value;
}

inline std::string frac_to_string(const OreFraction& a) {
    if (s_eq(a.den_part, s_one(a.sigma.ring))) return s_to_string(a.num_part);
    return s_to_string(a.num_part) + "/" + s_to_string(a.den_part);
}

} // namespace localg
