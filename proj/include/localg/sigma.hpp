#pragma once

#include "localg/linalg.hpp"
#include "localg/matrix.hpp"

namespace localg {

/// A set of maps to invert. Central mode: a multiplicative set of central
/// scalars, given by generators or as "all nonzero". Matrix mode (free
/// algebra): the square matrices whose augmentation is invertible over the
/// base field; an explicit seed list may be carried but membership is decided
/// by the augmentation test.
struct SigmaSet {
    enum class Mode { Central, Matrices };

    RingDescriptor ring;
    Mode mode = Mode::Central;
    std::vector<Scalar> generators; // central mode
    bool all_nonzero = false;       // central mode: sigma = R \ {0}
    std::vector<Matrix> seeds;      // matrix mode, informational

    static SigmaSet central(const RingDescriptor& r, std::vector<Scalar> gens) {
        if (!r.commutative()) fail("semantic", "central sigma needs a commutative ring");
        for (auto& g : gens) {
            require_same_ring(g.ring, r);
            if (s_is_zero(g)) fail("semantic", "sigma generator is zero");
        }
        return SigmaSet{r, Mode::Central, std::move(gens), false, {}};
    }

    static SigmaSet all_nonzero_of(const RingDescriptor& r) {
        if (!r.commutative()) fail("semantic", "central sigma needs a commutative ring");
        return SigmaSet{r, Mode::Central, {}, true, {}};
    }

    static SigmaSet augmentation_invertible(const RingDescriptor& r) {
        if (r.kind != RingKind::FreeAlgebra)
            fail("semantic", "matrix-mode sigma is for free-algebra backends");
        return SigmaSet{r, Mode::Matrices, {}, false, {}};
    }
};

/// Is the (nonzero) scalar d invertible in sigma^-1 R? Over Z this asks that
/// every prime of d divides some generator, i.e. d divides a product of
/// generator powers; reduction of fractions can leave such proper divisors.
inline bool sigma_unit(const SigmaSet& sigma, const Scalar& d) {
    if (sigma.mode != SigmaSet::Mode::Central) fail("semantic", "scalar test needs central sigma");
    require_same_ring(d.ring, sigma.ring);
    if (s_is_zero(d)) return false;
    if (sigma.ring.is_field() || sigma.all_nonzero) return true;
    if (sigma.ring.kind == RingKind::Integers) {
        Int v = abs(num(d.value));
        Int prod = 1;
        for (const auto& g : sigma.generators) prod *= abs(num(g.value));
        while (v != 1) {
            Int g = boost::multiprecision::gcd(v, prod);
            if (g == 1) return false;
            v /= g;
        }
        return true;
    }
    fail("unsupported", "central sigma over this ring");
}

namespace detail {

inline bool triangular_with_sigma_diagonal(const SigmaSet& sigma, const Matrix& s, bool upper) {
    for (int i = 0; i < s.rows; ++i)
        for (int j = 0; j < s.cols; ++j) {
            if (i == j) {
                if (!sigma_unit(sigma, s.at(i, j))) return false;
            } else if ((upper && i > j) || (!upper && i < j)) {
                if (!s_is_zero(s.at(i, j))) return false;
            }
        }
    return true;
}

} // namespace detail

/// Membership test for a square matrix. Central mode accepts triangular
/// matrices whose diagonal entries are sigma-units: that is the closure the
/// triple operations generate from scalar seeds, and such a matrix is
/// invertible over sigma^-1 R. Matrix mode accepts s iff the augmented matrix
/// is invertible over the base field.
inline bool sigma_validate(const SigmaSet& sigma, const Matrix& s) {
    require_same_ring(s.ring, sigma.ring);
    if (s.rows != s.cols) return false;
    if (sigma.mode == SigmaSet::Mode::Central)
        return detail::triangular_with_sigma_diagonal(sigma, s, true) ||
               detail::triangular_with_sigma_diagonal(sigma, s, false);
    // Free algebra: augment entrywise, test invertibility over k.
    Matrix eps = m_zero(sigma.ring.base_ring(), s.rows, s.cols);
    for (int i = 0; i < s.rows; ++i)
        for (int j = 0; j < s.cols; ++j) eps.at(i, j) = s_augment(s.at(i, j));
    return invertible_field(eps);
}

inline bool sigma_eq(const SigmaSet& a, const SigmaSet& b) {
    if (a.ring != b.ring || a.mode != b.mode || a.all_nonzero != b.all_nonzero) return false;
    if (a.generators.size() != b.generators.size()) return false;
    for (size_t i = 0; i < a.generators.size(); ++i)
        if (!s_eq(a.generators[i], b.generators[i])) return false;
    return true;
}

} // namespace localg
