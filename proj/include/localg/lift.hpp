#pragma once

#include <optional>

#include "localg/complex.hpp"

namespace localg {

enum class VerifyStatus { Verified, Unverified };

inline const char* verify_status_name(VerifyStatus s) {
    return s == VerifyStatus::Verified ? "verified" : "unverified";
}

/// A lift of a localized complex to the base ring, with the diagonal-unit
/// witness: unit e_n per degree satisfying e_{n-1} * lifted_d_n = D.d_n * e_n
/// over the fraction field, so the units assemble an isomorphism
/// sigma^-1(lifted) -> D.
struct LiftResult {
    ChainComplex lifted;
    std::vector<Rat> units; // indexed from the bottom degree
    VerifyStatus status = VerifyStatus::Unverified;
};

inline bool sigma_is_whole_fraction_field(const SigmaSet& sigma) {
    return sigma.ring.is_field() ||
           (sigma.ring.kind == RingKind::Integers && sigma.all_nonzero);
}

/// Clear denominators one differential at a time: c_n = lcm of the entry
/// denominators of d_n, required to be a sigma-unit. The witness units are
/// the running products e_lo = 1, e_n = e_{n-1} * c_n.
inline LiftResult lift_by_clearing(const LocalizedComplex& D) {
    if (D.sigma.ring.kind != RingKind::Integers)
        fail("unsupported", "clearing lifts fractions over Z");
    const ChainComplex& C = D.cx;
    if (C.ring.kind != RingKind::Rationals)
        fail("ring-mismatch", "localized complex stores fraction entries");

    std::vector<Matrix> lifted_diffs;
    std::vector<Rat> units{Rat(1)};
    RingDescriptor Q = RingDescriptor::rationals();
    for (size_t i = 0; i < C.diffs.size(); ++i) {
        const Matrix& d = C.diffs[i];
        Int c = 1;
        for (const auto& e : d.a) c = boost::multiprecision::lcm(c, den(e.value));
        Scalar cd = s_from_rat(RingDescriptor::integers(), Rat(c));
        if (!sigma_unit(D.sigma, cd))
            fail("sigma", "denominator lcm " + c.str() + " is not a sigma-unit");
        Matrix scaled = m_scale(s_from_rat(Q, Rat(c)), d);
        lifted_diffs.push_back(m_to_integer(scaled));
        units.push_back(units.back() * Rat(c));
    }
    ChainComplex lifted =
        cx_make(RingDescriptor::integers(), C.lo, C.ranks, std::move(lifted_diffs));

    // Witness identity e_{n-1} * lifted_d = D.d * e_n, degree by degree.
    for (size_t i = 0; i < C.diffs.size(); ++i) {
        Matrix lhs = m_scale(s_from_rat(Q, units[i]), m_to_rational(lifted.diffs[i]));
        Matrix rhs = m_scale(s_from_rat(Q, units[i + 1]), C.diffs[i]);
        if (!m_eq(lhs, rhs)) fail("semantic", "lift witness identity failed");
    }

    LiftResult res{lifted, units, VerifyStatus::Unverified};
    if (sigma_is_whole_fraction_field(D.sigma)) {
        HomologyResult hl = homology_field(m_to_rational_complex(lifted));
        HomologyResult hd = homology_field(C);
        bool same = hl.size() == hd.size();
        for (size_t i = 0; same && i < hl.size(); ++i)
            same = hl[i].free_rank == hd[i].free_rank;
        if (same) res.status = VerifyStatus::Verified;
    }
    return res;
}

/// Does D present sigma^-1 C? Over a field localization: Betti comparison,
/// or acyclicity of the cone when a comparison map is supplied. Other
/// backends return Unverified rather than guessing.
inline VerifyStatus verify_lift(const ChainComplex& C, const LocalizedComplex& D,
                                const std::optional<ChainMap>& phi = std::nullopt) {
    if (C.ring.kind != RingKind::Integers) fail("unsupported", "lift verification starts over Z");
    if (!sigma_is_whole_fraction_field(D.sigma)) return VerifyStatus::Unverified;
    ChainComplex LC = localize_complex_central(C, D.sigma).cx;
    if (phi) {
        map_validate(*phi);
        return is_quasi_iso(*phi) ? VerifyStatus::Verified : VerifyStatus::Unverified;
    }
    HomologyResult hc = homology_field(LC), hd = homology_field(D.cx);
    int lo = std::min(LC.lo, D.cx.lo), hi = std::max(LC.hi(), D.cx.hi());
    for (int n = lo; n <= hi; ++n) {
        long a = (n >= LC.lo && n <= LC.hi()) ? hc[n - LC.lo].free_rank : 0;
        long b = (n >= D.cx.lo && n <= D.cx.hi()) ? hd[n - D.cx.lo].free_rank : 0;
        if (a != b) return VerifyStatus::Unverified;
    }
    return VerifyStatus::Verified;
}

/// Minimal model over a field: zero differentials, ranks the Betti numbers.
inline ChainComplex minimal_model_field(const ChainComplex& C) {
    if (!C.ring.is_field()) fail("ring-mismatch", "minimal models need a field backend");
    std::vector<int> ranks;
    for (int n = C.lo; n <= C.hi(); ++n) ranks.push_back(int(betti_at(C, n)));
    std::vector<Matrix> diffs;
    for (size_t i = 0; i + 1 < ranks.size(); ++i)
        diffs.push_back(m_zero(C.ring, ranks[i], ranks[i + 1]));
    return cx_make(C.ring, C.lo, std::move(ranks), std::move(diffs));
}

/// Shortening data: X and Y attach in the top two degrees, r : X -> Y and
/// g : C_0 -> Y fill in the new differential [[d, 0], [g, r]].
struct ShortenResult {
    ChainComplex shortened;
    VerifyStatus status = VerifyStatus::Unverified;
};

/// Replace C (supported in degrees [lo, 1], the top degree being the one to
/// remove) by B with B_0 = C_0 (+) X, B_{-1} = C_{-1} (+) Y, lower degrees
/// copied. The next differential annihilates the Y summand by construction;
/// cx_make still checks d^2 = 0. Verification compares localized homology.
inline ShortenResult shorten_left(const ChainComplex& C, const SigmaSet& sigma, int x_rank,
                                  int y_rank, const Matrix& r, const Matrix& g) {
    if (C.ring.kind != RingKind::Integers) fail("unsupported", "shortening runs over Z");
    if (C.hi() > 1) fail("shape", "complex must be supported in degrees <= 1");
    require_shape(r, y_rank, x_rank, "shorten r");
    require_shape(g, y_rank, C.rank_at(0), "shorten g");
    require_same_ring(r.ring, C.ring);
    require_same_ring(g.ring, C.ring);

    int lo = std::min(C.lo, -1);
    std::vector<int> ranks;
    for (int n = lo; n <= 0; ++n) {
        if (n == 0)
            ranks.push_back(C.rank_at(0) + x_rank);
        else if (n == -1)
            ranks.push_back(C.rank_at(-1) + y_rank);
        else
            ranks.push_back(C.rank_at(n));
    }
    std::vector<Matrix> diffs;
    for (int n = lo + 1; n <= 0; ++n) {
        if (n == 0) {
            Matrix d = m_zero(C.ring, C.rank_at(-1) + y_rank, C.rank_at(0) + x_rank);
            m_paste(d, C.diff(0), 0, 0);
            m_paste(d, g, C.rank_at(-1), 0);
            m_paste(d, r, C.rank_at(-1), C.rank_at(0));
            diffs.push_back(d);
        } else if (n == -1) {
            Matrix d = m_zero(C.ring, C.rank_at(-2), C.rank_at(-1) + y_rank);
            m_paste(d, C.diff(-1), 0, 0); // zero block over Y: annihilated
            diffs.push_back(d);
        } else {
            diffs.push_back(C.diff(n));
        }
    }
    ChainComplex B = cx_make(C.ring, lo, std::move(ranks), std::move(diffs));

    HomologyResult hb = localized_homology(B, sigma);
    HomologyResult hc = localized_homology(C, sigma);
    bool same = true;
    int clo = std::min(B.lo, C.lo), chi = std::max(B.hi(), C.hi());
    for (int n = clo; n <= chi && same; ++n) {
        DegreeHomology a = (n >= B.lo && n <= B.hi()) ? hb[n - B.lo] : DegreeHomology{n, 0, {}};
        DegreeHomology b = (n >= C.lo && n <= C.hi()) ? hc[n - C.lo] : DegreeHomology{n, 0, {}};
        same = a.free_rank == b.free_rank && a.torsion == b.torsion;
    }
    return ShortenResult{B, same ? VerifyStatus::Verified : VerifyStatus::Unverified};
}

/// Obstruction report for lifting a length-3 localized complex in one step.
struct ObstructionReport {
    bool target_trivial = false;
    bool class_zero = false;
    std::string status; // "certified-trivial" or "unsupported"
    std::string reason;
};

namespace detail {

inline ObstructionReport toda_report_for(const RingDescriptor& base) {
    // The obstruction lives in a quotient of Tor_2 over the base ring; every
    // supported backend (Z, fields, free algebras) is hereditary, so Tor_2
    // vanishes and the class is zero with no computation left to do.
    bool hereditary = base.kind == RingKind::Integers || base.is_field() ||
                      base.kind == RingKind::FreeAlgebra;
    if (!hereditary)
        return {false, false, "unsupported", "base ring of unknown global dimension"};
    return {true, true, "certified-trivial",
            "base ring is hereditary: the Tor_2 target group vanishes"};
}

} // namespace detail

inline ObstructionReport toda_obstruction(const LocalizedComplex& D) {
    if (int(D.cx.ranks.size()) != 4)
        fail("shape", "obstruction is defined for length-3 complexes");
    cx_validate(D.cx);
    return detail::toda_report_for(D.sigma.ring);
}

inline ObstructionReport toda_obstruction(const TripleComplex& D) {
    if (int(D.ranks.size()) != 4)
        fail("shape", "obstruction is defined for length-3 complexes");
    triple_cx_validate(D);
    return detail::toda_report_for(D.sigma.ring);
}

} // namespace localg
