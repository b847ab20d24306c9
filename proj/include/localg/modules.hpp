#pragma once

#include "localg/complex.hpp"

namespace localg {

/// Finitely presented module: coker(rel : R^c -> R^g), relations as columns
/// of a g x c matrix.
struct ModulePresentation {
    RingDescriptor ring;
    Matrix rel;

    int generators() const { return rel.rows; }
};

inline ModulePresentation module_make(const RingDescriptor& r, Matrix rel) {
    require_same_ring(rel.ring, r);
    return ModulePresentation{r, std::move(rel)};
}

/// Invariant factors of a finite presentation over Z (those > 1) plus the
/// free rank of the cokernel.
inline DegreeHomology module_structure_z(const ModulePresentation& M) {
    require_integer_matrix(M.rel, "module_structure");
    SmithResult s = smith_normal_form(M.rel);
    DegreeHomology h{0, M.rel.rows - s.rank, {}};
    for (const Int& d : s.diag)
        if (d != 1) h.torsion.push_back(d);
    return h;
}

/// Z is hereditary: the image of the relations is free, so every module has
/// a length-one resolution 0 -> Z^r -> Z^g -> M -> 0. The returned complex
/// sits in degrees 0 and 1 with the image-basis matrix as differential.
inline ChainComplex free_resolution_z(const ModulePresentation& M) {
    require_integer_matrix(M.rel, "free_resolution");
    Matrix basis_rows = hermite_rows(m_transpose(M.rel)); // basis of the image lattice
    Matrix B = m_transpose(basis_rows);                   // g x r, full column rank
    return cx_make(M.ring, 0, {M.rel.rows, B.cols}, {B});
}

/// Tor_i^Z(M, N) for finitely presented M, N: homology of the total complex
/// of the tensor product of the two free resolutions. Degrees above 1 vanish
/// because both resolutions have length one.
inline HomologyResult tor_z(const ModulePresentation& M, const ModulePresentation& N, int max_i) {
    ChainComplex P = free_resolution_z(M), Q = free_resolution_z(N);
    ChainComplex T = tensor_product(P, Q);
    HomologyResult H = homology_z(T);
    HomologyResult out;
    for (int i = 0; i <= max_i; ++i) {
        if (i <= T.hi() && i >= T.lo) {
            DegreeHomology h = H[i - T.lo];
            h.degree = i;
            out.push_back(h);
        } else {
            out.push_back({i, 0, {}});
        }
    }
    return out;
}

/// Tor_i^Z(M, sigma^-1 Z): localize the length-one resolution of M and read
/// its homology as sigma^-1 Z-modules. Flatness of the localization shows up
/// as Tor_1 = 0; the computation checks it rather than assuming it.
inline HomologyResult tor_z_localized(const ModulePresentation& M, const SigmaSet& sigma,
                                      int max_i) {
    if (sigma.ring.kind != RingKind::Integers)
        fail("unsupported", "localized Tor runs over Z");
    ChainComplex P = free_resolution_z(M);
    HomologyResult H = localized_homology(P, sigma);
    HomologyResult out;
    for (int i = 0; i <= max_i; ++i) {
        if (i >= P.lo && i <= P.hi()) {
            DegreeHomology h = H[i - P.lo];
            h.degree = i;
            out.push_back(h);
        } else {
            out.push_back({i, 0, {}});
        }
    }
    return out;
}

/// Tor over a field: modules are vector spaces, Tor_0 multiplies dimensions
/// and everything higher vanishes.
inline HomologyResult tor_field(const ModulePresentation& M, const ModulePresentation& N,
                                int max_i) {
    require_field_matrix(M.rel, "tor_field");
    long dm = M.rel.rows - rank_field(M.rel);
    long dn = N.rel.rows - rank_field(N.rel);
    HomologyResult out;
    out.push_back({0, dm * dn, {}});
    for (int i = 1; i <= max_i; ++i) out.push_back({i, 0, {}});
    return out;
}

} // namespace localg
