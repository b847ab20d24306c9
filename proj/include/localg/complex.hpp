#pragma once

#include "localg/linalg.hpp"
#include "localg/series.hpp"
#include "localg/snf.hpp"

namespace localg {

/// Bounded complex of finitely generated free modules, homological indexing:
/// d_n : C_n -> C_{n-1}. Degree lo+i has rank ranks[i]; diffs[i] is the map
/// from degree lo+i+1 down to lo+i, of shape ranks[i] x ranks[i+1].
struct ChainComplex {
    RingDescriptor ring;
    int lo = 0;
    std::vector<int> ranks;
    std::vector<Matrix> diffs;

    int hi() const { return lo + int(ranks.size()) - 1; }
    int rank_at(int n) const {
        if (n < lo || n > hi()) return 0;
        return ranks[n - lo];
    }
    /// d_n : C_n -> C_{n-1}, a zero map of the right shape outside the range.
    Matrix diff(int n) const {
        if (n <= lo || n > hi()) return m_zero(ring, rank_at(n - 1), rank_at(n));
        return diffs[n - lo - 1];
    }
};

inline void cx_validate(const ChainComplex& C) {
    if (C.ranks.empty()) fail("semantic", "complex needs at least one degree");
    for (int r : C.ranks)
        if (r < 0) fail("semantic", "negative rank");
    if (C.diffs.size() + 1 != C.ranks.size())
        fail("shape", "complex needs one differential per adjacent degree pair");
    for (size_t i = 0; i < C.diffs.size(); ++i) {
        require_same_ring(C.diffs[i].ring, C.ring);
        require_shape(C.diffs[i], C.ranks[i], C.ranks[i + 1], "complex differential");
    }
    for (size_t i = 0; i + 1 < C.diffs.size(); ++i)
        if (!m_is_zero(m_mul(C.diffs[i], C.diffs[i + 1])))
            fail("semantic", "d2-nonzero at degree " + std::to_string(C.lo + int(i) + 2));
}

inline ChainComplex cx_make(const RingDescriptor& r, int lo, std::vector<int> ranks,
                            std::vector<Matrix> diffs) {
    ChainComplex C{r, lo, std::move(ranks), std::move(diffs)};
    cx_validate(C);
    return C;
}

/// Single free module sitting in one degree.
inline ChainComplex cx_module(const RingDescriptor& r, int degree, int rank) {
    return cx_make(r, degree, {rank}, {});
}

/// Shift by k: degrees move up, differentials pick up (-1)^k.
inline ChainComplex cx_shift(const ChainComplex& C, int k) {
    ChainComplex S = C;
    S.lo += k;
    if (k % 2 != 0)
        for (auto& d : S.diffs) d = m_neg(d);
    return S;
}

/// Degreewise map of complexes; component at degree n has shape
/// target.rank(n) x source.rank(n). Components are stored over the source
/// support and are zero elsewhere.
struct ChainMap {
    ChainComplex source, target;
    std::vector<Matrix> comps;

    Matrix comp_at(int n) const {
        if (n < source.lo || n > source.hi() || target.rank_at(n) == 0)
            return m_zero(source.ring, target.rank_at(n), source.rank_at(n));
        return comps[n - source.lo];
    }
};

inline void map_validate(const ChainMap& f) {
    require_same_ring(f.source.ring, f.target.ring);
    if (f.comps.size() != f.source.ranks.size())
        fail("shape", "chain map needs one component per source degree");
    for (int n = f.source.lo; n <= f.source.hi(); ++n)
        require_shape(f.comps[n - f.source.lo], f.target.rank_at(n), f.source.rank_at(n),
                      "chain map component");
    // Commutation d_D f_n = f_{n-1} d_C on the joint support.
    for (int n = f.source.lo; n <= f.source.hi(); ++n) {
        Matrix lhs = m_mul(f.target.diff(n), f.comp_at(n));
        Matrix rhs = m_mul(f.comp_at(n - 1), f.source.diff(n));
        if (!m_eq(lhs, rhs)) fail("semantic", "chain map fails to commute at degree " + std::to_string(n));
    }
}

inline ChainMap map_make(ChainComplex source, ChainComplex target, std::vector<Matrix> comps) {
    ChainMap f{std::move(source), std::move(target), std::move(comps)};
    map_validate(f);
    return f;
}

inline ChainMap map_identity(const ChainComplex& C) {
    std::vector<Matrix> comps;
    for (int n = C.lo; n <= C.hi(); ++n) comps.push_back(m_identity(C.ring, C.rank_at(n)));
    return map_make(C, C, std::move(comps));
}

/// Mapping cone: cone(f)_n = C_{n-1} (+) D_n with differential
/// [[-d_C, 0], [f, d_D]].
inline ChainComplex cone(const ChainMap& f) {
    const ChainComplex &C = f.source, &D = f.target;
    int lo = std::min(C.lo + 1, D.lo), hi = std::max(C.hi() + 1, D.hi());
    std::vector<int> ranks;
    for (int n = lo; n <= hi; ++n) ranks.push_back(C.rank_at(n - 1) + D.rank_at(n));
    std::vector<Matrix> diffs;
    for (int n = lo + 1; n <= hi; ++n) {
        Matrix d = m_zero(C.ring, C.rank_at(n - 2) + D.rank_at(n - 1),
                          C.rank_at(n - 1) + D.rank_at(n));
        m_paste(d, m_neg(C.diff(n - 1)), 0, 0);
        m_paste(d, f.comp_at(n - 1), C.rank_at(n - 2), 0);
        m_paste(d, D.diff(n), C.rank_at(n - 2), C.rank_at(n - 1));
        diffs.push_back(d);
    }
    return cx_make(C.ring, lo, std::move(ranks), std::move(diffs));
}

/// Inclusion D -> cone(f) and projection cone(f) -> C[-1] as plain matrices
/// per degree, used for the long exact sequence.
inline Matrix cone_inclusion_at(const ChainMap& f, int n) {
    const ChainComplex &C = f.source, &D = f.target;
    Matrix m = m_zero(C.ring, C.rank_at(n - 1) + D.rank_at(n), D.rank_at(n));
    m_paste(m, m_identity(C.ring, D.rank_at(n)), C.rank_at(n - 1), 0);
    return m;
}

inline Matrix cone_projection_at(const ChainMap& f, int n) {
    const ChainComplex &C = f.source, &D = f.target;
    Matrix m = m_zero(C.ring, C.rank_at(n - 1), C.rank_at(n - 1) + D.rank_at(n));
    m_paste(m, m_identity(C.ring, C.rank_at(n - 1)), 0, 0);
    return m;
}

/// Basis layout of (C (x) D)_n: live blocks by ascending p, basis pair
/// (e^C_p[i], e^D_{n-p}[j]) at block offset + i*rank(D_{n-p}) + j.
inline std::vector<int> tensor_blocks(const ChainComplex& C, const ChainComplex& D, int n) {
    std::vector<int> ps;
    for (int p = std::max(C.lo, n - D.hi()); p <= std::min(C.hi(), n - D.lo); ++p)
        if (C.rank_at(p) > 0 && D.rank_at(n - p) > 0) ps.push_back(p);
    return ps;
}

/// Offset of block p inside degree n, or -1 when the block is not live.
inline int tensor_offset(const ChainComplex& C, const ChainComplex& D, int n, int p) {
    int off = 0;
    for (int q : tensor_blocks(C, D, n)) {
        if (q == p) return off;
        off += C.rank_at(q) * D.rank_at(n - q);
    }
    return -1;
}

inline int tensor_rank(const ChainComplex& C, const ChainComplex& D, int n) {
    int r = 0;
    for (int p : tensor_blocks(C, D, n)) r += C.rank_at(p) * D.rank_at(n - p);
    return r;
}

/// Tensor product with the Koszul sign: (C (x) D)_n = sum_p C_p (x) D_{n-p},
/// blocks laid out by tensor_blocks/tensor_offset;
/// d(x (x) y) = dx (x) y + (-1)^p x (x) dy.
inline ChainComplex tensor_product(const ChainComplex& C, const ChainComplex& D) {
    require_same_ring(C.ring, D.ring);
    int lo = C.lo + D.lo, hi = C.hi() + D.hi();
    std::vector<int> ranks;
    for (int n = lo; n <= hi; ++n) ranks.push_back(tensor_rank(C, D, n));
    std::vector<Matrix> diffs;
    for (int n = lo + 1; n <= hi; ++n) {
        Matrix d = m_zero(C.ring, tensor_rank(C, D, n - 1), tensor_rank(C, D, n));
        for (int p : tensor_blocks(C, D, n)) {
            int q = n - p, col = tensor_offset(C, D, n, p);
            int r1 = tensor_offset(C, D, n - 1, p - 1);
            if (r1 >= 0 && C.rank_at(p - 1) > 0)
                m_paste(d, m_kron(C.diff(p), m_identity(C.ring, D.rank_at(q))), r1, col);
            int r2 = tensor_offset(C, D, n - 1, p);
            if (r2 >= 0 && D.rank_at(q - 1) > 0) {
                Matrix blk = m_kron(m_identity(C.ring, C.rank_at(p)), D.diff(q));
                if (p % 2 != 0) blk = m_neg(blk);
                m_paste(d, blk, r2, col);
            }
        }
        diffs.push_back(d);
    }
    return cx_make(C.ring, lo, std::move(ranks), std::move(diffs));
}

/// Homology of one degree, described by a free rank and the invariant
/// factors greater than one.
struct DegreeHomology {
    int degree = 0;
    long free_rank = 0;
    std::vector<Int> torsion;

    bool trivial() const { return free_rank == 0 && torsion.empty(); }
};

using HomologyResult = std::vector<DegreeHomology>;

/// Cycle basis and the boundary image expressed in it: H_n = coker of
/// `boundaries_in_cycles` acting on the cycle coordinates.
struct HomologyPresentation {
    Matrix cycles;               // rank_n x k, basis of ker d_n
    Matrix boundaries_in_cycles; // k x rank_{n+1}, solves cycles * X = d_{n+1}
};

inline HomologyPresentation homology_presentation_z(const ChainComplex& C, int n) {
    require_integer_matrix(C.diff(n), "homology");
    Matrix K = n <= C.lo ? m_identity(C.ring, C.rank_at(n)) : z_kernel_basis(C.diff(n));
    Matrix B = C.diff(n + 1);
    auto X = solve_integer(K, B);
    if (!X) fail("semantic", "boundaries do not lie in the cycle lattice");
    return {K, *X};
}

inline DegreeHomology homology_z_at(const ChainComplex& C, int n) {
    HomologyPresentation hp = homology_presentation_z(C, n);
    SmithResult s = smith_normal_form(hp.boundaries_in_cycles);
    DegreeHomology h{n, hp.cycles.cols - s.rank, {}};
    for (const Int& d : s.diag)
        if (d != 1) h.torsion.push_back(d);
    return h;
}

inline HomologyResult homology_z(const ChainComplex& C) {
    if (C.ring.kind != RingKind::Integers) fail("ring-mismatch", "integral homology needs Z");
    HomologyResult out;
    for (int n = C.lo; n <= C.hi(); ++n) out.push_back(homology_z_at(C, n));
    return out;
}

inline long betti_at(const ChainComplex& C, int n) {
    if (!C.ring.is_field()) fail("ring-mismatch", "Betti numbers need a field");
    long kernel = C.rank_at(n) - (n <= C.lo ? 0 : rank_field(C.diff(n)));
    long image = n >= C.hi() ? 0 : rank_field(C.diff(n + 1));
    return kernel - image;
}

inline HomologyResult homology_field(const ChainComplex& C) {
    HomologyResult out;
    for (int n = C.lo; n <= C.hi(); ++n) out.push_back({n, betti_at(C, n), {}});
    return out;
}

inline HomologyResult homology_any(const ChainComplex& C) {
    return C.ring.kind == RingKind::Integers ? homology_z(C) : homology_field(C);
}

inline bool homology_trivial(const HomologyResult& H) {
    for (const auto& h : H)
        if (!h.trivial()) return false;
    return true;
}

/// Quasi-isomorphism test over a field: the cone is acyclic.
inline bool is_quasi_iso(const ChainMap& f) {
    if (!f.source.ring.is_field()) fail("ring-mismatch", "quasi-iso test runs over a field");
    return homology_trivial(homology_field(cone(f)));
}

// --- localization of complexes ---

/// Complex over sigma^-1 R for a central sigma over Z (or a field): entries
/// are fractions, stored over Q; sigma rides along for denominator policy.
struct LocalizedComplex {
    SigmaSet sigma;
    ChainComplex cx;
};

/// Complex with Cohn-triple entries, the free-algebra localization.
struct TripleComplex {
    SigmaSet sigma;
    int lo = 0;
    std::vector<int> ranks;
    // diffs[i][r][c] : entry (r, c) of the map from degree lo+i+1 to lo+i
    std::vector<std::vector<std::vector<CohnTriple>>> diffs;

    int hi() const { return lo + int(ranks.size()) - 1; }
};

inline void triple_cx_validate(const TripleComplex& T) {
    if (T.ranks.empty()) fail("semantic", "complex needs at least one degree");
    if (T.diffs.size() + 1 != T.ranks.size())
        fail("shape", "complex needs one differential per adjacent degree pair");
    for (size_t i = 0; i < T.diffs.size(); ++i) {
        if (int(T.diffs[i].size()) != T.ranks[i]) fail("shape", "triple differential row count");
        for (const auto& row : T.diffs[i])
            if (int(row.size()) != T.ranks[i + 1]) fail("shape", "triple differential col count");
    }
    // d^2 = 0, entrywise in sigma^-1 R via the automaton decision.
    for (size_t i = 0; i + 1 < T.diffs.size(); ++i) {
        const auto &A = T.diffs[i], &B = T.diffs[i + 1];
        for (int r = 0; r < T.ranks[i]; ++r)
            for (int c = 0; c < T.ranks[i + 2]; ++c) {
                CohnTriple acc = triple_zero(T.sigma);
                for (int k = 0; k < T.ranks[i + 1]; ++k)
                    acc = triple_add(acc, triple_mul(A[r][k], B[k][c]));
                if (!triple_is_zero(acc))
                    fail("semantic", "d2-nonzero at degree " + std::to_string(T.lo + int(i) + 2));
            }
    }
}

/// View an integral complex over Q without changing its differentials.
inline ChainComplex m_to_rational_complex(const ChainComplex& C) {
    ChainComplex L = C;
    L.ring = RingDescriptor::rationals();
    for (auto& d : L.diffs) d = m_to_rational(d);
    return L;
}

/// r -> r/1 degreewise. Central sigma: fraction entries over Q (for Z) or the
/// field itself; free-algebra sigma: Cohn-triple entries.
inline LocalizedComplex localize_complex_central(const ChainComplex& C, const SigmaSet& sigma) {
    require_same_ring(C.ring, sigma.ring);
    if (sigma.mode != SigmaSet::Mode::Central) fail("semantic", "expected a central sigma");
    ChainComplex L = C;
    if (C.ring.kind == RingKind::Integers) {
        L.ring = RingDescriptor::rationals();
        for (auto& d : L.diffs) d = m_to_rational(d);
    }
    return LocalizedComplex{sigma, L};
}

inline TripleComplex localize_complex_free(const ChainComplex& C, const SigmaSet& sigma) {
    require_same_ring(C.ring, sigma.ring);
    if (sigma.mode != SigmaSet::Mode::Matrices) fail("semantic", "expected a matrix-mode sigma");
    TripleComplex T{sigma, C.lo, C.ranks, {}};
    for (const auto& d : C.diffs) {
        std::vector<std::vector<CohnTriple>> rows;
        for (int r = 0; r < d.rows; ++r) {
            std::vector<CohnTriple> row;
            for (int c = 0; c < d.cols; ++c) {
                const Scalar& e = d.at(r, c);
                row.push_back(s_is_zero(e) ? triple_zero(sigma) : triple_from_scalar(sigma, e));
            }
            rows.push_back(std::move(row));
        }
        T.diffs.push_back(std::move(rows));
    }
    triple_cx_validate(T);
    return T;
}

/// Strip the sigma-invertible part of an invariant factor; over sigma^-1 Z
/// the cyclic module Z/d becomes Z/d' with d' the prime-to-sigma part.
inline Int strip_sigma_part(const SigmaSet& sigma, Int d) {
    if (sigma.all_nonzero || sigma.ring.is_field()) return 1;
    Int prod = 1;
    for (const auto& g : sigma.generators) prod *= abs(num(g.value));
    while (true) {
        Int g = boost::multiprecision::gcd(d, prod);
        if (g == 1) return d;
        d /= g;
    }
}

/// Homology of sigma^-1 C as sigma^-1 Z-modules, computed integrally and
/// then localized degreewise.
inline HomologyResult localized_homology(const ChainComplex& C, const SigmaSet& sigma) {
    if (C.ring.kind != RingKind::Integers) fail("ring-mismatch", "localized homology starts over Z");
    HomologyResult H = homology_z(C);
    for (auto& h : H) {
        std::vector<Int> kept;
        for (const Int& d : h.torsion) {
            Int r = strip_sigma_part(sigma, d);
            if (r != 1) kept.push_back(r);
        }
        h.torsion = std::move(kept);
    }
    return H;
}

} // namespace localg
