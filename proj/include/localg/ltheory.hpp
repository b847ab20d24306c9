#pragma once

#include <algorithm>
#include <map>
#include <set>

#include "localg/complex.hpp"
#include "localg/modules.hpp"

namespace localg {

// ---------------------------------------------------------------------------
// Tensor square with the transposition involution
// ---------------------------------------------------------------------------

/// t(x (x) y) = (-1)^{pq} eps (y (x) x) on (C (x) C)_m, as a matrix in the
/// tensor_blocks basis. A chain involution: it commutes with the Koszul
/// differential and squares to the identity.
inline Matrix transposition_matrix(const ChainComplex& C, int eps, int m) {
    if (eps != 1 && eps != -1) fail("semantic", "eps must be +1 or -1");
    int dim = tensor_rank(C, C, m);
    Matrix T = m_zero(C.ring, dim, dim);
    for (int p : tensor_blocks(C, C, m)) {
        int q = m - p;
        int src = tensor_offset(C, C, m, p);
        int dst = tensor_offset(C, C, m, q);
        long sgn = (long(p) * long(q)) % 2 != 0 ? -eps : eps;
        Scalar w = s_from_int(C.ring, sgn);
        for (int i = 0; i < C.rank_at(p); ++i)
            for (int j = 0; j < C.rank_at(q); ++j)
                T.at(dst + j * C.rank_at(p) + i, src + i * C.rank_at(q) + j) = w;
    }
    return T;
}

enum class QSide { Symmetric, Quadratic };

/// Component layout of the W-resolution total complex in one chain degree t:
/// symmetric side stacks K_{t+s}, quadratic side stacks K_{t-s}, s >= 0, cut
/// off where the tensor square is exhausted.
struct WLayout {
    std::vector<int> degs; // K-degree of component s
    std::vector<int> offs;
    int dim = 0;
};

inline WLayout w_layout(const ChainComplex& K, int t, QSide side) {
    WLayout L;
    int smax = side == QSide::Symmetric ? std::max(0, K.hi() - t) : std::max(0, t - K.lo);
    for (int s = 0; s <= smax; ++s) {
        int deg = side == QSide::Symmetric ? t + s : t - s;
        L.degs.push_back(deg);
        L.offs.push_back(L.dim);
        L.dim += K.rank_at(deg);
    }
    return L;
}

/// Total differential T_t -> T_{t-1}. Symmetric side:
///   (D phi)_s = d_K(phi_s) + (-1)^t (1 + (-1)^s T) phi_{s-1};
/// quadratic side:
///   (D psi)_s = (-1)^s d_K(psi_s) + (1 + (-1)^{s+1} T) psi_{s+1}.
/// Both square to zero because T is a chain involution.
inline Matrix w_total_diff(const ChainComplex& C, const ChainComplex& K, int eps, int t,
                           QSide side) {
    WLayout src = w_layout(K, t, side), dst = w_layout(K, t - 1, side);
    Matrix D = m_zero(C.ring, dst.dim, src.dim);
    auto ident_plus = [&](int m, int sign) {
        Matrix I = m_identity(C.ring, K.rank_at(m));
        Matrix T = transposition_matrix(C, eps, m);
        return sign > 0 ? m_add(I, T) : m_sub(I, T);
    };
    for (size_t s = 0; s < src.degs.size(); ++s) {
        int m = src.degs[s];
        if (side == QSide::Symmetric) {
            if (s < dst.degs.size() && K.rank_at(m) > 0 && K.rank_at(m - 1) > 0)
                m_paste(D, K.diff(m), dst.offs[s], src.offs[s]);
            if (s + 1 < dst.degs.size() && K.rank_at(m) > 0) {
                Matrix blk = ident_plus(m, (s + 1) % 2 == 0 ? 1 : -1);
                if (t % 2 != 0) blk = m_neg(blk);
                m_paste(D, blk, dst.offs[s + 1], src.offs[s]);
            }
        } else {
            if (s < dst.degs.size() && K.rank_at(m) > 0 && K.rank_at(m - 1) > 0) {
                Matrix blk = K.diff(m);
                if (s % 2 != 0) blk = m_neg(blk);
                m_paste(D, blk, dst.offs[s], src.offs[s]);
            }
            if (s >= 1 && K.rank_at(m) > 0) {
                Matrix blk = ident_plus(m, s % 2 == 0 ? 1 : -1);
                m_paste(D, blk, dst.offs[s - 1], src.offs[s]);
            }
        }
    }
    return D;
}

/// Q-group in degree n: homology of the three-term segment of the total
/// complex around n, by SNF over Z or rank counting over a field.
inline DegreeHomology q_group(const ChainComplex& C, int eps, int n, QSide side) {
    if (C.ring.kind == RingKind::FreeAlgebra)
        fail("unsupported", "Q-groups run over Z or a field backend");
    cx_validate(C);
    ChainComplex K = tensor_product(C, C);
    WLayout below = w_layout(K, n - 1, side), at = w_layout(K, n, side),
            above = w_layout(K, n + 1, side);
    std::vector<Matrix> diffs{w_total_diff(C, K, eps, n, side),
                              w_total_diff(C, K, eps, n + 1, side)};
    ChainComplex mini =
        cx_make(C.ring, n - 1, {below.dim, at.dim, above.dim}, std::move(diffs));
    if (C.ring.kind == RingKind::Integers) return homology_z_at(mini, n);
    return DegreeHomology{n, betti_at(mini, n), {}};
}

// ---------------------------------------------------------------------------
// Chain-level structures
// ---------------------------------------------------------------------------

/// phi_s is a column vector in the tensor_blocks basis of (C (x) C)_{n+s}.
struct SymmetricStructure {
    ChainComplex C;
    int eps = 1;
    int n = 0;
    std::vector<Matrix> phis;
};

/// psi_s lives in (C (x) C)_{n-s}.
struct QuadraticStructure {
    ChainComplex C;
    int eps = 1;
    int n = 0;
    std::vector<Matrix> psis;
};

namespace detail {

inline Matrix w_flatten(const ChainComplex& C, const ChainComplex& K, int n, QSide side,
                        const std::vector<Matrix>& comps) {
    WLayout L = w_layout(K, n, side);
    Matrix v = m_zero(C.ring, L.dim, 1);
    for (size_t s = 0; s < comps.size(); ++s) {
        if (s >= L.degs.size()) {
            if (!m_is_zero(comps[s])) fail("shape", "structure component beyond the cutoff");
            continue;
        }
        require_shape(comps[s], K.rank_at(L.degs[s]), 1, "structure component");
        m_paste(v, comps[s], L.offs[s], 0);
    }
    return v;
}

} // namespace detail

/// Cocycle condition: the flattened element is a cycle of the total complex.
inline void structure_validate(const SymmetricStructure& S) {
    ChainComplex K = tensor_product(S.C, S.C);
    Matrix v = detail::w_flatten(S.C, K, S.n, QSide::Symmetric, S.phis);
    if (!m_is_zero(m_mul(w_total_diff(S.C, K, S.eps, S.n, QSide::Symmetric), v)))
        fail("semantic", "symmetric structure is not a cocycle");
}

inline void structure_validate(const QuadraticStructure& Q) {
    ChainComplex K = tensor_product(Q.C, Q.C);
    Matrix v = detail::w_flatten(Q.C, K, Q.n, QSide::Quadratic, Q.psis);
    if (!m_is_zero(m_mul(w_total_diff(Q.C, K, Q.eps, Q.n, QSide::Quadratic), v)))
        fail("semantic", "quadratic structure is not a cycle");
}

/// psi -> (1 + T_eps) psi_0, higher components zero.
inline SymmetricStructure symmetrize(const QuadraticStructure& Q) {
    structure_validate(Q);
    ChainComplex K = tensor_product(Q.C, Q.C);
    Matrix psi0 = Q.psis.empty() ? m_zero(Q.C.ring, K.rank_at(Q.n), 1) : Q.psis[0];
    require_shape(psi0, K.rank_at(Q.n), 1, "psi_0");
    Matrix phi0 = m_add(psi0, m_mul(transposition_matrix(Q.C, Q.eps, Q.n), psi0));
    SymmetricStructure S{Q.C, Q.eps, Q.n, {phi0}};
    structure_validate(S);
    return S;
}

/// Coefficient vector for phi_0 from per-block matrices: blocks[p] has shape
/// rank(C_p) x rank(C_{n-p}) and holds the coefficients of e_p,i (x) e_{n-p},j.
inline Matrix tensor_vector_from_blocks(const ChainComplex& C, int n,
                                        const std::map<int, Matrix>& blocks) {
    Matrix v = m_zero(C.ring, tensor_rank(C, C, n), 1);
    for (const auto& [p, M] : blocks) {
        int q = n - p;
        require_shape(M, C.rank_at(p), C.rank_at(q), "tensor block");
        int off = tensor_offset(C, C, n, p);
        if (off < 0) {
            if (!m_is_zero(M)) fail("shape", "tensor block outside the complex support");
            continue;
        }
        for (int i = 0; i < M.rows; ++i)
            for (int j = 0; j < M.cols; ++j) v.at(off + i * C.rank_at(q) + j, 0) = M.at(i, j);
    }
    return v;
}

/// Dual complex (C^{n-*})_q = dual of C_{n-q}, with the sign choice
/// d_q = (-1)^{n-q+1} (d_{n-q+1})^* that makes every phi_0-cocycle a literal
/// chain map C^{n-*} -> C.
inline ChainComplex dual_complex(const ChainComplex& C, int n) {
    int lo = n - C.hi(), hi = n - C.lo;
    std::vector<int> ranks;
    for (int q = lo; q <= hi; ++q) ranks.push_back(C.rank_at(n - q));
    std::vector<Matrix> diffs;
    for (int q = lo + 1; q <= hi; ++q) {
        Matrix d = m_star_transpose(C.diff(n - q + 1));
        if ((n - q + 1) % 2 != 0) d = m_neg(d);
        diffs.push_back(d);
    }
    return cx_make(C.ring, lo, std::move(ranks), std::move(diffs));
}

/// phi_0 reshaped as the chain map C^{n-*} -> C it represents.
inline ChainMap phi0_as_chain_map(const SymmetricStructure& S) {
    const ChainComplex& C = S.C;
    ChainComplex D = dual_complex(C, S.n);
    ChainComplex K = tensor_product(C, C);
    Matrix phi0 = S.phis.empty() ? m_zero(C.ring, K.rank_at(S.n), 1) : S.phis[0];
    require_shape(phi0, K.rank_at(S.n), 1, "phi_0");
    std::vector<Matrix> comps;
    for (int q = D.lo; q <= D.hi(); ++q) {
        int p = S.n - q; // source block: dual basis of C_p
        Matrix F = m_zero(C.ring, C.rank_at(q), C.rank_at(p));
        int off = tensor_offset(C, C, S.n, p);
        if (off >= 0)
            for (int i = 0; i < C.rank_at(p); ++i)
                for (int j = 0; j < C.rank_at(q); ++j)
                    F.at(j, i) = phi0.at(off + i * C.rank_at(q) + j, 0);
        comps.push_back(F);
    }
    return map_make(D, C, std::move(comps));
}

/// Poincare test: acyclicity of cone(phi_0), integrally or after localizing.
inline bool is_poincare(const SymmetricStructure& S) {
    structure_validate(S);
    ChainMap f = phi0_as_chain_map(S);
    return homology_trivial(homology_any(cone(f)));
}

inline bool is_poincare(const SymmetricStructure& S, const SigmaSet& sigma) {
    structure_validate(S);
    ChainMap f = phi0_as_chain_map(S);
    HomologyResult h = localized_homology(cone(f), sigma);
    return homology_trivial(h);
}

// ---------------------------------------------------------------------------
// Torsion modules, duals, linking forms
// ---------------------------------------------------------------------------

/// M = coker(s) for square s with det != 0: a module with a length-1
/// resolution whose differential becomes invertible over the localization.
struct TorsionModulePresentation {
    Matrix s;
};

inline void torsion_validate(const TorsionModulePresentation& M) {
    if (M.s.ring.kind != RingKind::Integers)
        fail("unsupported", "torsion presentations run over Z");
    if (M.s.rows != M.s.cols) fail("shape", "presentation matrix must be square");
    if (M.s.rows > 0 && det_integer(M.s) == 0)
        fail("singular", "presentation matrix must be injective");
}

inline TorsionModulePresentation torsion_make(Matrix s) {
    TorsionModulePresentation M{std::move(s)};
    torsion_validate(M);
    return M;
}

inline std::vector<Int> torsion_invariants(const TorsionModulePresentation& M) {
    std::vector<Int> out;
    for (const Int& d : smith_normal_form(M.s).diag)
        if (d != 1) out.push_back(d);
    return out;
}

inline Int torsion_order(const TorsionModulePresentation& M) {
    if (M.s.rows == 0) return 1;
    return abs(det_integer(M.s));
}

/// M^ = Ext^1(M, R), presented by the star-transposed resolution.
inline TorsionModulePresentation torsion_dual(const TorsionModulePresentation& M) {
    torsion_validate(M);
    return TorsionModulePresentation{m_star_transpose(M.s)};
}

inline bool double_dual_check(const TorsionModulePresentation& M) {
    return torsion_invariants(torsion_dual(torsion_dual(M))) == torsion_invariants(M);
}

/// |Hom(A, B)| for finite modules given by invariant factors.
inline Int hom_order(const std::vector<Int>& a, const std::vector<Int>& b) {
    Int n = 1;
    for (const Int& d : a)
        for (const Int& e : b) n *= boost::multiprecision::gcd(d, e);
    return n;
}

inline Rat rat_mod_one(const Rat& r) {
    Int q = num(r) / den(r);
    Rat red = r - Rat(q);
    if (red < 0) red += 1;
    return red;
}

/// f s^-1 g reduced into [0, 1): the value of the linking pairing in Q/Z.
inline Rat linking_pairing(const TorsionModulePresentation& M, const Matrix& f,
                           const Matrix& g) {
    torsion_validate(M);
    int k = M.s.rows;
    require_shape(f, 1, k, "pairing row");
    require_shape(g, k, 1, "pairing column");
    Matrix sq = m_to_rational(M.s);
    auto sol = solve_field(sq, m_to_rational(g));
    if (!sol) fail("singular", "presentation matrix not invertible over Q");
    Matrix val = m_mul(m_to_rational(f), sol->particular);
    return rat_mod_one(val.at(0, 0).value);
}

/// Pairing matrix read modulo Z; validity demands both integrality conditions
/// (well-definedness on relations) and eps-symmetry modulo Z.
struct LinkingForm {
    TorsionModulePresentation mod;
    Matrix pairing; // k x k over Q
    int eps = 1;
};

inline void linking_validate(const LinkingForm& L) {
    torsion_validate(L.mod);
    if (L.eps != 1 && L.eps != -1) fail("semantic", "eps must be +1 or -1");
    int k = L.mod.s.rows;
    require_shape(L.pairing, k, k, "linking pairing");
    if (L.pairing.ring.kind != RingKind::Rationals)
        fail("ring-mismatch", "pairing entries live in Q");
    Matrix sq = m_to_rational(L.mod.s);
    auto integral = [](const Matrix& X) {
        for (const auto& e : X.a)
            if (den(e.value) != 1) return false;
        return true;
    };
    if (!integral(m_mul(L.pairing, sq)) || !integral(m_mul(m_transpose(sq), L.pairing)))
        fail("semantic", "pairing is not defined modulo the relations");
    Matrix skew = m_sub(L.pairing, m_scale(s_from_int(L.pairing.ring, L.eps),
                                           m_transpose(L.pairing)));
    if (!integral(skew)) fail("semantic", "pairing is not eps-symmetric modulo Z");
}

/// Adjoint iso test: A = s^T Lambda is an integer matrix whose columns must
/// generate coker(s^T); surjective plus equal finite orders forces bijective.
inline bool linking_nonsingular(const LinkingForm& L) {
    linking_validate(L);
    int k = L.mod.s.rows;
    if (k == 0) return true;
    Matrix st = m_transpose(L.mod.s);
    Matrix A = m_to_integer(m_mul(m_to_rational(st), L.pairing));
    Matrix aug = m_zero(L.mod.s.ring, k, 2 * k);
    m_paste(aug, st, 0, 0);
    m_paste(aug, A, 0, k);
    SmithResult sm = smith_normal_form(aug);
    if (sm.rank < k) return false;
    for (const Int& d : sm.diag)
        if (d != 1) return false;
    return true;
}

/// Boundary of a nonsingular eps-symmetric form over Z: linking form on
/// coker(S) with pairing S^-1 read modulo Z.
inline LinkingForm boundary_linking_form(const Matrix& S, int eps) {
    if (S.ring.kind != RingKind::Integers) fail("unsupported", "boundary forms run over Z");
    if (S.rows != S.cols) fail("shape", "form matrix must be square");
    if (eps != 1 && eps != -1) fail("semantic", "eps must be +1 or -1");
    Matrix skew = m_sub(S, m_scale(s_from_int(S.ring, eps), m_transpose(S)));
    if (!m_is_zero(skew)) fail("semantic", "form matrix is not eps-symmetric");
    if (S.rows > 0 && det_integer(S) == 0)
        fail("singular", "form is singular: not Poincare over the localization");
    Matrix inv = S.rows == 0 ? m_zero(RingDescriptor::rationals(), 0, 0)
                             : inverse_field(m_to_rational(S));
    for (auto& e : inv.a) e.value = rat_mod_one(e.value);
    LinkingForm L{TorsionModulePresentation{S}, inv, eps};
    linking_validate(L);
    return L;
}

// ---------------------------------------------------------------------------
// Witt-triviality by subgroup search
// ---------------------------------------------------------------------------

struct WittResult {
    bool metabolic = false;
    std::string reason;
    std::vector<std::vector<long>> witness; // elements of N in SNF coordinates
};

namespace detail {

struct WittSearch {
    std::vector<long> moduli;
    std::vector<std::vector<Rat>> lam; // pairing on SNF coordinate classes
    long target = 0;
    std::set<std::vector<long>> seen;

    long elt_count() const {
        long n = 1;
        for (long m : moduli) n *= m;
        return n;
    }
    std::vector<long> decode(long idx) const {
        std::vector<long> c(moduli.size());
        for (size_t i = 0; i < moduli.size(); ++i) {
            c[i] = idx % moduli[i];
            idx /= moduli[i];
        }
        return c;
    }
    long encode(const std::vector<long>& c) const {
        long idx = 0;
        for (size_t i = moduli.size(); i-- > 0;) idx = idx * moduli[i] + c[i];
        return idx;
    }
    long add(long a, long b) const {
        std::vector<long> x = decode(a), y = decode(b);
        for (size_t i = 0; i < moduli.size(); ++i) x[i] = (x[i] + y[i]) % moduli[i];
        return encode(x);
    }
    bool pair_integral(long a, long b) const {
        std::vector<long> x = decode(a), y = decode(b);
        Rat v = 0;
        for (size_t i = 0; i < moduli.size(); ++i)
            for (size_t j = 0; j < moduli.size(); ++j)
                if (x[i] != 0 && y[j] != 0) v += Rat(x[i]) * Rat(y[j]) * lam[i][j];
        return den(v) == 1;
    }
    std::vector<long> closure(std::vector<long> gens) const {
        std::set<long> H{0};
        std::vector<long> work{0};
        while (!work.empty()) {
            long h = work.back();
            work.pop_back();
            for (long g : gens) {
                long s = add(h, g);
                if (H.insert(s).second) work.push_back(s);
            }
        }
        return std::vector<long>(H.begin(), H.end());
    }
    bool dfs(const std::vector<long>& H, const std::vector<long>& gens, long last,
             std::vector<long>& out) {
        if (long(H.size()) == target) {
            out = H;
            return true;
        }
        long n = elt_count();
        for (long x = last + 1; x < n; ++x) {
            if (std::binary_search(H.begin(), H.end(), x)) continue;
            if (!pair_integral(x, x)) continue;
            bool ok = true;
            for (long h : H)
                if (h != 0 && !pair_integral(x, h)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            std::vector<long> g2 = gens;
            g2.push_back(x);
            std::vector<long> H2 = closure(g2);
            if (long(H2.size()) > target || target % long(H2.size()) != 0) continue;
            if (!seen.insert(H2).second) continue;
            if (dfs(H2, g2, x, out)) return true;
        }
        return false;
    }
};

} // namespace detail

/// Brute-force metabolic test: search for N <= M with lambda(N, N) integral
/// and |N|^2 = |M|. Bilinearity keeps closures of pairwise-isotropic
/// generators isotropic, so only new generators are checked.
inline WittResult witt_metabolic_test(const LinkingForm& L, const Int& bound = Int(10000)) {
    linking_validate(L);
    Int order = torsion_order(L.mod);
    if (order > bound) fail("bound", "module order " + order.str() + " exceeds the bound");
    if (order == 1) return {true, "trivial module", {{}}};
    Int root = boost::multiprecision::sqrt(order);
    if (root * root != order) return {false, "order " + order.str() + " is not a square", {}};

    // Pass to SNF coordinates: M = (+) Z/d_i, pairing U^-T Lambda U^-1.
    SmithResult sm = smith_normal_form(L.mod.s);
    Matrix Ui = m_to_rational(unimodular_inverse(sm.U));
    Matrix lam_full = m_mul(m_transpose(Ui), m_mul(L.pairing, Ui));
    detail::WittSearch W;
    std::vector<int> live;
    for (int i = 0; i < int(sm.diag.size()); ++i)
        if (sm.diag[i] != 1) {
            live.push_back(i);
            W.moduli.push_back(long(sm.diag[i]));
        }
    W.lam.assign(live.size(), std::vector<Rat>(live.size()));
    for (size_t i = 0; i < live.size(); ++i)
        for (size_t j = 0; j < live.size(); ++j)
            W.lam[i][j] = lam_full.at(live[i], live[j]).value;
    W.target = long(root);

    std::vector<long> found;
    if (W.dfs({0}, {}, 0, found)) {
        WittResult res{true, "isotropic subgroup of order " + std::to_string(W.target), {}};
        for (long idx : found) res.witness.push_back(W.decode(idx));
        return res;
    }
    return {false, "no isotropic subgroup of square-root order", {}};
}

// ---------------------------------------------------------------------------
// The extension construction
// ---------------------------------------------------------------------------

/// L = coker(u) for u = [[diag_k(s*), 0], [v_1 .. v_k, t]], an extension of
/// (+)_k M^ by N determined by the lifts v_i, with two certificates: the
/// order identity |L| = |N| |M^|^k and each v_i vanishing in M (x) L.
struct ExtensionResult {
    TorsionModulePresentation L;
    bool order_certificate = false;
    bool kernel_certificate = false;
};

inline ExtensionResult extension_iv(const TorsionModulePresentation& M,
                                    const TorsionModulePresentation& N,
                                    const std::vector<Matrix>& lifts) {
    torsion_validate(M);
    torsion_validate(N);
    int a = M.s.rows, b = N.s.rows, k = int(lifts.size());
    for (const Matrix& v : lifts) require_shape(v, b, a, "extension lift");
    Matrix sd = m_star_transpose(M.s);
    int dim = k * a + b;
    Matrix u = m_zero(M.s.ring, dim, dim);
    for (int i = 0; i < k; ++i) m_paste(u, sd, i * a, i * a);
    for (int i = 0; i < k; ++i) m_paste(u, lifts[i], k * a, i * a);
    m_paste(u, N.s, k * a, k * a);
    ExtensionResult res{torsion_make(u), false, false};

    Int expect = torsion_order(N);
    Int ms = torsion_order(M);
    for (int i = 0; i < k; ++i) expect *= ms;
    res.order_certificate = torsion_order(res.L) == expect;

    // v_i as an element of M (x) L: columns of v_i paired with the M
    // generators, placed in the Q_0 block of the L generators.
    Matrix rel = m_zero(M.s.ring, a * dim, a * dim + a * dim);
    m_paste(rel, m_kron(M.s, m_identity(M.s.ring, dim)), 0, 0);
    m_paste(rel, m_kron(m_identity(M.s.ring, a), u), 0, a * dim);
    res.kernel_certificate = true;
    for (const Matrix& v : lifts) {
        Matrix e = m_zero(M.s.ring, a * dim, 1);
        for (int r = 0; r < b; ++r)
            for (int c = 0; c < a; ++c) e.at(c * dim + (k * a + r), 0) = v.at(r, c);
        if (!solve_integer(rel, e)) res.kernel_certificate = false;
    }
    return res;
}

} // namespace localg
