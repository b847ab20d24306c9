#pragma once

#include <map>

#include "localg/triple.hpp"

namespace localg {

/// Weighted-automaton presentation (lambda, {mu_x}, gamma) of a rational
/// noncommutative power series over the base field: the coefficient of a word
/// x_{i1}..x_{ik} is lambda * mu_{i1} * ... * mu_{ik} * gamma.
struct LinearRepresentation {
    RingDescriptor base; // Q or F_p
    int letters = 0;
    int dim = 0;
    Matrix lambda;          // 1 x dim
    std::vector<Matrix> mu; // letters many, dim x dim
    Matrix gamma;           // dim x 1
};

inline Scalar linrep_coefficient(const LinearRepresentation& rep, const Word& w) {
    Matrix row = rep.lambda;
    for (int x : w) {
        if (x < 0 || x >= rep.letters) fail("semantic", "letter index out of range");
        row = m_mul(row, rep.mu[x]);
    }
    return m_mul(row, rep.gamma).at(0, 0);
}

namespace detail {

/// Per-word coefficient matrices of a free-algebra matrix: word w maps to the
/// base-field matrix of coefficients of w.
inline std::map<Word, Matrix, WordLess> word_coefficients(const Matrix& F) {
    std::map<Word, Matrix, WordLess> out;
    RingDescriptor k = F.ring.base_ring();
    for (int i = 0; i < F.rows; ++i)
        for (int j = 0; j < F.cols; ++j)
            for (const auto& [w, c] : F.at(i, j).terms) {
                auto it = out.find(w);
                if (it == out.end()) it = out.emplace(w, m_zero(k, F.rows, F.cols)).first;
                it->second.at(i, j) = s_from_rat(k, c);
            }
    return out;
}

} // namespace detail

/// Realize f s^-1 g over a free algebra as a linear representation, using
/// s^-1 = (sum_m A^m) eps(s)^-1 with A = I - eps(s)^-1 s. The proper part of
/// each coefficient word is spelled out through a chain of states, one per
/// proper prefix.
inline LinearRepresentation triple_to_linrep(const CohnTriple& t) {
    const RingDescriptor& R = t.sigma.ring;
    if (R.kind != RingKind::FreeAlgebra)
        fail("unsupported", "series realization needs a free-algebra backend");
    RingDescriptor k = R.base_ring();
    int n = t.size();

    // eps(s)^-1 over k, lifted back into the free algebra as constants.
    Matrix eps = m_zero(k, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) eps.at(i, j) = s_augment(t.s.at(i, j));
    if (!invertible_field(eps)) fail("sigma", "augmented denominator matrix is singular");
    Matrix epsInv = inverse_field(eps);
    Matrix epsInvF = m_zero(R, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) epsInvF.at(i, j) = s_from_rat(R, epsInv.at(i, j).value);

    Matrix A = m_sub(m_identity(R, n), m_mul(epsInvF, t.s)); // zero constant term
    Matrix gt = m_mul(epsInvF, t.g);

    auto fw = detail::word_coefficients(t.f);   // 1 x n per word
    auto Aw = detail::word_coefficients(A);     // n x n per word, |w| >= 1
    auto gw = detail::word_coefficients(gt);    // n x 1 per word

    // State layout: hubs 0..n-1, then chain states, then one terminal if any
    // positive-length g-word exists.
    int dim = n;
    std::map<const Word*, int> f_chain_start, g_chain_start;
    std::map<std::pair<const Word*, int>, int> a_chain_start;
    bool need_terminal = false;
    for (const auto& [w, c] : fw)
        if (!w.empty()) { f_chain_start[&w] = dim; dim += int(w.size()); }
    for (const auto& [w, c] : Aw) {
        if (int(w.size()) >= 2)
            for (int i = 0; i < n; ++i) {
                a_chain_start[{&w, i}] = dim;
                dim += int(w.size()) - 1;
            }
    }
    for (const auto& [w, c] : gw)
        if (!w.empty()) {
            need_terminal = true;
            if (int(w.size()) >= 2) { g_chain_start[&w] = dim; dim += int(w.size()) - 1; }
        }
    int terminal = need_terminal ? dim++ : -1;

    LinearRepresentation rep{k, R.vars, dim, m_zero(k, 1, dim), {}, m_zero(k, dim, 1)};
    for (int x = 0; x < R.vars; ++x) rep.mu.push_back(m_zero(k, dim, dim));
    auto add = [&](int x, int from, int to, const Scalar& wgt) {
        rep.mu[x].at(from, to) = s_add(rep.mu[x].at(from, to), wgt);
    };

    // Initial and final weights at the hubs: empty-word parts of f and g.
    if (auto it = fw.find(Word{}); it != fw.end())
        for (int j = 0; j < n; ++j) rep.lambda.at(0, j) = it->second.at(0, j);
    if (auto it = gw.find(Word{}); it != gw.end())
        for (int j = 0; j < n; ++j) rep.gamma.at(j, 0) = it->second.at(j, 0);
    if (terminal >= 0) rep.gamma.at(terminal, 0) = s_one(k);

    for (const auto& [w, coeff] : fw) {
        int l = int(w.size());
        if (l == 0) continue;
        int s0 = f_chain_start[&w];
        rep.lambda.at(0, s0) = s_one(k);
        for (int j = 1; j < l; ++j) add(w[j - 1], s0 + j - 1, s0 + j, s_one(k));
        for (int j = 0; j < n; ++j)
            if (!s_is_zero(coeff.at(0, j))) add(w[l - 1], s0 + l - 1, j, coeff.at(0, j));
    }
    for (const auto& [w, coeff] : Aw) {
        int l = int(w.size());
        if (l == 1) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (!s_is_zero(coeff.at(i, j))) add(w[0], i, j, coeff.at(i, j));
            continue;
        }
        for (int i = 0; i < n; ++i) {
            bool live = false;
            for (int j = 0; j < n; ++j)
                if (!s_is_zero(coeff.at(i, j))) live = true;
            if (!live) continue;
            int c0 = a_chain_start[{&w, i}];
            add(w[0], i, c0, s_one(k));
            for (int j = 1; j < l - 1; ++j) add(w[j], c0 + j - 1, c0 + j, s_one(k));
            for (int j = 0; j < n; ++j)
                if (!s_is_zero(coeff.at(i, j))) add(w[l - 1], c0 + l - 2, j, coeff.at(i, j));
        }
    }
    for (const auto& [w, coeff] : gw) {
        int l = int(w.size());
        if (l == 0) continue;
        if (l == 1) {
            for (int i = 0; i < n; ++i)
                if (!s_is_zero(coeff.at(i, 0))) add(w[0], i, terminal, coeff.at(i, 0));
            continue;
        }
        int e0 = g_chain_start[&w];
        for (int i = 0; i < n; ++i)
            if (!s_is_zero(coeff.at(i, 0))) add(w[0], i, e0, coeff.at(i, 0));
        for (int j = 1; j < l - 1; ++j) add(w[j], e0 + j - 1, e0 + j, s_one(k));
        add(w[l - 1], e0 + l - 2, terminal, s_one(k));
    }
    return rep;
}

/// Zeroness by forward closure: grow the row space reachable from lambda
/// under the letter actions; the series is zero iff every reachable row is
/// orthogonal to gamma. The basis grows at most dim times.
inline bool linrep_is_zero(const LinearRepresentation& rep) {
    std::vector<Matrix> basis;      // echelon rows, 1 x dim
    std::vector<int> lead;          // leading column per basis row
    auto reduce_insert = [&](Matrix row) -> bool {
        for (size_t b = 0; b < basis.size(); ++b) {
            if (s_is_zero(row.at(0, lead[b]))) continue;
            Scalar f = s_mul(row.at(0, lead[b]), s_invert(basis[b].at(0, lead[b])));
            for (int j = 0; j < rep.dim; ++j)
                row.at(0, j) = s_sub(row.at(0, j), s_mul(f, basis[b].at(0, j)));
        }
        for (int j = 0; j < rep.dim; ++j)
            if (!s_is_zero(row.at(0, j))) {
                basis.push_back(row);
                lead.push_back(j);
                return true;
            }
        return false;
    };
    std::vector<size_t> work;
    if (reduce_insert(rep.lambda)) work.push_back(0);
    while (!work.empty()) {
        size_t b = work.back();
        work.pop_back();
        for (int x = 0; x < rep.letters; ++x)
            if (reduce_insert(m_mul(basis[b], rep.mu[x]))) work.push_back(basis.size() - 1);
    }
    for (const auto& row : basis)
        if (!s_is_zero(m_mul(row, rep.gamma).at(0, 0))) return false;
    return true;
}

/// Equality of localized elements, dispatched on the backend: Ore backends
/// evaluate to canonical fractions, free-algebra backends realize the
/// difference as an automaton and decide zeroness.
inline bool triple_eq(const CohnTriple& a, const CohnTriple& b) {
    if (!sigma_eq(a.sigma, b.sigma)) fail("ring-mismatch", "triples over different sigma sets");
    if (a.sigma.ring.kind == RingKind::FreeAlgebra)
        return linrep_is_zero(triple_to_linrep(triple_sub(a, b)));
    return frac_eq(triple_eval_ore(a), triple_eval_ore(b));
}

inline bool triple_is_zero(const CohnTriple& a) {
    if (a.sigma.ring.kind == RingKind::FreeAlgebra)
        return linrep_is_zero(triple_to_linrep(a));
    return frac_is_zero(triple_eval_ore(a));
}

} // namespace localg
