#pragma once

#include <optional>

#include "localg/matrix.hpp"

namespace localg {

// Matrices over Z are manipulated through their Rat entries, which stay
// integer-valued throughout; helpers below extract the Int view.

inline Int m_int(const Matrix& M, int i, int j) { return num(M.at(i, j).value); }

inline void m_set_int(Matrix& M, int i, int j, const Int& v) { M.at(i, j).value = Rat(v); }

inline void require_integer_matrix(const Matrix& M, const char* what) {
    if (M.ring.kind != RingKind::Integers)
        fail("ring-mismatch", std::string(what) + " needs a matrix over Z");
}

/// U * A * V = S with U, V unimodular and S diagonal, nonnegative pivots,
/// d1 | d2 | ... Pivots are chosen by smallest absolute value, then lowest
/// index, so the transforms are deterministic.
struct SmithResult {
    Matrix U, S, V;
    int rank = 0;
    std::vector<Int> diag; // the nonzero invariant factors, in order
};

inline SmithResult smith_normal_form(const Matrix& A) {
    require_integer_matrix(A, "smith_normal_form");
    int n = A.rows, m = A.cols;
    RingDescriptor Z = RingDescriptor::integers();
    Matrix S = A, U = m_identity(Z, n), V = m_identity(Z, m);

    auto row_swap = [&](Matrix& M, int i, int j) {
        for (int c = 0; c < M.cols; ++c) std::swap(M.at(i, c), M.at(j, c));
    };
    auto col_swap = [&](Matrix& M, int i, int j) {
        for (int r = 0; r < M.rows; ++r) std::swap(M.at(r, i), M.at(r, j));
    };
    // row i -= q * row j (and mirror into U); similarly for columns and V.
    auto row_sub = [&](int i, int j, const Int& q) {
        if (q == 0) return;
        for (int c = 0; c < m; ++c) m_set_int(S, i, c, m_int(S, i, c) - q * m_int(S, j, c));
        for (int c = 0; c < n; ++c) m_set_int(U, i, c, m_int(U, i, c) - q * m_int(U, j, c));
    };
    auto col_sub = [&](int i, int j, const Int& q) {
        if (q == 0) return;
        for (int r = 0; r < n; ++r) m_set_int(S, r, i, m_int(S, r, i) - q * m_int(S, r, j));
        for (int r = 0; r < m; ++r) m_set_int(V, r, i, m_int(V, r, i) - q * m_int(V, r, j));
    };

    int t = 0;
    while (t < n && t < m) {
        // Find the pivot: smallest nonzero absolute value, lowest (row, col).
        int pi = -1, pj = -1;
        Int best = 0;
        for (int i = t; i < n; ++i)
            for (int j = t; j < m; ++j) {
                Int v = abs(m_int(S, i, j));
                if (v != 0 && (pi < 0 || v < best)) { best = v; pi = i; pj = j; }
            }
        if (pi < 0) break; // submatrix is zero
        if (pi != t) { row_swap(S, pi, t); row_swap(U, pi, t); }
        if (pj != t) { col_swap(S, pj, t); col_swap(V, pj, t); }

        bool dirty = true;
        while (dirty) {
            dirty = false;
            // Clear the pivot column.
            for (int i = t + 1; i < n; ++i) {
                Int v = m_int(S, i, t);
                if (v == 0) continue;
                Int q = v / m_int(S, t, t);
                row_sub(i, t, q);
                if (m_int(S, i, t) != 0) {
                    // Remainder is smaller than the pivot: swap it up and restart.
                    row_swap(S, i, t); row_swap(U, i, t);
                    dirty = true;
                }
            }
            // Clear the pivot row.
            for (int j = t + 1; j < m; ++j) {
                Int v = m_int(S, t, j);
                if (v == 0) continue;
                Int q = v / m_int(S, t, t);
                col_sub(j, t, q);
                if (m_int(S, t, j) != 0) {
                    col_swap(S, j, t); col_swap(V, j, t);
                    dirty = true;
                }
            }
            if (dirty) continue;
            // Force divisibility: if some remaining entry resists the pivot,
            // fold its row in and reduce again.
            Int d = m_int(S, t, t);
            for (int i = t + 1; i < n && !dirty; ++i)
                for (int j = t + 1; j < m && !dirty; ++j)
                    if (m_int(S, i, j) % d != 0) {
                        row_sub(t, i, Int(-1)); // row t += row i
                        dirty = true;
                    }
        }
        if (m_int(S, t, t) < 0) {
            for (int c = 0; c < m; ++c) m_set_int(S, t, c, -m_int(S, t, c));
            for (int c = 0; c < n; ++c) m_set_int(U, t, c, -m_int(U, t, c));
        }
        ++t;
    }

    SmithResult res{U, S, V, 0, {}};
    for (int i = 0; i < std::min(n, m); ++i) {
        if (m_int(S, i, i) == 0) break;
        res.diag.push_back(m_int(S, i, i));
        ++res.rank;
    }
    return res;
}

/// Exact determinant of a square matrix over Z (fraction-free Bareiss).
inline Int det_integer(const Matrix& A) {
    require_integer_matrix(A, "det");
    if (A.rows != A.cols) fail("shape", "determinant of a non-square matrix");
    int n = A.rows;
    if (n == 0) return 1;
    std::vector<std::vector<Int>> M(n, std::vector<Int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M[i][j] = m_int(A, i, j);
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (M[k][k] == 0) {
            int swap = -1;
            for (int i = k + 1; i < n; ++i)
                if (M[i][k] != 0) { swap = i; break; }
            if (swap < 0) return 0;
            std::swap(M[k], M[swap]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
        prev = M[k][k];
    }
    return sign > 0 ? M[n - 1][n - 1] : -M[n - 1][n - 1];
}

/// Basis of the integer kernel: the columns of V beyond the Smith rank.
inline Matrix z_kernel_basis(const Matrix& A) {
    SmithResult s = smith_normal_form(A);
    Matrix K = m_zero(A.ring, A.cols, A.cols - s.rank);
    for (int j = s.rank; j < A.cols; ++j)
        for (int i = 0; i < A.cols; ++i) K.at(i, j - s.rank) = s.V.at(i, j);
    return K;
}

/// Solve A X = B over Z. Returns a particular solution or nothing when none
/// exists over the integers.
inline std::optional<Matrix> solve_integer(const Matrix& A, const Matrix& B) {
    require_integer_matrix(A, "solve_integer");
    require_integer_matrix(B, "solve_integer");
    if (A.rows != B.rows) fail("shape", "solve: row counts differ");
    SmithResult s = smith_normal_form(A);
    Matrix C = m_mul(s.U, B); // S (V^-1 X) = U B
    Matrix Y = m_zero(A.ring, A.cols, B.cols);
    for (int j = 0; j < B.cols; ++j) {
        for (int i = 0; i < A.rows; ++i) {
            Int c = m_int(C, i, j);
            if (i < s.rank) {
                if (c % s.diag[i] != 0) return std::nullopt;
                m_set_int(Y, i, j, c / s.diag[i]);
            } else if (c != 0) {
                return std::nullopt;
            }
        }
    }
    return m_mul(s.V, Y);
}

/// Canonical row-style Hermite normal form: row echelon, positive pivots,
/// entries above a pivot reduced into [0, pivot). Zero rows are dropped, so
/// two generating sets span the same row lattice iff their forms are equal.
inline Matrix hermite_rows(const Matrix& A) {
    require_integer_matrix(A, "hermite_rows");
    int n = A.rows, m = A.cols;
    std::vector<std::vector<Int>> M(n, std::vector<Int>(m));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) M[i][j] = m_int(A, i, j);
    int r = 0;
    for (int c = 0; c < m && r < n; ++c) {
        // Euclid on the column segment below (and including) row r.
        while (true) {
            int piv = -1;
            Int best = 0;
            for (int i = r; i < n; ++i) {
                Int v = abs(M[i][c]);
                if (v != 0 && (piv < 0 || v < best)) { best = v; piv = i; }
            }
            if (piv < 0) break;
            std::swap(M[r], M[piv]);
            bool cleared = true;
            for (int i = r + 1; i < n; ++i) {
                if (M[i][c] == 0) continue;
                Int q = M[i][c] / M[r][c];
                for (int j = 0; j < m; ++j) M[i][j] -= q * M[r][j];
                if (M[i][c] != 0) cleared = false;
            }
            if (cleared) break;
        }
        if (M[r][c] == 0) continue;
        if (M[r][c] < 0)
            for (int j = 0; j < m; ++j) M[r][j] = -M[r][j];
        for (int i = 0; i < r; ++i) {
            Int q = M[i][c] / M[r][c];
            if (M[i][c] - q * M[r][c] < 0) q -= 1; // floor toward [0, pivot)
            if (q != 0)
                for (int j = 0; j < m; ++j) M[i][j] -= q * M[r][j];
        }
        ++r;
    }
    Matrix H = m_zero(A.ring, r, m);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < m; ++j) m_set_int(H, i, j, M[i][j]);
    return H;
}

/// Do the rows of A and B generate the same sublattice of Z^cols?
inline bool same_row_lattice(const Matrix& A, const Matrix& B) {
    if (A.cols != B.cols) fail("shape", "lattice comparison needs equal ambient rank");
    return m_eq(hermite_rows(A), hermite_rows(B));
}

/// Inverse of a unimodular integer matrix.
inline Matrix unimodular_inverse(const Matrix& A) {
    require_integer_matrix(A, "unimodular_inverse");
    if (A.rows != A.cols) fail("shape", "inverse of a non-square matrix");
    auto X = solve_integer(A, m_identity(A.ring, A.rows));
    if (!X) fail("non-unit", "matrix is not unimodular");
    return *X;
}

} // namespace localg
