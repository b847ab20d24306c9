#pragma once

#include <optional>

#include "localg/matrix.hpp"

namespace localg {

inline void require_field_matrix(const Matrix& M, const char* what) {
    if (!M.ring.is_field())
        fail("ring-mismatch", std::string(what) + " needs a matrix over a field");
}

/// Row echelon data for a matrix over a field: the reduced form, its rank,
/// and the pivot column of each nonzero row. Elimination picks the first
/// nonzero entry top-down, so the result is deterministic.
struct EchelonResult {
    Matrix R;
    int rank = 0;
    std::vector<int> pivot_col;
};

inline EchelonResult reduced_echelon(const Matrix& A) {
    require_field_matrix(A, "reduced_echelon");
    Matrix R = A;
    int r = 0;
    std::vector<int> pivots;
    for (int c = 0; c < R.cols && r < R.rows; ++c) {
        int piv = -1;
        for (int i = r; i < R.rows; ++i)
            if (!s_is_zero(R.at(i, c))) { piv = i; break; }
        if (piv < 0) continue;
        for (int j = 0; j < R.cols; ++j) std::swap(R.at(r, j), R.at(piv, j));
        Scalar inv = s_invert(R.at(r, c));
        for (int j = c; j < R.cols; ++j) R.at(r, j) = s_mul(inv, R.at(r, j));
        for (int i = 0; i < R.rows; ++i) {
            if (i == r || s_is_zero(R.at(i, c))) continue;
            Scalar f = R.at(i, c);
            for (int j = c; j < R.cols; ++j)
                R.at(i, j) = s_sub(R.at(i, j), s_mul(f, R.at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return {R, r, pivots};
}

inline int rank_field(const Matrix& A) { return reduced_echelon(A).rank; }

/// Basis of ker(A) as columns, from the reduced echelon form.
inline Matrix kernel_field(const Matrix& A) {
    EchelonResult e = reduced_echelon(A);
    std::vector<int> free_cols;
    {
        size_t pi = 0;
        for (int c = 0; c < A.cols; ++c) {
            if (pi < e.pivot_col.size() && e.pivot_col[pi] == c) { ++pi; continue; }
            free_cols.push_back(c);
        }
    }
    Matrix K = m_zero(A.ring, A.cols, int(free_cols.size()));
    for (size_t k = 0; k < free_cols.size(); ++k) {
        int fc = free_cols[k];
        K.at(fc, int(k)) = s_one(A.ring);
        for (int r = 0; r < e.rank; ++r)
            K.at(e.pivot_col[r], int(k)) = s_neg(e.R.at(r, fc));
    }
    return K;
}

/// Solve A X = B over a field: one particular solution plus the kernel basis.
/// No solution: returns nullopt.
struct FieldSolution {
    Matrix particular;
    Matrix kernel;
};

inline std::optional<FieldSolution> solve_field(const Matrix& A, const Matrix& B) {
    require_same_ring(A.ring, B.ring);
    require_field_matrix(A, "solve_field");
    if (A.rows != B.rows) fail("shape", "solve: row counts differ");
    // Eliminate on the augmented matrix.
    Matrix Aug = m_zero(A.ring, A.rows, A.cols + B.cols);
    m_paste(Aug, A, 0, 0);
    m_paste(Aug, B, 0, A.cols);
    EchelonResult e = reduced_echelon(Aug);
    Matrix X = m_zero(A.ring, A.cols, B.cols);
    for (int r = 0; r < e.rank; ++r) {
        if (e.pivot_col[r] >= A.cols) return std::nullopt; // pivot in the B block
        for (int j = 0; j < B.cols; ++j)
            X.at(e.pivot_col[r], j) = e.R.at(r, A.cols + j);
    }
    return FieldSolution{X, kernel_field(A)};
}

/// Inverse of a square matrix over a field.
inline Matrix inverse_field(const Matrix& A) {
    if (A.rows != A.cols) fail("shape", "inverse of a non-square matrix");
    auto sol = solve_field(A, m_identity(A.ring, A.rows));
    if (!sol || sol->kernel.cols != 0) fail("singular", "matrix is not invertible");
    return sol->particular;
}

inline bool invertible_field(const Matrix& A) {
    return A.rows == A.cols && rank_field(A) == A.rows;
}

} // namespace localg
