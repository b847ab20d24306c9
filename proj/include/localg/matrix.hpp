#pragma once

#include <vector>

#include "localg/rings.hpp"

namespace localg {

/// Dense matrix over one backend ring. Zero-row and zero-column shapes are
/// legal; they carry the shape even with no entries.
struct Matrix {
    RingDescriptor ring;
    int rows = 0;
    int cols = 0;
    std::vector<Scalar> a; // row-major, rows*cols entries

    Scalar& at(int i, int j) { return a[size_t(i) * cols + j]; }
    const Scalar& at(int i, int j) const { return a[size_t(i) * cols + j]; }
};

inline Matrix m_zero(const RingDescriptor& r, int rows, int cols) {
    if (rows < 0 || cols < 0) fail("shape", "negative matrix dimension");
    Matrix m{r, rows, cols, {}};
    m.a.assign(size_t(rows) * cols, s_zero(r));
    return m;
}

inline Matrix m_identity(const RingDescriptor& r, int n) {
    Matrix m = m_zero(r, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = s_one(r);
    return m;
}

inline void require_shape(const Matrix& m, int rows, int cols, const char* what) {
    if (m.rows != rows || m.cols != cols)
        fail("shape", std::string(what) + ": expected " + std::to_string(rows) + "x" +
                          std::to_string(cols) + ", got " + std::to_string(m.rows) + "x" +
                          std::to_string(m.cols));
}

inline Matrix m_add(const Matrix& A, const Matrix& B) {
    require_same_ring(A.ring, B.ring);
    require_shape(B, A.rows, A.cols, "matrix add");
    Matrix m = A;
    for (size_t i = 0; i < m.a.size(); ++i) m.a[i] = s_add(m.a[i], B.a[i]);
    return m;
}

inline Matrix m_neg(const Matrix& A) {
    Matrix m = A;
    for (auto& e : m.a) e = s_neg(e);
    return m;
}

inline Matrix m_sub(const Matrix& A, const Matrix& B) { return m_add(A, m_neg(B)); }

inline Matrix m_mul(const Matrix& A, const Matrix& B) {
    require_same_ring(A.ring, B.ring);
    if (A.cols != B.rows)
        fail("shape", "matrix mul: " + std::to_string(A.rows) + "x" + std::to_string(A.cols) +
                          " times " + std::to_string(B.rows) + "x" + std::to_string(B.cols));
    Matrix m = m_zero(A.ring, A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            if (s_is_zero(A.at(i, k))) continue;
            for (int j = 0; j < B.cols; ++j) {
                if (s_is_zero(B.at(k, j))) continue;
                m.at(i, j) = s_add(m.at(i, j), s_mul(A.at(i, k), B.at(k, j)));
            }
        }
    return m;
}

inline Matrix m_scale(const Scalar& c, const Matrix& A) {
    require_same_ring(c.ring, A.ring);
    Matrix m = A;
    for (auto& e : m.a) e = s_mul(c, e);
    return m;
}

inline Matrix m_transpose(const Matrix& A) {
    Matrix m = m_zero(A.ring, A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) m.at(j, i) = A.at(i, j);
    return m;
}

/// Conjugate transpose under the ring involution: (A*)_{ij} = involute(A_{ji}).
/// Over commutative backends this is the plain transpose.
inline Matrix m_star_transpose(const Matrix& A) {
    Matrix m = m_zero(A.ring, A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) m.at(j, i) = s_involute(A.at(i, j));
    return m;
}

inline bool m_is_zero(const Matrix& A) {
    for (const auto& e : A.a)
        if (!s_is_zero(e)) return false;
    return true;
}

inline bool m_eq(const Matrix& A, const Matrix& B) {
    require_same_ring(A.ring, B.ring);
    if (A.rows != B.rows || A.cols != B.cols) return false;
    for (size_t i = 0; i < A.a.size(); ++i)
        if (!s_eq(A.a[i], B.a[i])) return false;
    return true;
}

/// Copy `src` into `dst` with its top-left corner at (r0, c0).
inline void m_paste(Matrix& dst, const Matrix& src, int r0, int c0) {
    require_same_ring(dst.ring, src.ring);
    if (r0 + src.rows > dst.rows || c0 + src.cols > dst.cols)
        fail("shape", "paste target out of range");
    for (int i = 0; i < src.rows; ++i)
        for (int j = 0; j < src.cols; ++j) dst.at(r0 + i, c0 + j) = src.at(i, j);
}

inline Matrix m_submatrix(const Matrix& A, int r0, int c0, int rows, int cols) {
    if (r0 < 0 || c0 < 0 || r0 + rows > A.rows || c0 + cols > A.cols)
        fail("shape", "submatrix out of range");
    Matrix m = m_zero(A.ring, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = A.at(r0 + i, c0 + j);
    return m;
}

/// Kronecker product, blocks (i_A, j_A) scaled copies of B.
inline Matrix m_kron(const Matrix& A, const Matrix& B) {
    require_same_ring(A.ring, B.ring);
    Matrix m = m_zero(A.ring, A.rows * B.rows, A.cols * B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) {
            if (s_is_zero(A.at(i, j))) continue;
            for (int k = 0; k < B.rows; ++k)
                for (int l = 0; l < B.cols; ++l)
                    m.at(i * B.rows + k, j * B.cols + l) = s_mul(A.at(i, j), B.at(k, l));
        }
    return m;
}

/// Reinterpret a matrix over Z as a matrix over Q (entrywise inclusion).
inline Matrix m_to_rational(const Matrix& A) {
    if (A.ring.kind == RingKind::Rationals) return A;
    if (A.ring.kind != RingKind::Integers) fail("ring-mismatch", "expected a matrix over Z");
    Matrix m = m_zero(RingDescriptor::rationals(), A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) m.a[i].value = A.a[i].value;
    return m;
}

/// The reverse inclusion; every entry must be integral.
inline Matrix m_to_integer(const Matrix& A) {
    if (A.ring.kind == RingKind::Integers) return A;
    if (A.ring.kind != RingKind::Rationals) fail("ring-mismatch", "expected a matrix over Q");
    Matrix m = m_zero(RingDescriptor::integers(), A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) {
        if (den(A.a[i].value) != 1) fail("semantic", "matrix entry is not integral");
        m.a[i].value = A.a[i].value;
    }
    return m;
}

inline Matrix m_from_ints(const RingDescriptor& r, int rows, int cols,
                          const std::vector<long>& entries) {
    if (int(entries.size()) != rows * cols) fail("shape", "entry count mismatch");
    Matrix m = m_zero(r, rows, cols);
    for (int i = 0; i < rows * cols; ++i) m.a[i] = s_from_int(r, entries[i]);
    return m;
}

inline std::string m_to_string(const Matrix& A) {
    std::string out = "[";
    for (int i = 0; i < A.rows; ++i) {
        out += i ? ", [" : "[";
        for (int j = 0; j < A.cols; ++j) {
            if (j) out += ", ";
            out += s_to_string(A.at(i, j));
        }
        out += "]";
    }
    return out + "]";
}

} // namespace localg
