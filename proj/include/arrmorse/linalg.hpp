#pragma once

#include <arrmorse/rational.hpp>

#include <vector>

namespace arrmorse {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>; // row-major, rows may be empty

inline bool is_zero_vec(const RatVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

// u, v proportional over Q (cross-ratio test; zero vectors count as
// proportional to everything of the same length).
inline bool proportional(const RatVec& u, const RatVec& v) {
    const std::size_t m = u.size();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (u[i] * v[j] != u[j] * v[i]) return false;
    return true;
}

// Fraction-free elimination is unnecessary at this scale; plain rational
// Gauss with exact pivots is simple and provably correct.
inline int rank(RatMat m) {
    const std::size_t rows = m.size();
    if (rows == 0) return 0;
    const std::size_t cols = m[0].size();
    int r = 0;
    for (std::size_t col = 0; col < cols && r < static_cast<int>(rows); ++col) {
        std::size_t pivot = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (m[i][col] != 0) {
                pivot = i;
                break;
            }
        if (pivot == rows) continue;
        std::swap(m[r], m[pivot]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (m[i][col] == 0) continue;
            Rat f = m[i][col] / m[r][col];
            for (std::size_t j = col; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

// v in row span of `rows`?
inline bool in_span(const RatMat& rows, const RatVec& v) {
    if (is_zero_vec(v)) return true;
    RatMat m = rows;
    int base = rank(m);
    m.push_back(v);
    return rank(m) == base;
}

// Basis of the null space {x : rows * x = 0}, as columns-of-coefficients
// vectors. Used to slice an arrangement by one of its hyperplanes.
inline std::vector<RatVec> kernel_basis(const RatMat& rows) {
    if (rows.empty()) return {};
    const std::size_t ncols = rows[0].size();
    RatMat m = rows;
    // reduced row echelon
    std::size_t r = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t col = 0; col < ncols && r < m.size(); ++col) {
        std::size_t pivot = m.size();
        for (std::size_t i = r; i < m.size(); ++i)
            if (m[i][col] != 0) {
                pivot = i;
                break;
            }
        if (pivot == m.size()) continue;
        std::swap(m[r], m[pivot]);
        Rat inv = m[r][col];
        for (auto& x : m[r]) x /= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][col] == 0) continue;
            Rat f = m[i][col];
            for (std::size_t j = 0; j < ncols; ++j) m[i][j] -= f * m[r][j];
        }
        pivot_col.push_back(col);
        ++r;
    }
    std::vector<bool> is_pivot(ncols, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    std::vector<RatVec> basis;
    for (std::size_t free_col = 0; free_col < ncols; ++free_col) {
        if (is_pivot[free_col]) continue;
        RatVec x(ncols, Rat(0));
        x[free_col] = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = -m[i][free_col];
        basis.push_back(std::move(x));
    }
    return basis;
}

using IntMat = std::vector<std::vector<Int>>;

inline IntMat identity_matrix(int n) {
    IntMat u(n, std::vector<Int>(n, Int(0)));
    for (int i = 0; i < n; ++i) u[i][i] = 1;
    return u;
}

inline Int determinant(IntMat m) {
    // Bareiss; an integer matrix built from elementary ops stays small.
    const int n = static_cast<int>(m.size());
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            int swap_row = -1;
            for (int i = k + 1; i < n; ++i)
                if (m[i][k] != 0) {
                    swap_row = i;
                    break;
                }
            if (swap_row < 0) return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

} // namespace arrmorse
