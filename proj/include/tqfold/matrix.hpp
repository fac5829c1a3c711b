#pragma once

/**
 * Exact determinants and linear algebra.
 *
 * Determinants over the series fraction field are computed by clearing
 * each row's denominators and running a division-free dynamic program
 * over column subsets on the numerator matrix; no series division is
 * performed, so no precision is lost below the truncation order.
 *
 * Linear systems over Rat are solved by deterministic Gauss-Jordan
 * elimination (first nonzero pivot), reporting rank, consistency, a
 * particular solution with all free coordinates set to zero, and a
 * nullspace basis.
 */

#include <cstdint>
#include <vector>

#include "errors.hpp"
#include "frac.hpp"
#include "rational.hpp"
#include "series.hpp"

namespace tqfold {

using SeriesMatrix = std::vector<std::vector<Series>>;
using FracMatrix = std::vector<std::vector<Frac>>;
using RatMatrix = std::vector<std::vector<Rat>>;

// ---- determinants ----

// Determinant of a square series matrix; subset dynamic program, O(2^n n)
// series multiplications, no division.
inline Series det(const SeriesMatrix& m) {
    size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw BadSpec("det: matrix is not square");
    if (n == 0) return Series::one();
    if (n > 20) throw BadSpec("det: dimension too large");
    std::vector<Series> dp(size_t(1) << n);
    dp[0] = Series::one();
    for (uint32_t mask = 1; mask < (uint32_t(1) << n); ++mask) {
        size_t row = static_cast<size_t>(__builtin_popcount(mask)) - 1;
        Series acc;  // zero
        for (uint32_t rest = mask; rest != 0; rest &= rest - 1) {
            int col = __builtin_ctz(rest);
            if (m[row][static_cast<size_t>(col)].is_zero()) continue;
            int above = __builtin_popcount(mask >> (col + 1));
            Series term = dp[mask & ~(uint32_t(1) << col)] * m[row][static_cast<size_t>(col)];
            acc = (above % 2 == 0) ? acc + term : acc - term;
        }
        dp[mask] = std::move(acc);
    }
    return dp[(size_t(1) << n) - 1];
}

// Determinant over the fraction field: numerators are cleared row by row,
// so the result is det(cleared)/prod(row denominators).
inline Frac det(const FracMatrix& m) {
    size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw BadSpec("det: matrix is not square");
    if (n == 0) return Frac::one();
    SeriesMatrix cleared(n, std::vector<Series>(n));
    Series den = Series::one();
    for (size_t i = 0; i < n; ++i) {
        // prefix[j] = d_{i,0} ... d_{i,j-1}, suffix likewise from the right.
        std::vector<Series> prefix(n + 1), suffix(n + 1);
        prefix[0] = Series::one();
        for (size_t j = 0; j < n; ++j) prefix[j + 1] = prefix[j] * m[i][j].den();
        suffix[n] = Series::one();
        for (size_t j = n; j-- > 0;) suffix[j] = suffix[j + 1] * m[i][j].den();
        for (size_t j = 0; j < n; ++j) cleared[i][j] = m[i][j].num() * prefix[j] * suffix[j + 1];
        den = den * prefix[n];
    }
    return Frac(det(cleared), den);
}

// ---- exact linear systems over Rat ----

struct LinearSolution {
    bool consistent = true;
    int rank = 0;
    std::vector<int> pivot_cols;
    std::vector<int> free_cols;
    // A solution with every free coordinate set to zero (valid only when
    // consistent).
    std::vector<Rat> particular;
    // Basis of the homogeneous solution space, one vector per free column.
    std::vector<std::vector<Rat>> nullspace;
};

// Solve a x = b by Gauss-Jordan elimination with deterministic pivoting.
inline LinearSolution solve_linear(RatMatrix a, std::vector<Rat> b) {
    size_t rows = a.size();
    if (b.size() != rows) throw BadSpec("solve_linear: rhs size mismatch");
    size_t cols = rows == 0 ? 0 : a[0].size();
    for (const auto& row : a)
        if (row.size() != cols) throw BadSpec("solve_linear: ragged matrix");

    LinearSolution out;
    size_t pr = 0;  // next pivot row
    for (size_t c = 0; c < cols && pr < rows; ++c) {
        size_t sel = pr;
        while (sel < rows && a[sel][c] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(a[sel], a[pr]);
        std::swap(b[sel], b[pr]);
        Rat inv = Rat(1) / a[pr][c];
        for (size_t j = c; j < cols; ++j) a[pr][j] *= inv;
        b[pr] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == pr || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[pr][j];
            b[i] -= f * b[pr];
        }
        out.pivot_cols.push_back(static_cast<int>(c));
        ++pr;
    }
    out.rank = static_cast<int>(pr);
    for (size_t i = pr; i < rows; ++i)
        if (b[i] != 0) out.consistent = false;

    std::vector<bool> is_pivot(cols, false);
    for (int c : out.pivot_cols) is_pivot[static_cast<size_t>(c)] = true;
    for (size_t c = 0; c < cols; ++c)
        if (!is_pivot[c]) out.free_cols.push_back(static_cast<int>(c));

    out.particular.assign(cols, Rat(0));
    if (out.consistent)
        for (size_t k = 0; k < out.pivot_cols.size(); ++k)
            out.particular[static_cast<size_t>(out.pivot_cols[k])] = b[k];

    for (int fc : out.free_cols) {
        std::vector<Rat> v(cols, Rat(0));
        v[static_cast<size_t>(fc)] = Rat(1);
        for (size_t k = 0; k < out.pivot_cols.size(); ++k)
            v[static_cast<size_t>(out.pivot_cols[k])] = -a[k][static_cast<size_t>(fc)];
        out.nullspace.push_back(std::move(v));
    }
    return out;
}

// Residual b - a x, for consistency checks of candidate solutions.
inline std::vector<Rat> linear_residual(const RatMatrix& a, const std::vector<Rat>& b,
                                        const std::vector<Rat>& x) {
    std::vector<Rat> r = b;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j) r[i] -= a[i][j] * x[j];
    return r;
}

}  // namespace tqfold
