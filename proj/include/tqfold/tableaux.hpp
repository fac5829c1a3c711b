#pragma once

/**
 * Admissible tableaux and the tableau-sum / determinant forms of
 * T-functions over ordered index tuples.
 *
 * A K-tuple (γ_1..γ_K) of distinct indices orders the nested subsets
 * I_0 ⊂ I_1 ⊂ ... ⊂ I_K with I_t = {γ_1..γ_t}. Cell factors are ratios
 * of shifted Q-functions along that chain; tableau entries pick which
 * chain level each cell contributes.
 *
 * Admissibility for entries t_{jk} in {1..K} (j rows downward, k columns
 * rightward):
 *   (i)   t_{jk} <= t_{j+1,k} and t_{jk} <= t_{j,k+1}
 *   (ii)  t_{jk} <  t_{j,k+1} if either label is fermionic
 *   (iii) t_{jk} <  t_{j+1,k} if either label is bosonic
 *
 * The complement-sum cell factor and the reversed ("check") sum are the
 * alternate forms used for cross-validation; the rotated-diagram identity
 * connects them to the primary forms.
 */

#include <algorithm>
#include <functional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "frac.hpp"
#include "matrix.hpp"
#include "partition.hpp"
#include "qfamily.hpp"
#include "series.hpp"

namespace tqfold {

inline void validate_tuple(const Grading& g, const std::vector<int>& tuple) {
    if (static_cast<int>(tuple.size()) > g.size())
        throw BadIndexSet("tuple has more entries than the index set");
    Mask seen = 0;
    for (int a : tuple) {
        g.check_index(a);
        if (mask_has(seen, a)) throw BadIndexSet("tuple entries must be distinct");
        seen = mask_add(seen, a);
    }
}

// Number of bosonic entries of the tuple.
inline int tuple_boson_count(const Grading& g, const std::vector<int>& tuple) {
    int m = 0;
    for (int a : tuple)
        if (g.is_bosonic(a)) ++m;
    return m;
}

// Cell factor at chain level K (1-based):
//   z_{γ_K} Q_{I_{K-1}}^{[-σ_{K-1}-2p]} Q_{I_K}^{[-σ_K+2p]}
//         / (Q_{I_{K-1}}^{[-σ_{K-1}]} Q_{I_K}^{[-σ_K]}),
// where σ_t is the parity sum over I_t and p the parity of γ_K.
inline Frac x_box(const QFamily& fam, const std::vector<int>& tuple, int K) {
    const Grading& g = fam.grading();
    validate_tuple(g, tuple);
    if (K < 1 || K > static_cast<int>(tuple.size()))
        throw BadIndexSet("x_box: level outside the tuple");
    Mask prev = 0;
    int sigma_prev = 0;
    for (int t = 0; t < K - 1; ++t) {
        prev = mask_add(prev, tuple[static_cast<size_t>(t)]);
        sigma_prev += g.parity(tuple[static_cast<size_t>(t)]);
    }
    int gk = tuple[static_cast<size_t>(K) - 1];
    int p = g.parity(gk);
    Mask cur = mask_add(prev, gk);
    int sigma_cur = sigma_prev + p;
    const ShiftBase& base = fam.base();
    Series num = fam.q(prev).shifted(HalfInt(-sigma_prev - 2 * p), base) *
                 fam.q(cur).shifted(HalfInt(-sigma_cur + 2 * p), base);
    Series den = fam.q(prev).shifted(HalfInt(-sigma_prev), base) *
                 fam.q(cur).shifted(HalfInt(-sigma_cur), base);
    return fam.z().z(gk) * Frac(num, den);
}

// Complement-sum form of the cell factor, defined for full tuples only:
// parity sums run over the unused tail of the tuple, and the value equals
// x_box shifted by [M-N].
inline Frac x_box_complement(const QFamily& fam, const std::vector<int>& tuple, int K) {
    const Grading& g = fam.grading();
    validate_tuple(g, tuple);
    if (static_cast<int>(tuple.size()) != g.size())
        throw BadIndexSet("x_box_complement: needs the full index tuple");
    if (K < 1 || K > static_cast<int>(tuple.size()))
        throw BadIndexSet("x_box_complement: level outside the tuple");
    auto tail_parity = [&](int from) {  // sum over (γ_{from+1} .. γ_{M+N})
        int s = 0;
        for (size_t t = static_cast<size_t>(from); t < tuple.size(); ++t) s += g.parity(tuple[t]);
        return s;
    };
    Mask prev = 0;
    for (int t = 0; t < K - 1; ++t) prev = mask_add(prev, tuple[static_cast<size_t>(t)]);
    int gk = tuple[static_cast<size_t>(K) - 1];
    int p = g.parity(gk);
    Mask cur = mask_add(prev, gk);
    int sb_prev = tail_parity(K - 1);
    int sb_cur = tail_parity(K);
    const ShiftBase& base = fam.base();
    Series num = fam.q(prev).shifted(HalfInt(sb_prev - 2 * p), base) *
                 fam.q(cur).shifted(HalfInt(sb_cur + 2 * p), base);
    Series den =
        fam.q(prev).shifted(HalfInt(sb_prev), base) * fam.q(cur).shifted(HalfInt(sb_cur), base);
    return fam.z().z(gk) * Frac(num, den);
}

// A filled tableau: one value per cell of the diagram, in the row-major
// order of SkewDiagram::cells().
using Tableau = std::vector<int>;

// All admissible fillings, lexicographic in row-major cell order. The
// level map sends a cell entry to the chain level whose label governs
// the strictness conditions; identity for the forward sum, reversal
// v -> K+1-v for the check sum.
template <typename Level>
std::vector<Tableau> enumerate_tableaux(const Grading& g, const std::vector<int>& tuple,
                                        const SkewDiagram& d, Level level) {
    validate_tuple(g, tuple);
    int K = static_cast<int>(tuple.size());
    auto cells = d.cells();
    std::vector<Tableau> out;
    Tableau current(cells.size(), 0);
    auto fermionic = [&](int v) {
        return !g.is_bosonic(tuple[static_cast<size_t>(level(v)) - 1]);
    };

    std::function<void(size_t)> place = [&](size_t idx) {
        if (idx == cells.size()) {
            out.push_back(current);
            return;
        }
        auto [row, col] = cells[idx];
        for (int v = 1; v <= K; ++v) {
            bool ok = true;
            // left neighbor: weak increase, strict when either is fermionic
            if (d.contains_cell(row, col - 1)) {
                int u = current[idx - 1];  // left neighbor precedes in row-major order
                if (u > v || (u == v && (fermionic(u) || fermionic(v)))) ok = false;
            }
            // top neighbor: weak increase, strict when either is bosonic
            if (ok && d.contains_cell(row - 1, col)) {
                auto it = std::find(cells.begin(), cells.begin() + static_cast<long>(idx),
                                    std::make_pair(row - 1, col));
                int u = current[static_cast<size_t>(it - cells.begin())];
                if (u > v || (u == v && (!fermionic(u) || !fermionic(v)))) ok = false;
            }
            if (ok) {
                current[idx] = v;
                place(idx + 1);
            }
        }
        current[idx] = 0;
    };
    place(0);
    return out;
}

inline std::vector<Tableau> enumerate_tableaux(const Grading& g, const std::vector<int>& tuple,
                                               const SkewDiagram& d) {
    return enumerate_tableaux(g, tuple, d, [](int v) { return v; });
}

namespace detail {
// Shared driver for the two tableau sums. level(t) maps a cell entry to
// the chain level whose factor it contributes; cell_shift(j,k) gives that
// factor's shift.
template <typename Level, typename Shift>
Frac tableau_sum_impl(const QFamily& fam, const std::vector<int>& tuple, const SkewDiagram& d,
                      Level level, Shift cell_shift) {
    const Grading& g = fam.grading();
    validate_tuple(g, tuple);
    if (d.cell_count() == 0) return Frac::one();
    if (tuple.empty()) return Frac::zero();
    int K = static_cast<int>(tuple.size());
    // Chain factors once, as series; per-cell shifts applied on demand.
    std::vector<Series> x(static_cast<size_t>(K) + 1);
    for (int t = 1; t <= K; ++t)
        x[static_cast<size_t>(t)] = x_box(fam, tuple, t).to_series(fam.order());
    auto cells = d.cells();
    Series sum;
    for (const Tableau& t : enumerate_tableaux(g, tuple, d, level)) {
        Series term = Series::one();
        for (size_t c = 0; c < cells.size(); ++c) {
            int lev = level(t[c]);
            int parity = g.parity(tuple[static_cast<size_t>(lev) - 1]);
            Series factor =
                x[static_cast<size_t>(lev)].shifted(HalfInt(cell_shift(cells[c].first, cells[c].second)), fam.base());
            term = term * (parity == 1 ? factor : -factor);
        }
        sum = sum + term;
    }
    return Frac(sum.truncate_to(fam.order()));
}
}  // namespace detail

// Tableau-sum T-function over the chain factors, with the per-cell shift
// [mu_1 - mu_1' + 2j - 2k + m - n] (j row, k column of the outer shape).
inline Frac t_tableau_sum(const QFamily& fam, const std::vector<int>& tuple, const SkewDiagram& d) {
    const Grading& g = fam.grading();
    int m = tuple_boson_count(g, tuple);
    int n = static_cast<int>(tuple.size()) - m;
    int base_shift = d.mu.first() - d.mu.length() + m - n;
    return detail::tableau_sum_impl(
        fam, tuple, d, [](int t) { return t; },
        [&](int j, int k) { return base_shift + 2 * j - 2 * k; });
}

// Reversed-chain variant: entry t contributes level K+1-t with the
// negated shift [-mu_1 + mu_1' - 2j + 2k + m - n]. Composing with the
// diagram rotation recovers t_tableau_sum.
inline Frac t_tableau_sum_check(const QFamily& fam, const std::vector<int>& tuple,
                                const SkewDiagram& d) {
    const Grading& g = fam.grading();
    int m = tuple_boson_count(g, tuple);
    int n = static_cast<int>(tuple.size()) - m;
    int K = static_cast<int>(tuple.size());
    int base_shift = -d.mu.first() + d.mu.length() + m - n;
    return detail::tableau_sum_impl(
        fam, tuple, d, [&](int t) { return K + 1 - t; },
        [&](int j, int k) { return base_shift - 2 * j + 2 * k; });
}

namespace detail {
// Column sums F_{(1^a)} for 0 <= a <= rows, with the conventions
// F_{(1^0)} = 1 and F_{(1^a)} = 0 for a < 0 applied by the callers.
// Largest column height a determinant over mu_1 x mu_1 entries can ask for.
inline int max_column_height(const Partition& mup, const Partition& lamp, int mu1) {
    int best = 0;
    for (int i = 1; i <= mu1; ++i)
        for (int j = 1; j <= mu1; ++j) best = std::max(best, mup.part(i) - lamp.part(j) - i + j);
    return best;
}

inline std::vector<Frac> column_sums(const QFamily& fam, const std::vector<int>& tuple, int max_a,
                                     bool check_variant) {
    std::vector<Frac> out;
    out.push_back(Frac::one());
    for (int a = 1; a <= max_a; ++a) {
        SkewDiagram col = SkewDiagram::whole(Partition(std::vector<int>(static_cast<size_t>(a), 1)));
        out.push_back(check_variant ? t_tableau_sum_check(fam, tuple, col)
                                    : t_tableau_sum(fam, tuple, col));
    }
    return out;
}
}  // namespace detail

// Determinant form over single-column sums:
//   det_{1<=i,j<=mu_1} F_{(1^{mu'_i - lam'_j - i + j})}^{[mu_1 - mu_1' + mu'_i + lam'_j - i - j + 1]}.
inline Frac cbr_det(const QFamily& fam, const std::vector<int>& tuple, const SkewDiagram& d) {
    validate_tuple(fam.grading(), tuple);
    if (d.cell_count() == 0) return Frac::one();
    if (tuple.empty()) return Frac::zero();
    Partition mup = conjugate(d.mu), lamp = conjugate(d.lam);
    int mu1 = d.mu.first(), mu1p = d.mu.length();
    auto cols = detail::column_sums(fam, tuple, detail::max_column_height(mup, lamp, mu1), false);
    FracMatrix mat(static_cast<size_t>(mu1), std::vector<Frac>(static_cast<size_t>(mu1)));
    for (int i = 1; i <= mu1; ++i)
        for (int j = 1; j <= mu1; ++j) {
            int a = mup.part(i) - lamp.part(j) - i + j;
            if (a < 0) continue;  // zero entry
            HalfInt sh(mu1 - mu1p + mup.part(i) + lamp.part(j) - i - j + 1);
            mat[static_cast<size_t>(i) - 1][static_cast<size_t>(j) - 1] =
                cols[static_cast<size_t>(a)].shifted(sh, fam.base());
        }
    return det(mat);
}

// Reversed-chain determinant: entries use the check column sums with the
// negated shifts; equals cbr_det composed with diagram rotation.
inline Frac cbr_det_check(const QFamily& fam, const std::vector<int>& tuple, const SkewDiagram& d) {
    validate_tuple(fam.grading(), tuple);
    if (d.cell_count() == 0) return Frac::one();
    if (tuple.empty()) return Frac::zero();
    Partition mup = conjugate(d.mu), lamp = conjugate(d.lam);
    int mu1 = d.mu.first(), mu1p = d.mu.length();
    auto cols = detail::column_sums(fam, tuple, detail::max_column_height(mup, lamp, mu1), true);
    FracMatrix mat(static_cast<size_t>(mu1), std::vector<Frac>(static_cast<size_t>(mu1)));
    for (int i = 1; i <= mu1; ++i)
        for (int j = 1; j <= mu1; ++j) {
            int a = mup.part(i) - lamp.part(j) - i + j;
            if (a < 0) continue;
            HalfInt sh(-mu1 + mu1p - mup.part(i) - lamp.part(j) + i + j - 1);
            mat[static_cast<size_t>(i) - 1][static_cast<size_t>(j) - 1] =
                cols[static_cast<size_t>(a)].shifted(sh, fam.base());
        }
    return det(mat);
}

// Normalized T-function for a straight shape mu:
//   Q_∅^{[m-n+mu_1-mu_1']} Q_{I_K}^{[-mu_1+mu_1']} x (tableau sum on the
// rotated diagram). The check route uses the reversed sum on the
// unrotated diagram; both agree.
inline Frac f_normalized(const QFamily& fam, const std::vector<int>& tuple, const Partition& mu) {
    const Grading& g = fam.grading();
    validate_tuple(g, tuple);
    int m = tuple_boson_count(g, tuple);
    int n = static_cast<int>(tuple.size()) - m;
    int mu1 = mu.first(), mu1p = mu.length();
    Series pre = fam.q(0).shifted(HalfInt(m - n + mu1 - mu1p), fam.base()) *
                 fam.q(mask_of(tuple)).shifted(HalfInt(-mu1 + mu1p), fam.base());
    return Frac(pre) * t_tableau_sum(fam, tuple, rotate180(SkewDiagram::whole(mu)));
}

inline Frac f_normalized_check(const QFamily& fam, const std::vector<int>& tuple,
                               const Partition& mu) {
    const Grading& g = fam.grading();
    validate_tuple(g, tuple);
    int m = tuple_boson_count(g, tuple);
    int n = static_cast<int>(tuple.size()) - m;
    int mu1 = mu.first(), mu1p = mu.length();
    Series pre = fam.q(0).shifted(HalfInt(m - n + mu1 - mu1p), fam.base()) *
                 fam.q(mask_of(tuple)).shifted(HalfInt(-mu1 + mu1p), fam.base());
    return Frac(pre) * t_tableau_sum_check(fam, tuple, SkewDiagram::whole(mu));
}

}  // namespace tqfold
