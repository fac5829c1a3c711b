#pragma once

/**
 * Sparse block determinants over Q-families, their Cauchy-type
 * denominators and normalizations, and the determinant T-functions for
 * arbitrary hook diagrams and rectangles, including Laplace-sum forms.
 *
 * Block layout of the determinant: rows are the bosonic labels b in B
 * (ascending) followed by the integer labels i in R (ascending); columns
 * are the fermionic labels f in F (ascending) followed by the integer
 * labels j in S (ascending). Entries:
 *
 *   (b,f): Q_{b,f}^{[xi]} / (z_b - z_f)
 *   (b,j): z_b^{j-1} Q_b^{[xi+2j-1]}
 *   (i,f): (-z_f)^{i-1} Q_f^{[xi-2i+1]}
 *   (i,j): 0
 *
 * All entry denominators are rational constants, so the determinant is
 * computed entirely over truncated series.
 */

#include <string>
#include <vector>

#include "errors.hpp"
#include "frac.hpp"
#include "halfint.hpp"
#include "matrix.hpp"
#include "partition.hpp"
#include "qfamily.hpp"
#include "rational.hpp"
#include "series.hpp"

namespace tqfold {

// The integer interval {a..b}; empty when b < a.
inline std::vector<int> range_set(int a, int b) {
    std::vector<int> out;
    for (int v = a; v <= b; ++v) out.push_back(v);
    return out;
}

inline std::vector<int> concat_sets(std::vector<int> x, const std::vector<int>& y) {
    x.insert(x.end(), y.begin(), y.end());
    return x;
}

// (-1)^{Card{(i,j) in I x J : i > j}}
inline int epsilon_sign(const std::vector<int>& I, const std::vector<int>& J) {
    long long inversions = 0;
    for (int i : I)
        for (int j : J)
            if (i > j) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

struct DeltaSpec {
    Mask B = 0;
    std::vector<int> R;
    Mask F = 0;
    std::vector<int> S;
    HalfInt xi = 0;
};

// Determinant with rows and columns in explicitly given order; callers
// that permute the orders see the antisymmetry sign directly.
inline Series delta_ordered(const QFamily& fam, const std::vector<int>& b_rows,
                            const std::vector<int>& r_rows, const std::vector<int>& f_cols,
                            const std::vector<int>& s_cols, HalfInt xi) {
    const Grading& g = fam.grading();
    for (int b : b_rows)
        if (!g.is_bosonic(b)) throw BadIndexSet("delta: row label is not bosonic");
    for (int f : f_cols)
        if (g.is_bosonic(f)) throw BadIndexSet("delta: column label is not fermionic");
    size_t rows = b_rows.size() + r_rows.size();
    size_t cols = f_cols.size() + s_cols.size();
    if (rows != cols) throw BadSpec("delta: need |B|+|R| = |F|+|S|");
    SeriesMatrix m(rows, std::vector<Series>(cols));
    const ShiftBase& base = fam.base();
    for (size_t bi = 0; bi < b_rows.size(); ++bi) {
        int b = b_rows[bi];
        for (size_t fj = 0; fj < f_cols.size(); ++fj) {
            int f = f_cols[fj];
            m[bi][fj] = (Rat(1) / (fam.z().z(b) - fam.z().z(f))) *
                        fam.q(mask_add(mask_add(0, b), f)).shifted(xi, base);
        }
        for (size_t sj = 0; sj < s_cols.size(); ++sj) {
            int j = s_cols[sj];
            m[bi][f_cols.size() + sj] =
                rat_pow(fam.z().z(b), j - 1) * fam.q(mask_add(0, b)).shifted(xi + HalfInt(2 * j - 1), base);
        }
    }
    for (size_t ri = 0; ri < r_rows.size(); ++ri) {
        int i = r_rows[ri];
        for (size_t fj = 0; fj < f_cols.size(); ++fj) {
            int f = f_cols[fj];
            m[b_rows.size() + ri][fj] =
                rat_pow(-fam.z().z(f), i - 1) * fam.q(mask_add(0, f)).shifted(xi - HalfInt(2 * i - 1), base);
        }
        // remaining entries stay zero
    }
    return det(m);
}

namespace detail {
inline void check_strictly_increasing(const std::vector<int>& v, const char* what) {
    for (size_t k = 1; k < v.size(); ++k)
        if (v[k - 1] >= v[k]) throw BadSpec(std::string(what) + " labels must be strictly increasing");
}
}  // namespace detail

// Canonical determinant: all four label sets ascending.
inline Frac delta(const QFamily& fam, const DeltaSpec& spec) {
    detail::check_strictly_increasing(spec.R, "delta: R");
    detail::check_strictly_increasing(spec.S, "delta: S");
    return Frac(delta_ordered(fam, mask_elements(spec.B), spec.R, mask_elements(spec.F), spec.S,
                              spec.xi));
}

// Cauchy-type denominator:
//   prod_{b<b' in B}(z_b - z_b') prod_{f<f' in F}(z_f' - z_f)
//   / prod_{(b,f)}(z_b - z_f).
inline Rat denom_d(const ZParams& zp, Mask B, Mask F) {
    std::vector<int> bs = mask_elements(B), fs = mask_elements(F);
    for (int b : bs)
        if (!zp.grading().is_bosonic(b)) throw BadIndexSet("denom_d: B must be bosonic");
    for (int f : fs)
        if (zp.grading().is_bosonic(f)) throw BadIndexSet("denom_d: F must be fermionic");
    Rat out(1);
    for (size_t i = 0; i < bs.size(); ++i)
        for (size_t j = i + 1; j < bs.size(); ++j) out *= zp.z(bs[i]) - zp.z(bs[j]);
    for (size_t i = 0; i < fs.size(); ++i)
        for (size_t j = i + 1; j < fs.size(); ++j) out *= zp.z(fs[j]) - zp.z(fs[i]);
    for (int b : bs)
        for (int f : fs) {
            Rat d = zp.z(b) - zp.z(f);
            if (d == 0) throw DegenerateParameters("denom_d: coincident bosonic/fermionic parameter");
            out /= d;
        }
    return out;
}

namespace detail {
// Row labels s_l = mu_{xi-l} + m - n - xi + l + 1 (l = 1..xi-1) and
// r_k = mu'_{n-m+xi-k} + k - xi + 1 (k = 1..n-m+xi-1); both strictly
// increasing, listed ascending.
inline std::vector<int> wronskian_s_labels(const Partition& mu, int m, int n, int xi) {
    std::vector<int> out;
    for (int l = 1; l <= xi - 1; ++l) out.push_back(mu.part(xi - l) + m - n - xi + l + 1);
    return out;
}
inline std::vector<int> wronskian_r_labels(const Partition& mu, int m, int n, int xi) {
    Partition muc = conjugate(mu);
    std::vector<int> out;
    for (int k = 1; k <= n - m + xi - 1; ++k) out.push_back(muc.part(n - m + xi - k) + k - xi + 1);
    return out;
}
}  // namespace detail

// Normalization for the hook diagram mu in the (m,n) setting:
// a ratio of shifted copies of Q_∅ fixed by the label sets above.
inline Frac psi_mu(const QFamily& fam, const Partition& mu, int m, int n) {
    int xi = index_mn(mu, m, n);
    int mu1 = mu.first();
    int mu1p = mu.length();  // first column height
    HalfInt top(m - n + mu1 - mu1p);
    const Series& q0 = fam.q(0);
    const ShiftBase& base = fam.base();
    Frac out = Frac(q0.shifted(top, base)) * Frac(q0.shifted(-top, base)) *
               Frac(q0.shifted(-top, base)).pow(-m - 1 + xi);
    for (int i : detail::wronskian_r_labels(mu, m, n, xi))
        out = out / Frac(q0.shifted(-top + HalfInt(-2 * i + 2), base));
    for (int j : detail::wronskian_s_labels(mu, m, n, xi))
        out = out / Frac(q0.shifted(-top + HalfInt(2 * j - 2), base));
    return out;
}

// T-function for a hook diagram via the block determinant.
inline Frac t_wronskian(const QFamily& fam, const Partition& mu, Mask B, Mask F) {
    int m = mask_card(B), n = mask_card(F);
    if (!in_hook(mu, m, n)) throw BadSpec("t_wronskian: diagram leaves the hook for this (B,F)");
    int xi = index_mn(mu, m, n);
    int mu1 = mu.first(), mu1p = mu.length();
    long long sign_exp =
        static_cast<long long>(m + n + 1) * (xi + 1) + static_cast<long long>(m - n) * (m + n - 1) / 2;
    DeltaSpec spec{B, detail::wronskian_r_labels(mu, m, n, xi), F,
                   detail::wronskian_s_labels(mu, m, n, xi), HalfInt(-m + n + mu1p - mu1)};
    Frac res = Rat(sign_pow(sign_exp)) * psi_mu(fam, mu, m, n) * delta(fam, spec);
    return (Rat(1) / denom_d(fam.z(), B, F)) * res;
}

// Rectangle normalization including its height-0 / width-0 boundary rows.
inline Frac psi_rect(const QFamily& fam, int a, int s, int m, int n) {
    const Series& q0 = fam.q(0);
    const ShiftBase& base = fam.base();
    if (a >= 1 && s >= 1) return psi_mu(fam, Partition(std::vector<int>(static_cast<size_t>(a), s)), m, n);
    if (s == 0 && a >= 0)
        return Frac(q0.shifted(HalfInt(m - n - a), base)) /
               Frac(q0.shifted(HalfInt(m - n + a), base)) *
               psi_mu(fam, Partition(), m, n).shifted(HalfInt(a), base);
    if (a == 0)
        return Frac(q0.shifted(HalfInt(m - n + s), base)) /
               Frac(q0.shifted(HalfInt(m - n - s), base)) *
               psi_mu(fam, Partition(), m, n).shifted(HalfInt(-s), base);
    return Frac::one();
}

// T-function for the a x s rectangle, branch-selected by m - n. Accepts
// every integer pair; vanishes off the defined region.
inline Frac t_rect(const QFamily& fam, int a, int s, Mask B, Mask F) {
    int m = mask_card(B), n = mask_card(F);
    const Series& q0 = fam.q(0);
    const ShiftBase& base = fam.base();
    if (s == 0 && a >= 0) {
        Frac t0 = t_wronskian(fam, Partition(), B, F);
        return Frac(q0.shifted(HalfInt(m - n - a), base)) /
               Frac(q0.shifted(HalfInt(m - n + a), base)) * t0.shifted(HalfInt(a), base);
    }
    if (a == 0) {
        Frac t0 = t_wronskian(fam, Partition(), B, F);
        return Frac(q0.shifted(HalfInt(m - n + s), base)) /
               Frac(q0.shifted(HalfInt(m - n - s), base)) * t0.shifted(HalfInt(-s), base);
    }
    if (a < 0 || s < 0) return Frac::zero();

    int d = m - n;
    HalfInt xi_shift(n - m + a - s);
    Frac psi = psi_rect(fam, a, s, m, n);
    long long half = static_cast<long long>(d) * (m + n - 1) / 2;
    DeltaSpec spec;
    spec.B = B;
    spec.F = F;
    spec.xi = xi_shift;
    long long sign_exp = half;
    if (a <= d) {
        spec.R = {};
        spec.S = concat_sets(range_set(1, d - a), range_set(d - a + s + 1, d + s));
    } else if (d >= a - s) {  // a - s <= d <= a
        spec.R = range_set(1, -d + a);
        spec.S = range_set(d - a + s + 1, d + s);
        sign_exp += static_cast<long long>(m + n + 1) * a;
    } else if (d >= -s) {  // -s <= d <= a - s
        spec.R = range_set(-d - s + a + 1, -d + a);
        spec.S = range_set(1, d + s);
        sign_exp += static_cast<long long>(m + n + 1) * s;
    } else {  // d <= -s
        spec.R = concat_sets(range_set(1, -d - s), range_set(-d - s + a + 1, -d + a));
        spec.S = {};
    }
    Frac res = Rat(sign_pow(sign_exp)) * psi * delta(fam, spec);
    return (Rat(1) / denom_d(fam.z(), B, F)) * res;
}

enum class LaplaceVariant { SplitFermionic, SplitBosonic };

// Laplace expansions of the rectangle determinant as subset sums.
//
// SplitFermionic (valid for a >= s+m-n) splits F = I ⊔ J, |I| = n-s:
//   sum over splits of
//     prod_{j in J}(-z_j)^{a-s-m+n} prod_{(b,j) in BxJ}(z_b - z_j)
//     / prod_{(i,j) in IxJ}(z_i - z_j) * Q_{B,I}^{[a]} Q_J^{[-a+m-n]}.
// SplitBosonic (valid for a <= s+m-n) splits B = I ⊔ J, |I| = a:
//   sum over splits of
//     prod_{i in I} z_i^{s-a+m-n} prod_{(i,f) in IxF}(z_i - z_f)
//     / prod_{(i,j) in IxJ}(z_i - z_j) * Q_I^{[s+m-n]} Q_{J,F}^{[-s]}.
inline Frac t_laplace_sum(const QFamily& fam, int a, int s, Mask B, Mask F, LaplaceVariant variant) {
    int m = mask_card(B), n = mask_card(F);
    const ZParams& zp = fam.z();
    const ShiftBase& base = fam.base();
    Series sum;
    if (variant == LaplaceVariant::SplitFermionic) {
        if (a < s + m - n) throw WrongVariant("fermionic split needs a >= s+m-n");
        int want = n - s;
        Mask sub = F;
        while (true) {
            Mask I = sub, J = F & ~sub;
            if (mask_card(I) == want) {
                Rat coeff(1);
                for (int j : mask_elements(J)) coeff *= rat_pow(-zp.z(j), a - s - m + n);
                for (int b : mask_elements(B))
                    for (int j : mask_elements(J)) coeff *= zp.z(b) - zp.z(j);
                for (int i : mask_elements(I))
                    for (int j : mask_elements(J)) coeff /= zp.z(i) - zp.z(j);
                sum = sum + coeff * (fam.q(B | I).shifted(HalfInt(a), base) *
                                     fam.q(J).shifted(HalfInt(-a + m - n), base));
            }
            if (sub == 0) break;
            sub = (sub - 1) & F;
        }
    } else {
        if (a > s + m - n) throw WrongVariant("bosonic split needs a <= s+m-n");
        int want = a;
        Mask sub = B;
        while (true) {
            Mask I = sub, J = B & ~sub;
            if (mask_card(I) == want) {
                Rat coeff(1);
                for (int i : mask_elements(I)) coeff *= rat_pow(zp.z(i), s - a + m - n);
                for (int i : mask_elements(I))
                    for (int f : mask_elements(F)) coeff *= zp.z(i) - zp.z(f);
                for (int i : mask_elements(I))
                    for (int j : mask_elements(J)) coeff /= zp.z(i) - zp.z(j);
                sum = sum + coeff * (fam.q(I).shifted(HalfInt(s + m - n), base) *
                                     fam.q(J | F).shifted(HalfInt(-s), base));
            }
            if (sub == 0) break;
            sub = (sub - 1) & B;
        }
    }
    return Frac(sum);
}

// Generates the full subset family from the basic functions: the empty
// function, the singletons, and the mixed pairs. Every other entry is the
// empty-diagram determinant T-function divided by Q_∅^{[m-n]}.
inline QFamily build_family_from_basics(const Grading& g, const ZParams& zp, const ShiftBase& base,
                                        int order, const Series& q_empty,
                                        const std::vector<Series>& q_single,
                                        const std::vector<std::vector<Series>>& q_pair) {
    if (static_cast<int>(q_single.size()) != g.size())
        throw BadSpec("build_family_from_basics: need one singleton per index");
    if (static_cast<int>(q_pair.size()) != g.M)
        throw BadSpec("build_family_from_basics: need pair functions for every bosonic index");
    for (const auto& row : q_pair)
        if (static_cast<int>(row.size()) != g.N)
            throw BadSpec("build_family_from_basics: need pair functions for every fermionic index");

    std::vector<Series> q(size_t(1) << g.size(), Series::one());
    q[0] = q_empty;
    for (int a = 1; a <= g.size(); ++a) q[mask_add(0, a)] = q_single[static_cast<size_t>(a) - 1];
    for (int b = 1; b <= g.M; ++b)
        for (int f = g.M + 1; f <= g.size(); ++f)
            q[mask_add(mask_add(0, b), f)] =
                q_pair[static_cast<size_t>(b) - 1][static_cast<size_t>(f - g.M) - 1];
    QFamily seeded(g, zp, base, order, q);

    for (Mask I = 0; I <= g.full(); ++I) {
        Mask B = I & g.bosonic_mask(), F = I & g.fermionic_mask();
        int m = mask_card(B), n = mask_card(F);
        if (m + n < 2 || (m == 1 && n == 1)) continue;
        Frac t0 = t_wronskian(seeded, Partition(), B, F);
        Frac qbf = t0 / Frac(q_empty.shifted(HalfInt(m - n), base));
        q[I] = qbf.to_series(order);
    }
    return QFamily(g, zp, base, order, std::move(q));
}

}  // namespace tqfold
