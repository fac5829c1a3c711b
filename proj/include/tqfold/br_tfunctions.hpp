#pragma once

/**
 * T-functions of the odd-orthogonal reduction.
 *
 * The normalized transfer-matrix eigenvalues T_{a,s} live on the strip
 * 0 <= a <= r, s >= 0; the column index at a=r doubles, with odd s
 * covering the spinorial representations. Everything here is assembled
 * from the generic Wronskian/tableau layer of the ambient (2r|1)-graded
 * family together with the reduction's normalization factors, and every
 * alternative published form (subset sums, iterated determinants,
 * sign sums, non-rectangular determinants, boundary factorizations) is
 * provided so the equalities among them can be checked.
 */

#include <unordered_map>
#include <vector>

#include "br_family.hpp"
#include "matrix.hpp"
#include "partition.hpp"
#include "tableaux.hpp"
#include "wronskian.hpp"

namespace tqfold {

// The normalization factors are stated with Q over the full index set;
// it equals Q over the empty set for a reduced family, and both
// spellings are kept so the equality can itself be checked.
enum class QSpelling { FullSet, EmptySet };

namespace detail {
inline const Series& q_bf(const BrFamily& fam, QSpelling sp) {
    return sp == QSpelling::FullSet ? fam.base().q(fam.base().grading().full())
                                    : fam.base().q(0);
}
}  // namespace detail

// Normalization factor for the rectangle (a,s) on the reduced strip.
inline Frac phi_rect(const BrFamily& fam, int a, int s,
                     QSpelling sp = QSpelling::FullSet) {
    int r = fam.r();
    if (a < 0 || a > r || s < 0) throw BadSpec("normalization factor outside the strip");
    const Series& q0 = fam.base().q(0);
    const Series& qbf = detail::q_bf(fam, sp);
    const ShiftBase& base = fam.base().base();
    Series num = Series::one();
    Series den = Series::one();
    if (a <= r - 1) {
        for (int j = 1; j <= s; ++j)
            num = num * q0.shifted(2 * r - s - a + 2 * j - 1, base) *
                  qbf.shifted(a + s - 2 * j, base);
        den = q0.shifted(2 * r + s - a - 1, base) * qbf.shifted(a - s, base);
    } else if (s % 2 == 0) {
        int sig = s / 2;
        for (int j = 1; j <= sig; ++j)
            num = num * q0.shifted(r - sig + 2 * j - 1, base) *
                  qbf.shifted(r + sig - 2 * j, base);
        den = q0.shifted(r + sig - 1, base) * qbf.shifted(r - sig, base);
    } else {
        int sig = (s - 1) / 2;
        for (int j = 1; j <= sig; ++j)
            num = num * q0.shifted(HalfInt::halves(2 * (r + sig - 2 * j) + 3), base) *
                  qbf.shifted(HalfInt::halves(2 * (r + sig - 2 * j) + 1), base);
        den = q0.shifted(HalfInt::halves(2 * (r + sig) - 1), base);
    }
    return Frac(num, den);
}

// Normalization factor for a general partition contained in r rows,
// reducing to phi_rect on rectangles.
inline Frac phi_mu(const BrFamily& fam, const Partition& mu,
                   QSpelling sp = QSpelling::FullSet) {
    int r = fam.r();
    const Series& q0 = fam.base().q(0);
    const Series& qbf = detail::q_bf(fam, sp);
    const ShiftBase& base = fam.base().base();
    int mu1 = mu.first();
    int mu1p = mu.length();
    Partition mup = conjugate(mu);
    Series num = Series::one();
    for (int j = 1; j <= mu1; ++j)
        num = num * q0.shifted(2 * r - 1 - mu1 + mu1p - 2 * mup.part(j) + 2 * j, base) *
              qbf.shifted(mu1 + mu1p - 2 * j, base);
    Series den = q0.shifted(2 * r - 1 + mu1 - mu1p, base) * qbf.shifted(-mu1 + mu1p, base);
    return Frac(num, den);
}

// Normalized T-function on the reduced strip: the tensor rows 0..r-1
// carry the ambient rectangle (a,s); at a=r the even column index maps
// to the ambient rectangle (r, s/2) and the odd one to the purely
// bosonic Wronskian at half-shift with the spinor prefactor.
inline Frac t_br(const BrFamily& fam, int a, int s, QSpelling sp = QSpelling::FullSet) {
    int r = fam.r();
    if (a < 0 || a > r || s < 0) throw BadSpec("T-function outside the reduced strip");
    Mask B = fam.boson_mask();
    Mask F = fam.fermion_mask();
    if (a <= r - 1) return phi_rect(fam, a, s, sp) * t_rect(fam.base(), a, s, B, F);
    if (s % 2 == 0) return phi_rect(fam, r, s, sp) * t_rect(fam.base(), r, s / 2, B, F);
    int sig = (s - 1) / 2;
    return phi_rect(fam, r, s, sp) * Frac::constant(fam.spinor_prefactor()) *
           t_rect(fam.base(), r, sig, B, 0).shifted(HalfInt::halves(-1), fam.base().base());
}

// Closed product form of the first spinorial T-function:
// prod_j (z_j^{1/2}+z_j^{-1/2}) times the single-index function over the
// full bosonic set (equivalently over the fermion) at shift r - 1/2.
inline Frac tr1_closed(const BrFamily& fam, bool boson_spelling = false) {
    Mask mask = boson_spelling ? fam.boson_mask() : fam.fermion_mask();
    Series q = fam.base().q(mask).shifted(HalfInt::halves(2 * fam.r() - 1), fam.base().base());
    return Frac::constant(fam.spinor_prefactor()) * Frac(q);
}

// Subset-sum forms of the same T-functions: sums over ordered splits of
// the bosonic half with explicit rational coefficients.
inline Frac t_br_sum(const BrFamily& fam, int a, int s, QSpelling sp = QSpelling::FullSet) {
    int r = fam.r();
    if (a < 0 || a > r || s < 0) throw BadSpec("T-function outside the reduced strip");
    const QFamily& f = fam.base();
    const ShiftBase& base = f.base();
    const ZParams& zp = f.z();
    Mask bos = fam.boson_mask();
    Mask ferm = fam.fermion_mask();
    bool odd = (a == r) && (s % 2 == 1);
    int size = (a <= r - 1) ? a : r;
    int sig = (a <= r - 1) ? s : (odd ? (s - 1) / 2 : s / 2);
    long long zpow = (a <= r - 1) ? (s - a + 2 * r - 1) : (odd ? sig + r : sig + r - 1);

    std::vector<int> all = mask_elements(bos);
    Frac sum = Frac::zero();
    for (Mask I = 0; I <= bos; ++I) {
        if ((I & ~bos) != 0 || mask_card(I) != size) continue;
        Mask J = bos & ~I;
        Rat coeff(1);
        for (int i : mask_elements(I)) {
            coeff *= rat_pow(zp.z(i), zpow);
            if (!odd) coeff *= zp.z(i) + Rat(1);
            for (int j : mask_elements(J)) coeff *= Rat(1) / (zp.z(i) - zp.z(j));
        }
        Series qi, qj;
        if (odd) {
            qi = f.q(I).shifted(HalfInt::halves(2 * (sig + 2 * r) - 1), base);
            qj = f.q(J).shifted(HalfInt::halves(-2 * sig - 1), base);
        } else {
            qi = f.q(I).shifted(sig + 2 * r - 1, base);
            qj = f.q(J | ferm).shifted(-sig, base);
        }
        sum = sum + coeff * Frac(qi * qj);
    }
    Frac out = phi_rect(fam, a, s, sp) * sum;
    if (odd) out = Frac::constant(fam.spinor_prefactor()) * out;
    return out;
}

// Residual of the bilinear functional-relation system on the strip; the
// relation shape is selected by the row index:
//   rows 1..r-2 couple to their vertical neighbours,
//   row r-1 couples to the doubled column index at r,
//   row r at even / odd column index carries the half-shifted forms.
inline Series tsystem_residual(const BrFamily& fam, int a, int s) {
    int r = fam.r();
    if (s < 1 || a < 1 || a > r) throw BadSpec("functional relation outside the strip");
    const ShiftBase& base = fam.base().base();
    auto T = [&](int aa, int ss) { return t_br(fam, aa, ss); };
    Frac lhs, rhs;
    if (a <= r - 2) {
        Frac t = T(a, s);
        lhs = t.shifted(-1, base) * t.shifted(1, base);
        rhs = T(a, s + 1) * T(a, s - 1) + T(a - 1, s) * T(a + 1, s);
    } else if (a == r - 1) {
        Frac t = T(r - 1, s);
        lhs = t.shifted(-1, base) * t.shifted(1, base);
        rhs = T(r - 1, s + 1) * T(r - 1, s - 1) + T(r - 2, s) * T(r, 2 * s);
    } else if (s % 2 == 0) {
        int sig = s / 2;
        Frac t = T(r, s);
        lhs = t.shifted(HalfInt::halves(-1), base) * t.shifted(HalfInt::halves(1), base);
        Frac v = T(r - 1, sig);
        rhs = T(r, s + 1) * T(r, s - 1) +
              v.shifted(HalfInt::halves(-1), base) * v.shifted(HalfInt::halves(1), base);
    } else {
        int sig = (s + 1) / 2;
        Frac t = T(r, s);
        lhs = t.shifted(HalfInt::halves(-1), base) * t.shifted(HalfInt::halves(1), base);
        rhs = T(r, s + 1) * T(r, s - 1) + T(r - 1, sig - 1) * T(r - 1, sig);
    }
    return residual(lhs, rhs).truncate_to(fam.base().order());
}

// Residual of the reflection identity: the unnormalized width-one
// T-functions at rows a and 2r-a-1 sum to a product of two shifted
// copies of the first spinorial T-function.
inline Series t_plus_t_residual(const BrFamily& fam, int a) {
    int r = fam.r();
    const ShiftBase& base = fam.base().base();
    Mask B = fam.boson_mask();
    Mask F = fam.fermion_mask();
    Frac lhs = t_rect(fam.base(), a, 1, B, F) + t_rect(fam.base(), 2 * r - a - 1, 1, B, F);
    Frac tr = t_br(fam, r, 1);
    Frac rhs = tr.shifted(HalfInt::halves(2 * (r - a) - 1), base) *
               tr.shifted(HalfInt::halves(-2 * (r - a) + 1), base);
    return residual(lhs, rhs).truncate_to(fam.base().order());
}

// Residual of the boundary factorization: beyond row 2r the width-one
// T-function factorizes into single-index functions.
inline Series t_factor_boundary_residual(const BrFamily& fam, int a) {
    int r = fam.r();
    if (a < 2 * r) throw BadSpec("factorization holds from row 2r on");
    const ShiftBase& base = fam.base().base();
    Frac lhs = t_rect(fam.base(), a, 1, fam.boson_mask(), fam.fermion_mask());
    Rat pref = fam.spinor_prefactor();
    Series rhs = (pref * pref) * (fam.base().q(fam.fermion_mask()).shifted(2 * r - a - 1, base) *
                                  fam.base().q(fam.boson_mask()).shifted(a, base));
    return residual(lhs, Frac(rhs)).truncate_to(fam.base().order());
}

// Residual of the iterated mixed-pair expansion: the two-index function
// over (b, f) rewritten through 2c applications of the mixed bilinear
// relation, valid in any graded family.
inline Series qbf_expand_residual(const BrFamily& fam, int b, int f, int c) {
    if (c < 0) throw BadSpec("expansion depth must be nonnegative");
    const QFamily& q = fam.base();
    const Grading& g = q.grading();
    if (!g.is_bosonic(b) || g.is_bosonic(f)) throw BadIndexSet("need one boson and one fermion");
    const ShiftBase& base = q.base();
    Rat zb = q.z().z(b);
    Rat zf = q.z().z(f);
    Mask bf = mask_add(mask_add(0u, b), f);
    Frac lhs = Frac::constant(Rat(1) / (zb - zf)) * Frac(q.q(bf));
    Frac first = Frac::constant(rat_pow(zb / zf, c) / (zb - zf)) *
                 Frac(q.q(bf).shifted(2 * c, base) * q.q(0), q.q(0).shifted(2 * c, base));
    Frac tail = Frac::zero();
    for (int k = 1; k <= c; ++k) {
        Frac term = Frac::constant(rat_pow(zb / zf, k - 1) / zf) *
                    Frac(q.q(mask_add(0u, b)).shifted(2 * k - 1, base) *
                             q.q(mask_add(0u, f)).shifted(2 * k - 1, base) * q.q(0),
                         q.q(0).shifted(2 * k - 2, base) * q.q(0).shifted(2 * k, base));
        tail = tail + term;
    }
    return residual(lhs, first - tail).truncate_to(q.order());
}

// Exact parameter-space identity: the Cauchy-type denominators with and
// without the fermionic column differ by the squared spinor prefactor.
inline Rat dd_residual(const BrFamily& fam) {
    Mask B = fam.boson_mask();
    Rat lhs = denom_d(fam.base().z(), B, 0) / denom_d(fam.base().z(), B, fam.fermion_mask());
    Rat pref = fam.spinor_prefactor();
    return lhs - pref * pref;
}

// Exact split identity for the same denominators: for I | J = bosons,
// D(I|0) D(J|F) / D(B|F) is a signed rational in the starred images.
inline Rat dd2_residual(const BrFamily& fam, Mask I) {
    int r = fam.r();
    Mask bos = fam.boson_mask();
    if ((I & ~bos) != 0) throw BadIndexSet("split must lie in the bosonic half");
    Mask J = bos & ~I;
    int a = 2 * r - 1 - mask_card(I);
    if (a < 0) throw BadIndexSet("split leaves no room for the row index");
    const ZParams& zp = fam.base().z();
    Rat lhs = denom_d(zp, I, 0) * denom_d(zp, J, fam.fermion_mask()) /
              denom_d(zp, bos, fam.fermion_mask());
    Mask Is = star_mask(r, I);
    Mask Js = star_mask(r, J);
    Rat rhs = sign_pow(a + 1) * Rat(epsilon_sign(mask_elements(I), mask_elements(J)));
    for (int b : mask_elements(Is)) rhs *= rat_pow(zp.z(b), 2 * a - 2 * r + 1) * (zp.z(b) + Rat(1));
    for (int b : mask_elements(Is))
        for (int bp : mask_elements(Js)) rhs /= zp.z(b) - zp.z(bp);
    return lhs - rhs;
}

enum class CbrVariant { Main, App2, App3, App4 };

namespace detail {

// Memoized width-one entries for the iterated determinants.
class T1Cache {
  public:
    explicit T1Cache(const BrFamily& fam) : fam_(&fam) {}
    const Frac& at(int x) {
        auto it = cache_.find(x);
        if (it != cache_.end()) return it->second;
        Frac v = x < 0 ? Frac::zero()
                       : t_rect(fam_->base(), x, 1, fam_->boson_mask(), fam_->fermion_mask());
        return cache_.emplace(x, std::move(v)).first->second;
    }

  private:
    const BrFamily* fam_;
    std::unordered_map<int, Frac> cache_;
};

}  // namespace detail

// Iterated determinants over width-one entries reproducing T_{a,s}; the
// main forms and their three published rewritings.
inline Frac cbr_br(const BrFamily& fam, int a, int s, CbrVariant variant = CbrVariant::Main) {
    int r = fam.r();
    if (a < 0 || a > r || s < 0) throw BadSpec("determinant outside the reduced strip");
    const ShiftBase& base = fam.base().base();
    detail::T1Cache t1(fam);
    bool odd = (a == r) && (s % 2 == 1);
    if (!odd) {
        if (variant == CbrVariant::App3 || variant == CbrVariant::App4)
            throw WrongVariant("these rewritings exist only at odd column index");
        int n = (a == r) ? s / 2 : s;
        int row = (a == r) ? r : a;
        if (n == 0) return Frac::one();
        FracMatrix m(static_cast<size_t>(n), std::vector<Frac>(static_cast<size_t>(n)));
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                int shift = variant == CbrVariant::Main ? (n - i - j + 1) : (-n + i + j - 1);
                m[static_cast<size_t>(i) - 1][static_cast<size_t>(j) - 1] =
                    t1.at(row - i + j).shifted(shift, base);
            }
        return det(m);
    }
    int sig = (s - 1) / 2;
    int n = sig + 1;
    Frac tr = t_br(fam, r, 1);
    FracMatrix m(static_cast<size_t>(n), std::vector<Frac>(static_cast<size_t>(n)));
    for (int i = 1; i <= n; ++i) {
        switch (variant) {
            case CbrVariant::Main:
                for (int j = 1; j <= sig; ++j)
                    m[static_cast<size_t>(i) - 1][static_cast<size_t>(j) - 1] =
                        t1.at(r - i + j).shifted(HalfInt::halves(2 * (sig - i - j) + 3), base);
                m[static_cast<size_t>(i) - 1][static_cast<size_t>(n) - 1] =
                    tr.shifted(sig - 2 * i + 2, base);
                break;
            case CbrVariant::App2:
                m[static_cast<size_t>(i) - 1][0] = tr.shifted(-sig + 2 * i - 2, base);
                for (int j = 2; j <= n; ++j)
                    m[static_cast<size_t>(i) - 1][static_cast<size_t>(j) - 1] =
                        t1.at(r + i - j).shifted(HalfInt::halves(2 * (-sig + i + j) - 5), base);
                break;
            case CbrVariant::App3:
                for (int j = 1; j <= sig; ++j)
                    m[static_cast<size_t>(i) - 1][static_cast<size_t>(j) - 1] =
                        t1.at(r - i + j).shifted(HalfInt::halves(2 * (-sig + i + j) - 3), base);
                m[static_cast<size_t>(i) - 1][static_cast<size_t>(n) - 1] =
                    tr.shifted(-sig + 2 * i - 2, base);
                break;
            case CbrVariant::App4:
                m[static_cast<size_t>(i) - 1][0] = tr.shifted(sig - 2 * i + 2, base);
                for (int j = 2; j <= n; ++j)
                    m[static_cast<size_t>(i) - 1][static_cast<size_t>(j) - 1] =
                        t1.at(r + i - j).shifted(HalfInt::halves(2 * (sig - i - j) + 5), base);
                break;
        }
    }
    return det(m);
}

enum class FormVariant { Main, Appendix };

// The 2^r-term sign sum for the first spinorial T-function, written in
// ratios of nested single-prefix functions.
inline Frac t_spinor_sum(const BrFamily& fam, FormVariant variant = FormVariant::Main) {
    int r = fam.r();
    const QFamily& f = fam.base();
    const ShiftBase& base = f.base();
    std::vector<Mask> prefix(static_cast<size_t>(r) + 1, 0u);
    for (int a = 1; a <= r; ++a) prefix[static_cast<size_t>(a)] = mask_add(prefix[static_cast<size_t>(a) - 1], a);
    bool flip = variant == FormVariant::Appendix;
    Frac total = Frac::zero();
    for (uint32_t bits = 0; bits < (1u << r); ++bits) {
        auto sgn = [&](int a) {
            if (a == r + 1) return -((bits >> (r - 1) & 1u) ? 1 : -1);
            return (bits >> (a - 1) & 1u) ? 1 : -1;
        };
        auto rho = [&](int a) {
            int v = 0;
            for (int j = 1; j < a; ++j) v += 2 * sgn(j);
            if (a == r) return v + sgn(r);
            return v + sgn(a) - sgn(a + 1);
        };
        int s1 = sgn(1);
        Frac term = Frac(f.q(0).shifted(
            HalfInt::halves(2 * ((flip ? s1 : -s1) + r) - 1), base));
        for (int a = 1; a <= r - 1; ++a) {
            int e = (sgn(a) - sgn(a + 1)) / 2;
            Rat zhalf = rat_pow(fam.z_half(a), flip ? -sgn(a) : sgn(a));
            term = term * Frac::constant(zhalf);
            if (e != 0) {
                const Series& q = f.q(prefix[static_cast<size_t>(a)]);
                HalfInt up = flip ? HalfInt::halves(2 * r - 3 - rho(a))
                                  : HalfInt::halves(2 * r + 1 + rho(a));
                HalfInt dn = flip ? HalfInt::halves(2 * r + 1 - rho(a))
                                  : HalfInt::halves(2 * r - 3 + rho(a));
                term = term * Frac(q.shifted(up, base), q.shifted(dn, base)).pow(e);
            }
        }
        int er = sgn(r);
        term = term * Frac::constant(rat_pow(fam.z_half(r), flip ? -er : er));
        {
            const Series& q = f.q(prefix[static_cast<size_t>(r)]);
            HalfInt up = flip ? HalfInt::halves(2 * (r - 1) - rho(r))
                              : HalfInt::halves(2 * r + rho(r));
            HalfInt dn = flip ? HalfInt::halves(2 * r - rho(r))
                              : HalfInt::halves(2 * (r - 1) + rho(r));
            term = term * Frac(q.shifted(up, base), q.shifted(dn, base)).pow(er);
        }
        total = total + term;
    }
    return total;
}

// Residual of the four-term expansion of the r=2 spinorial T-function
// (the proven instance of the sign sum).
inline Series spinor_product_residual(const BrFamily& fam) {
    if (fam.r() != 2) throw BadSpec("the four-term expansion is specific to r=2");
    const QFamily& f = fam.base();
    const ShiftBase& base = f.base();
    const Series& q0 = f.q(0);
    const Series& q1 = f.q(mask_add(0u, 1));
    const Series& q12 = f.q(mask_add(mask_add(0u, 1), 2));
    auto sh = [&](const Series& q, int halves) { return q.shifted(HalfInt::halves(halves), base); };
    Rat w1 = fam.z_half(1), w2 = fam.z_half(2);
    Frac lhs = Frac(sh(q1, 3) * sh(q12, 1) * sh(q12, 5)) * t_br(fam, 2, 1);
    Series rhs = (w1 * w2) * (sh(q0, 1) * sh(q1, 3) * sh(q12, 1) * sh(q12, 7)) +
                 (w1 / w2) * (sh(q0, 1) * sh(q1, 7) * sh(q12, 1) * sh(q12, 3)) +
                 (w2 / w1) * (sh(q0, 5) * sh(q1, -1) * sh(q12, 3) * sh(q12, 5)) +
                 (Rat(1) / (w1 * w2)) * (sh(q0, 5) * sh(q1, 3) * sh(q12, -1) * sh(q12, 5));
    return residual(lhs, Frac(rhs)).truncate_to(f.order());
}

enum class NonRectKind { Tensor, Spinor };

// CBR-type determinants over a skew diagram: the tensor form is a
// square matrix of width-one entries; the spinor form replaces one
// column by shifted copies of the first spinorial T-function.
inline Frac t_nonrect(const BrFamily& fam, const SkewDiagram& d, NonRectKind kind,
                      FormVariant variant = FormVariant::Main) {
    int r = fam.r();
    const ShiftBase& base = fam.base().base();
    int mu1 = d.mu.first();
    if (mu1 == 0) return Frac::one();
    int mu1p = d.mu.length();
    Partition mup = conjugate(d.mu);
    Partition lamp = conjugate(d.lam);
    detail::T1Cache t1(fam);
    FracMatrix m(static_cast<size_t>(mu1), std::vector<Frac>(static_cast<size_t>(mu1)));
    if (kind == NonRectKind::Tensor) {
        for (int i = 1; i <= mu1; ++i)
            for (int j = 1; j <= mu1; ++j) {
                int shift = mu1 - mu1p + mup.part(i) + lamp.part(j) - i - j + 1;
                if (variant == FormVariant::Appendix) shift = -shift;
                m[static_cast<size_t>(i) - 1][static_cast<size_t>(j) - 1] =
                    t1.at(mup.part(i) - lamp.part(j) - i + j).shifted(shift, base);
            }
        return det(m);
    }
    Frac tr = t_br(fam, r, 1);
    if (variant == FormVariant::Main) {
        for (int i = 1; i <= mu1; ++i) {
            for (int j = 1; j <= mu1 - 1; ++j)
                m[static_cast<size_t>(i) - 1][static_cast<size_t>(j) - 1] =
                    t1.at(mup.part(i) - lamp.part(j) - i + j)
                        .shifted(HalfInt::halves(2 * (2 * mu1 + mup.part(i) + lamp.part(j) - i -
                                                      j - r) - 1),
                                 base);
            m[static_cast<size_t>(i) - 1][static_cast<size_t>(mu1) - 1] =
                tr.shifted(2 * mu1 + 2 * mup.part(i) - 2 * i - 2 * r, base);
        }
    } else {
        for (int i = 1; i <= mu1; ++i) {
            m[static_cast<size_t>(i) - 1][0] =
                tr.shifted(2 * i - 2 + 2 * (mu1p - lamp.part(i) - r), base);
            for (int j = 2; j <= mu1; ++j)
                m[static_cast<size_t>(i) - 1][static_cast<size_t>(j) - 1] =
                    t1.at(mup.part(j) - lamp.part(i) + i - j)
                        .shifted(HalfInt::halves(2 * (2 * mu1p - mup.part(j) - lamp.part(i) + i +
                                                      j - r) - 5),
                                 base);
        }
    }
    return det(m);
}

// Residual of the tensor-kind Wronskian equality: the rotated-diagram
// determinant (or its unrotated appendix form) against the
// normalization factor times the ambient Wronskian T-function.
inline Series speven_residual(const BrFamily& fam, const Partition& mu,
                              FormVariant variant = FormVariant::Main,
                              QSpelling sp = QSpelling::FullSet) {
    SkewDiagram arg =
        variant == FormVariant::Main ? rotate180(SkewDiagram::whole(mu)) : SkewDiagram::whole(mu);
    Frac lhs = t_nonrect(fam, arg, NonRectKind::Tensor, variant);
    Frac rhs =
        phi_mu(fam, mu, sp) * t_wronskian(fam.base(), mu, fam.boson_mask(), fam.fermion_mask());
    return residual(lhs, rhs).truncate_to(fam.base().order());
}

// Residual of the spinor-kind Wronskian equality: the column-augmented
// diagram's determinant against the half-shifted purely bosonic
// Wronskian with the spinor prefactor.
inline Series spinodd_residual(const BrFamily& fam, const Partition& mu,
                               FormVariant variant = FormVariant::Main,
                               QSpelling sp = QSpelling::FullSet) {
    int r = fam.r();
    if (mu.length() > r) throw BadSpec("the spinor equality needs at most r rows");
    const ShiftBase& base = fam.base().base();
    int mu1 = mu.first();
    int mu1p = mu.length();
    Partition aug = add_column(mu, r);
    SkewDiagram arg =
        variant == FormVariant::Main ? rotate180(SkewDiagram::whole(aug)) : SkewDiagram::whole(aug);
    Frac lhs = t_nonrect(fam, arg, NonRectKind::Spinor, variant).shifted(-mu1 + mu1p - r, base);
    Frac rhs = Frac(detail::q_bf(fam, sp).shifted(HalfInt::halves(2 * (-mu1 + mu1p) + 1), base)) *
               phi_mu(fam, mu, sp).shifted(HalfInt::halves(1), base) *
               Frac::constant(fam.spinor_prefactor()) *
               t_wronskian(fam.base(), mu, fam.boson_mask(), 0)
                   .shifted(HalfInt::halves(-1), base);
    return residual(lhs, rhs).truncate_to(fam.base().order());
}

// Residual of the finite-depth factorization: appending a column of
// height r+c splits the ambient T-function into explicit single-index
// factors times the purely bosonic Wronskian.
inline Series factorization_residual(const BrFamily& fam, const Partition& mu, int c) {
    int r = fam.r();
    if (c <= r) throw BadSpec("factorization depth must exceed r");
    if (mu.length() > r) throw BadSpec("factorization needs at most r rows");
    const ShiftBase& base = fam.base().base();
    const Series& q0 = fam.base().q(0);
    int mu1 = mu.first();
    int mu1p = mu.length();
    Partition aug = add_column(mu, r + c);
    Frac lhs = t_wronskian(fam.base(), aug, fam.boson_mask(), fam.fermion_mask())
                   .shifted(HalfInt::halves(2 * (mu1p - r - c) - 1), base);
    Rat pref = fam.spinor_prefactor();
    Frac factor = Frac(q0.shifted(HalfInt::halves(2 * (mu1p + mu1 - 2 * c) - 1), base),
                       q0.shifted(HalfInt::halves(2 * (mu1p - mu1 - 2 * c) - 1), base) *
                           q0.shifted(HalfInt::halves(2 * (-mu1p + mu1 + 2 * r) - 1), base));
    Frac rhs = factor * Frac::constant(pref * pref) *
               Frac(fam.base()
                        .q(fam.fermion_mask())
                        .shifted(HalfInt::halves(2 * (mu1p - mu1 - 2 * c) - 3), base)) *
               t_wronskian(fam.base(), mu, fam.boson_mask(), 0)
                   .shifted(HalfInt::halves(-1), base);
    return residual(lhs, rhs).truncate_to(fam.base().order());
}

// Residual of the column-splitting identity: the single-column tableau
// sum over all 2r+1 labels decomposed through the purely bosonic
// column sums.
inline Series f_column_residual(const BrFamily& fam, int a) {
    if (a < 0) throw BadSpec("column height must be nonnegative");
    int r = fam.r();
    const QFamily& f = fam.base();
    const ShiftBase& base = f.base();
    std::vector<int> full, bosons;
    for (int i = 1; i <= 2 * r + 1; ++i) full.push_back(i);
    for (int i = 1; i <= 2 * r; ++i) bosons.push_back(i);
    auto column = [](int height) {
        return SkewDiagram::whole(Partition(std::vector<int>(static_cast<size_t>(height), 1)));
    };
    Frac lhs = t_tableau_sum(f, full, column(a));
    const Series& qb = f.q(fam.boson_mask());
    const Series& qbf = f.q(f.grading().full());
    Frac rhs = Frac::zero();
    for (int k = 0; k <= std::min(a, 2 * r); ++k) {
        Frac fk = t_tableau_sum(f, bosons, column(k)).shifted(k - a - 1, base);
        Frac ratio = Frac(qb.shifted(a, base) * qbf.shifted(2 * k - a - 1, base),
                          qb.shifted(2 * k - a, base) * qbf.shifted(a - 1, base));
        rhs = rhs + fk * ratio;
    }
    return residual(lhs, rhs).truncate_to(f.order());
}

}  // namespace tqfold
