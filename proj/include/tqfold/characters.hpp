#pragma once

/**
 * Exact character values of the reduced T-functions at sampled
 * parameters, the bilinear recurrence those values satisfy, and the
 * unit-parameter dimension limits.
 *
 * A character value is the T-function of a constant family: every
 * series coefficient beyond u^0 vanishes, shifts act trivially, and the
 * determinant forms collapse to exact rational numbers depending only
 * on the parameters.  The unit point w = 1 cannot be substituted
 * directly -- the alternant denominators of the determinant forms
 * vanish there -- so the limits are computed along the one-variable
 * deformation w_j = 1 + j*eps: every quantity becomes an exact series
 * in eps, the common vanishing order of numerator and denominator is
 * cancelled, and the limit is the ratio of the first surviving
 * coefficients.
 */

#include <cstdint>
#include <utility>
#include <vector>

#include "br_family.hpp"
#include "br_tfunctions.hpp"
#include "errors.hpp"
#include "frac.hpp"
#include "matrix.hpp"
#include "partition.hpp"
#include "qfamily.hpp"
#include "rational.hpp"
#include "series.hpp"
#include "tableaux.hpp"

namespace tqfold {

// A character value: exact, rational, independent of the series variable.
using CharValue = Rat;

namespace detail {

inline BrFamily constant_br_family(int r, const std::vector<Rat>& w) {
    Grading g(2 * r, 1);
    std::vector<Series> q(size_t(1) << g.size(), Series::one());
    return BrFamily(r, QFamily(g, br_zparams(r, w), ShiftBase(Rat(2)), 2, std::move(q)), w, {});
}

inline void require_constant_family(const BrFamily& fam) {
    for (const Series& q : fam.base().entries())
        if (q.degree() > 0) throw BadSpec("character values need a constant family");
}

inline CharValue chi_value(const BrFamily& fam, int a, int s) {
    Frac t = t_br(fam, a, s);
    if (t.den().coeff(0) == 0)
        throw DegenerateParameters("character value: denominator vanishes at the sampled point");
    return t.num().coeff(0) / t.den().coeff(0);
}

}  // namespace detail

// chi_{a,s} at the sampled parameter point, for 0 <= a <= r and s >= 0.
inline CharValue kr_character(const BrFamily& fam, int a, int s) {
    detail::require_constant_family(fam);
    return detail::chi_value(fam, a, s);
}

inline CharValue kr_character(int r, int a, int s, const std::vector<Rat>& w) {
    return detail::chi_value(detail::constant_br_family(r, w), a, s);
}

// Residual of the bilinear recurrence satisfied by the character values
// on the reduced strip, with the same row dispatch as the series-level
// functional relations: rows 1..r-2 couple to their vertical
// neighbours, row r-1 couples to the doubled column index at row r, and
// row r alternates between the two half-index couplings.  Boundary
// values chi_{a,0} = chi_{0,s} = 1 enter through the same evaluator.
inline CharValue qsystem_residual(const BrFamily& fam, int a, int s) {
    int r = fam.r();
    if (a < 1 || a > r) throw BadSpec("recurrence outside the strip");
    if (s < 1) throw BadSpec("recurrence needs a positive column index");
    detail::require_constant_family(fam);
    auto chi = [&fam](int aa, int ss) { return detail::chi_value(fam, aa, ss); };
    CharValue square = chi(a, s) * chi(a, s);
    if (a <= r - 2) return square - chi(a, s + 1) * chi(a, s - 1) - chi(a - 1, s) * chi(a + 1, s);
    if (a == r - 1) return square - chi(a, s + 1) * chi(a, s - 1) - chi(r - 2, s) * chi(r, 2 * s);
    if (s % 2 == 0) {
        int half = s / 2;
        return square - chi(r, s + 1) * chi(r, s - 1) - chi(r - 1, half) * chi(r - 1, half);
    }
    int half = (s + 1) / 2;
    return square - chi(r, s + 1) * chi(r, s - 1) - chi(r - 1, half - 1) * chi(r - 1, half);
}

inline CharValue qsystem_residual(int r, int a, int s, const std::vector<Rat>& w) {
    return qsystem_residual(detail::constant_br_family(r, w), a, s);
}

// Outcome of a unit-parameter character limit.
struct DimensionCheck {
    int r = 0;
    CharValue value{0};         // limit read off after the cancellation
    CharValue expected{0};      // independently counted dimension
    int cancelled_order = 0;    // common vanishing order cleared in eps
    bool finite = false;        // no pole survived the cancellation
    bool routes_agree = false;  // sampled deformation matched the production evaluators
    bool ok() const { return finite && routes_agree && value == expected; }
};

namespace detail {

inline Series series_pow(const Series& s, int e) {
    Series out = Series::one();
    for (int k = 0; k < e; ++k) out = out * s;
    return out;
}

// First-row character as the explicit block determinant over given
// bosonic parameter values (index j carries P_j, index r+j its
// inverse), divided by the alternant.  The same arithmetic serves both
// sampled rational parameters and the unit-point deformation series.
inline Frac chi_vector_alternant(int r, const std::vector<Series>& P) {
    int two_r = 2 * r;
    std::vector<Frac> z;
    for (int j = 0; j < r; ++j) z.emplace_back(P[static_cast<size_t>(j)]);
    for (int j = 0; j < r; ++j) z.push_back(Frac(Series::one(), P[static_cast<size_t>(j)]));
    std::vector<int> cols;  // integer column labels next to the fermionic one
    for (int j = 1; j <= two_r - 2; ++j) cols.push_back(j);
    cols.push_back(two_r);
    FracMatrix m(static_cast<size_t>(two_r), std::vector<Frac>(static_cast<size_t>(two_r)));
    for (int b = 0; b < two_r; ++b) {
        // z_f = -1, so the fermionic column holds 1 / (z_b + 1)
        m[static_cast<size_t>(b)][0] = Frac::one() / (z[static_cast<size_t>(b)] + Frac::one());
        for (size_t k = 0; k < cols.size(); ++k)
            m[static_cast<size_t>(b)][k + 1] = z[static_cast<size_t>(b)].pow(cols[k] - 1);
    }
    Frac d = det(m);
    Frac alternant = Frac::one();
    for (int i = 0; i < two_r; ++i)
        for (int j = i + 1; j < two_r; ++j)
            alternant = alternant * (z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)]);
    Frac units = Frac::one();
    for (int b = 0; b < two_r; ++b) units = units * (z[static_cast<size_t>(b)] + Frac::one());
    return Rat(sign_pow(static_cast<long long>(r) * (2 * r - 1))) * d * units / alternant;
}

// Spinor character as the subset sum over splits of the bosonic half.
// Returns the regular part together with the power of eps it carries:
// the true value is eps^{-shift} times the series.  Every denominator
// factor is divided down to a unit before inversion, so the arithmetic
// stays exact to the working order.
inline std::pair<Series, int> chi_spinor_split_sum(int r, const std::vector<Series>& W, int order) {
    std::vector<Series> P;
    for (const Series& w : W) P.push_back(w * w);
    std::vector<Series> zn, zd;  // z as exact numerator/denominator pairs
    for (int j = 0; j < r; ++j) {
        zn.push_back(P[static_cast<size_t>(j)]);
        zd.push_back(Series::one());
    }
    for (int j = 0; j < r; ++j) {
        zn.push_back(Series::one());
        zd.push_back(P[static_cast<size_t>(j)]);
    }
    int two_r = 2 * r;
    Series sum;
    int shift = -1;
    for (uint32_t I = 0; I < (uint32_t(1) << two_r); ++I) {
        if (__builtin_popcount(I) != r) continue;
        Series num = Series::one(), den = Series::one();
        for (int i = 0; i < two_r; ++i) {
            if (!(I >> i & 1)) continue;
            num = num * series_pow(zn[static_cast<size_t>(i)], r);
            den = den * series_pow(zd[static_cast<size_t>(i)], r);
            for (int j = 0; j < two_r; ++j) {
                if (I >> j & 1) continue;
                // z_i - z_j = (zn_i zd_j - zn_j zd_i) / (zd_i zd_j)
                den = den * (zn[static_cast<size_t>(i)] * zd[static_cast<size_t>(j)] -
                             zn[static_cast<size_t>(j)] * zd[static_cast<size_t>(i)]);
                num = num * zd[static_cast<size_t>(i)] * zd[static_cast<size_t>(j)];
            }
        }
        auto v = den.first_nonzero();
        if (!v) throw DegenerateParameters("split sum: denominator vanishes identically");
        if (shift < 0) shift = *v;
        if (*v != shift) throw DegenerateParameters("split sum: uneven pole orders across terms");
        std::vector<Rat> unit;
        for (int k = *v; k <= den.degree(); ++k) unit.push_back(den.coeff(k));
        Series den_unit = Series::polynomial(std::move(unit));
        sum = sum + num.truncate_to(order) * den_unit.truncate_to(order).inverse();
    }
    Series pre_num = Series::one(), pre_den = Series::one();
    for (int j = 0; j < r; ++j) {
        // w + 1/w = (P + 1) / w
        pre_num = pre_num * (P[static_cast<size_t>(j)] + Series::one());
        pre_den = pre_den * W[static_cast<size_t>(j)];
    }
    Series pre = pre_num.truncate_to(order) * pre_den.truncate_to(order).inverse();
    return {pre * sum, shift};
}

inline CharValue frac_point_value(const Frac& f) {
    if (f.den().coeff(0) == 0)
        throw DegenerateParameters("point value: denominator vanishes at the sampled point");
    return f.num().coeff(0) / f.den().coeff(0);
}

inline std::vector<Rat> deformed_w(int r, const Rat& eps) {
    std::vector<Rat> w;
    for (int j = 1; j <= r; ++j) w.push_back(Rat(1) + Rat(j) * eps);
    return w;
}

}  // namespace detail

// Unit-parameter limit of the first-row character against the count of
// admissible one-box fillings.
inline DimensionCheck vector_dimension_check(int r) {
    if (r < 2) throw BadSpec("dimension check needs rank at least 2");
    DimensionCheck out;
    out.r = r;

    Grading g(2 * r, 1);
    std::vector<int> tuple;
    for (int a = 1; a <= g.size(); ++a) tuple.push_back(a);
    SkewDiagram box = SkewDiagram::whole(Partition{1});
    out.expected = Rat(static_cast<long long>(enumerate_tableaux(g, tuple, box).size()));

    int order = r * (2 * r - 1) + 6;
    std::vector<Series> P;
    for (int j = 1; j <= r; ++j)
        P.push_back(Series::truncated({Rat(1), Rat(2 * j), Rat(j) * Rat(j)}, order));
    Frac chi = detail::chi_vector_alternant(r, P);
    auto dv = chi.den().first_nonzero();
    if (!dv) throw DegenerateParameters("dimension check: denominator vanishes to the working order");
    out.cancelled_order = *dv;
    auto nv = chi.num().first_nonzero();
    if (nv && *nv < *dv) return out;  // pole survives; finite stays false
    out.finite = true;
    out.value = (nv && *nv == *dv) ? chi.num().coeff(*dv) / chi.den().coeff(*dv) : Rat(0);

    out.routes_agree = true;
    for (const Rat& eps : {Rat(1, 7), Rat(1, 9)}) {
        std::vector<Rat> w = detail::deformed_w(r, eps);
        std::vector<Series> ps;
        for (const Rat& wj : w) ps.push_back(Series::constant(wj * wj));
        CharValue mirror = detail::frac_point_value(detail::chi_vector_alternant(r, ps));
        BrFamily fam = detail::constant_br_family(r, w);
        CharValue det_route = detail::chi_value(fam, 1, 1);
        CharValue box_route =
            detail::frac_point_value(t_tableau_sum(fam.base(), tuple, box));
        if (mirror != det_route || mirror != box_route) out.routes_agree = false;
    }
    return out;
}

// Unit-parameter limit of the first spinor character against the
// closed two-term product per node.
inline DimensionCheck spinor_dimension_check(int r) {
    if (r < 2) throw BadSpec("dimension check needs rank at least 2");
    DimensionCheck out;
    out.r = r;
    out.expected = Rat(1);
    for (int j = 0; j < r; ++j) out.expected *= Rat(1) + Rat(1);

    int order = r * r + 6;
    std::vector<Series> W;
    for (int j = 1; j <= r; ++j) W.push_back(Series::polynomial({Rat(1), Rat(j)}));
    auto [bracket, shift] = detail::chi_spinor_split_sum(r, W, order);
    out.cancelled_order = shift;
    bool pole = false;
    for (int k = 0; k < shift; ++k)
        if (bracket.coeff(k) != 0) pole = true;
    if (pole) return out;
    out.finite = true;
    out.value = bracket.coeff(shift);

    out.routes_agree = true;
    for (const Rat& eps : {Rat(1, 7), Rat(1, 9)}) {
        std::vector<Rat> w = detail::deformed_w(r, eps);
        std::vector<Series> ws;
        for (const Rat& wj : w) ws.push_back(Series::constant(wj));
        auto [point, zero_shift] = detail::chi_spinor_split_sum(r, ws, 2);
        if (zero_shift != 0) throw DegenerateParameters("split sum: sampled point is degenerate");
        CharValue mirror = point.coeff(0);
        BrFamily fam = detail::constant_br_family(r, w);
        CharValue closed_route = detail::chi_value(fam, r, 1);
        CharValue sum_route = detail::frac_point_value(t_br_sum(fam, r, 1));
        if (mirror != closed_route || mirror != sum_route) out.routes_agree = false;
    }
    return out;
}

}  // namespace tqfold
