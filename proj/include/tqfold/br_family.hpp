#pragma once

/**
 * The odd-orthogonal reduction of a (2r|1)-graded Q-function family.
 *
 * The index set splits as 2r bosons plus one fermion; the involution
 * a* = 2r-a+1 pairs the bosons. Parameters are constrained by
 *   z_{a*} = z_a^{-1},  z_{2r+1} = -1,
 * and the subset functions by
 *   Q_B = Q_{Bos\B*, Ferm}   for every B inside the bosonic half.
 *
 * Families are produced by an order-by-order linear solver for the
 * coefficients of the single-index functions, driven by one of two
 * equation routes; the solver reports the exact rank of every order
 * and never resolves rank deficiencies silently.
 */

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "qfamily.hpp"
#include "series.hpp"
#include "wronskian.hpp"

namespace tqfold {

inline int star_index(int r, int a) {
    if (a < 1 || a > 2 * r) throw BadIndexSet("star pairing is defined on the bosonic half");
    return 2 * r - a + 1;
}

inline Mask star_mask(int r, Mask B) {
    Mask out = 0;
    for (int a : mask_elements(B)) out = mask_add(out, star_index(r, a));
    return out;
}

// Constrained parameters from the r positive square roots: z_b = w_b^2,
// z_{b*} = w_b^{-2}, fermionic value -1.
inline ZParams br_zparams(int r, const std::vector<Rat>& w) {
    if (static_cast<int>(w.size()) != r) throw BadSpec("need one square root per unpaired boson");
    std::vector<Rat> roots;
    for (int b = 1; b <= r; ++b) {
        if (w[static_cast<size_t>(b) - 1] <= 0)
            throw DegenerateParameters("square roots must be positive");
        if (w[static_cast<size_t>(b) - 1] == Rat(1))
            throw DegenerateParameters("square roots must differ from one");
        roots.push_back(w[static_cast<size_t>(b) - 1]);
    }
    for (int b = r; b >= 1; --b) roots.push_back(Rat(1) / w[static_cast<size_t>(b) - 1]);
    roots.push_back(Rat(-1));  // fermionic value, stored directly
    return ZParams::from_sqrt(Grading(2 * r, 1), roots);
}

// Default generic square roots: odd primes.
inline std::vector<Rat> default_br_w(int r) {
    static const int primes[] = {3, 5, 7, 11, 13, 17, 19, 23};
    if (r > 8) throw BadSpec("no default square roots this large");
    std::vector<Rat> w;
    for (int b = 0; b < r; ++b) w.push_back(Rat(primes[b]));
    return w;
}

// One order of the seeding solver: exact rank data of the linear system
// for the top coefficients.
struct OrderSolveInfo {
    int order = 0;
    int rank = 0;
    int unknowns = 0;
    int free_parameters = 0;
    bool consistent = true;
};

enum class SeedRoute {
    DeterminantIntoHalfShift,  // determinant singles substituted into the half-shift relations
    DeterminantIntoReduction,  // determinant subsets substituted into the reduction identities
};

enum class GaugePolicy {
    RequireUnique,  // throw UnderdeterminedOrder on any rank deficiency
    ZeroFree,       // fix free coordinates to zero, recorded in the solve log
};

class BrFamily {
  public:
    // Tag for internal construction of candidate families whose subset
    // functions are not yet known to close under the reduction.
    struct SkipReductionCheck {};

    BrFamily(int r, QFamily base, std::vector<Rat> w, std::vector<OrderSolveInfo> log = {})
        : BrFamily(r, std::move(base), std::move(w), std::move(log), false) {}

    BrFamily(int r, QFamily base, std::vector<Rat> w, std::vector<OrderSolveInfo> log,
             SkipReductionCheck)
        : BrFamily(r, std::move(base), std::move(w), std::move(log), true) {}

    int r() const { return r_; }
    const QFamily& base() const { return base_; }
    const std::vector<OrderSolveInfo>& solve_log() const { return log_; }

    Mask boson_mask() const { return base_.grading().bosonic_mask(); }
    Mask fermion_mask() const { return base_.grading().fermionic_mask(); }
    int fermion_index() const { return 2 * r_ + 1; }

    // Square root z_a^{1/2} for a in the bosonic half (positive branch).
    Rat z_half(int a) const {
        if (a >= 1 && a <= r_) return w_[static_cast<size_t>(a) - 1];
        if (a > r_ && a <= 2 * r_) return Rat(1) / w_[static_cast<size_t>(2 * r_ - a + 1) - 1];
        throw BadIndexSet("square roots exist only for bosonic indices");
    }
    const std::vector<Rat>& w() const { return w_; }

    // prod_j (z_j^{1/2} + z_j^{-1/2}) over the unpaired bosons.
    Rat spinor_prefactor() const {
        Rat p(1);
        for (int b = 1; b <= r_; ++b) p *= z_half(b) + Rat(1) / z_half(b);
        return p;
    }

  private:
    BrFamily(int r, QFamily base, std::vector<Rat> w, std::vector<OrderSolveInfo> log,
             bool skip_reduction_check)
        : r_(r), base_(std::move(base)), w_(std::move(w)), log_(std::move(log)) {
        if (r_ < 2) throw BadSpec("reduction needs at least two boson pairs");
        if (base_.grading().M != 2 * r_ || base_.grading().N != 1)
            throw BadSpec("reduction base must have 2r bosons and one fermion");
        if (static_cast<int>(w_.size()) != r_) throw BadSpec("need r square roots");
        const ZParams& zp = base_.z();
        for (int b = 1; b <= r_; ++b) {
            const Rat& wb = w_[static_cast<size_t>(b) - 1];
            if (wb <= 0 || wb == Rat(1))
                throw DegenerateParameters("square roots must be positive and differ from one");
            if (zp.z(b) != wb * wb)
                throw ReductionInconsistent("square root does not match parameter " +
                                            std::to_string(b));
        }
        Rat prod(1);
        for (int a = 1; a <= 2 * r_; ++a) {
            if (zp.z(star_index(r_, a)) * zp.z(a) != Rat(1))
                throw ReductionInconsistent("paired parameters must be inverse to each other");
            prod *= zp.z(a);
        }
        if (prod != Rat(1)) throw ReductionInconsistent("bosonic parameters must multiply to one");
        if (zp.z(2 * r_ + 1) != Rat(-1))
            throw ReductionInconsistent("fermionic parameter must be -1");
        if (!skip_reduction_check) {
            Mask bos = base_.grading().bosonic_mask();
            Mask ferm = base_.grading().fermionic_mask();
            for (Mask B = 0; B <= bos; ++B) {
                if ((B & ~bos) != 0) continue;
                Mask rhs = (bos & ~star_mask_of(B)) | ferm;
                if (!(base_.q(B) - base_.q(rhs)).truncate_to(base_.order()).is_zero())
                    throw ReductionInconsistent("subset functions do not close under the "
                                                "reduction at B=" +
                                                subset_str(B));
            }
        }
    }

    Mask star_mask_of(Mask B) const {
        Mask out = 0;
        for (int a : mask_elements(B)) out = mask_add(out, star_index(r_, a));
        return out;
    }

    int r_;
    QFamily base_;
    std::vector<Rat> w_;
    std::vector<OrderSolveInfo> log_;
};

// Residual of the reduction identity Q_B - Q_{Bos\B*,Ferm} for B inside
// the bosonic half.
inline Series reduction_residual(const BrFamily& fam, Mask B) {
    if ((B & ~fam.boson_mask()) != 0) throw BadIndexSet("reduction acts on bosonic subsets");
    Mask rhs = (fam.boson_mask() & ~star_mask(fam.r(), B)) | fam.fermion_mask();
    return (fam.base().q(B) - fam.base().q(rhs)).truncate_to(fam.base().order());
}

// Valid instances (I, b) of the half-shift relation: I of size r-1 with
// no starred pair inside, b the smaller element of the leftover pair.
inline std::vector<std::pair<Mask, int>> half_shift_instances(int r) {
    std::vector<std::pair<Mask, int>> out;
    // Choose the leftover pair p, then one representative from each other pair.
    for (int p = 1; p <= r; ++p) {
        std::vector<int> pairs;
        for (int b = 1; b <= r; ++b)
            if (b != p) pairs.push_back(b);
        for (uint32_t pick = 0; pick < (1u << pairs.size()); ++pick) {
            Mask I = 0;
            for (size_t t = 0; t < pairs.size(); ++t) {
                int b = pairs[t];
                I = mask_add(I, (pick >> t & 1u) ? star_index(r, b) : b);
            }
            out.emplace_back(I, p);
        }
    }
    return out;
}

inline void validate_half_shift_instance(const BrFamily& fam, Mask I, int b) {
    int r = fam.r();
    if ((I & ~fam.boson_mask()) != 0 || mask_card(I) != r - 1)
        throw BadIndexSet("index set must pick r-1 bosons");
    if ((I & star_mask(r, I)) != 0) throw BadIndexSet("index set must avoid starred pairs");
    if (b < 1 || b > 2 * r || mask_has(I, b) || mask_has(I, star_index(r, b)))
        throw BadIndexSet("condensed index must lie outside the set and its star");
}

// Residual of the half-shift relation
//   (z_b^{1/2}-z_b^{-1/2}) Q_I^{[1/2]} Q_I^{[-1/2]}
//     - z_b^{1/2} Q_{I,b}^{[1/2]} Q_{I,b*}^{[-1/2]}
//     + z_b^{-1/2} Q_{I,b}^{[-1/2]} Q_{I,b*}^{[1/2]}.
inline Series qq_sp_residual(const BrFamily& fam, Mask I, int b) {
    validate_half_shift_instance(fam, I, b);
    const QFamily& f = fam.base();
    const ShiftBase& base = f.base();
    int bs = star_index(fam.r(), b);
    Rat wb = fam.z_half(b);
    HalfInt half = HalfInt::halves(1);
    Series lhs = (wb - Rat(1) / wb) * (f.q(I).shifted(half, base) * f.q(I).shifted(-half, base));
    Series rhs = wb * (f.q(mask_add(I, b)).shifted(half, base) *
                       f.q(mask_add(I, bs)).shifted(-half, base)) -
                 (Rat(1) / wb) * (f.q(mask_add(I, b)).shifted(-half, base) *
                                  f.q(mask_add(I, bs)).shifted(half, base));
    return (lhs - rhs).truncate_to(f.order());
}

// Whole-shift rewriting of the same relation:
//   (z_b-1) Q_I^{[1]} Q_I = z_b Q_{I,b}^{[1]} Q_{I,b*} - Q_{I,b} Q_{I,b*}^{[1]}.
inline Series qq_sp_whole_residual(const BrFamily& fam, Mask I, int b) {
    validate_half_shift_instance(fam, I, b);
    const QFamily& f = fam.base();
    const ShiftBase& base = f.base();
    int bs = star_index(fam.r(), b);
    Rat zb = f.z().z(b);
    Series lhs = (zb - Rat(1)) * (f.q(I).shifted(1, base) * f.q(I));
    Series rhs = zb * (f.q(mask_add(I, b)).shifted(1, base) * f.q(mask_add(I, bs))) -
                 f.q(mask_add(I, b)) * f.q(mask_add(I, bs)).shifted(1, base);
    return (lhs - rhs).truncate_to(f.order());
}

// Auxiliary pair relations on the same instances (I, b):
//   (z_b-z_b^{-1}) Q_I Q_{I,b,b*} = z_b Q_{I,b}^{[1]} Q_{I,b*}^{[-1]}
//                                   - z_b^{-1} Q_{I,b}^{[-1]} Q_{I,b*}^{[1]}
inline Series qq_pair_bosonic_residual(const BrFamily& fam, Mask I, int b) {
    validate_half_shift_instance(fam, I, b);
    const QFamily& f = fam.base();
    const ShiftBase& base = f.base();
    int bs = star_index(fam.r(), b);
    Rat zb = f.z().z(b);
    Mask Ib = mask_add(I, b), Ibs = mask_add(I, bs), Ibb = mask_add(Ib, bs);
    Series lhs = (zb - Rat(1) / zb) * (f.q(I) * f.q(Ibb));
    Series rhs = zb * (f.q(Ib).shifted(1, base) * f.q(Ibs).shifted(-1, base)) -
                 (Rat(1) / zb) * (f.q(Ib).shifted(-1, base) * f.q(Ibs).shifted(1, base));
    return (lhs - rhs).truncate_to(f.order());
}

//   (z_b^{-1}+1) Q_{I,b*} Q_{I,b,b*} = z_b^{-1} Q_I^{[-1]} Q_{I,b*}^{[1]} + Q_I^{[1]} Q_{I,b*}^{[-1]}
inline Series qq_pair_mixed_star_residual(const BrFamily& fam, Mask I, int b) {
    validate_half_shift_instance(fam, I, b);
    const QFamily& f = fam.base();
    const ShiftBase& base = f.base();
    int bs = star_index(fam.r(), b);
    Rat zb = f.z().z(b);
    Mask Ibs = mask_add(I, bs), Ibb = mask_add(mask_add(I, b), bs);
    Series lhs = (Rat(1) / zb + Rat(1)) * (f.q(Ibs) * f.q(Ibb));
    Series rhs = (Rat(1) / zb) * (f.q(I).shifted(-1, base) * f.q(Ibs).shifted(1, base)) +
                 f.q(I).shifted(1, base) * f.q(Ibs).shifted(-1, base);
    return (lhs - rhs).truncate_to(f.order());
}

//   (z_b+1) Q_{I,b} Q_{I,b,b*} = z_b Q_I^{[-1]} Q_{I,b}^{[1]} + Q_I^{[1]} Q_{I,b}^{[-1]}
inline Series qq_pair_mixed_residual(const BrFamily& fam, Mask I, int b) {
    validate_half_shift_instance(fam, I, b);
    const QFamily& f = fam.base();
    const ShiftBase& base = f.base();
    Rat zb = f.z().z(b);
    Mask Ib = mask_add(I, b), Ibb = mask_add(Ib, star_index(fam.r(), b));
    Series lhs = (zb + Rat(1)) * (f.q(Ib) * f.q(Ibb));
    Series rhs = zb * (f.q(I).shifted(-1, base) * f.q(Ib).shifted(1, base)) +
                 f.q(I).shifted(1, base) * f.q(Ib).shifted(-1, base);
    return (lhs - rhs).truncate_to(f.order());
}

namespace detail {

// Assemble a full (2r,1) family from candidate singles at a working
// order; the fermionic single and pair functions come from the seeds.
inline QFamily br_candidate_family(int r, const ZParams& zp, const ShiftBase& base, int order,
                                   const Series& q_empty, const std::vector<Series>& boson_singles,
                                   const Series& q_ferm) {
    Grading g(2 * r, 1);
    std::vector<Series> singles = boson_singles;
    singles.push_back(q_ferm);
    std::vector<std::vector<Series>> pairs(static_cast<size_t>(2 * r));
    for (int b = 1; b <= 2 * r; ++b)
        pairs[static_cast<size_t>(b) - 1] = {
            solve_pair_q(q_empty, singles[static_cast<size_t>(b) - 1],
                         singles[static_cast<size_t>(2 * r)], zp.z(b), zp.z(2 * r + 1), base,
                         order)};
    return build_family_from_basics(g, zp, base, order, q_empty, singles, pairs);
}

// Residual rows of the chosen route at truncation order `work`, with the
// residual coefficient extracted at u^k by the caller.
inline std::vector<Series> br_route_residuals(int r, SeedRoute route, const ZParams& zp,
                                              const ShiftBase& base, int work,
                                              const Series& q_empty,
                                              const std::vector<Series>& boson_singles,
                                              const Series& q_ferm,
                                              const std::vector<Rat>& w) {
    std::vector<Series> rows;
    if (route == SeedRoute::DeterminantIntoHalfShift) {
        // The fermionic data never enters these relations; a constant
        // placeholder keeps the family construction uniform.
        QFamily fam =
            br_candidate_family(r, zp, base, work, q_empty, boson_singles, Series::one());
        // The wrapper supplies the square roots the relation needs.
        BrFamily view(r, fam, w, {}, BrFamily::SkipReductionCheck{});
        for (const auto& [I, b] : half_shift_instances(r))
            rows.push_back(qq_sp_residual(view, I, b));
    } else {
        QFamily fam = br_candidate_family(r, zp, base, work, q_empty, boson_singles, q_ferm);
        Mask bos = fam.grading().bosonic_mask();
        Mask ferm = fam.grading().fermionic_mask();
        for (Mask B = 0; B <= bos; ++B) {
            if ((B & ~bos) != 0) continue;
            Mask rhs = (bos & ~star_mask(r, B)) | ferm;
            rows.push_back((fam.q(B) - fam.q(rhs)).truncate_to(work));
        }
    }
    return rows;
}

}  // namespace detail

// Solves for the bosonic single-index functions order by order from the
// chosen equation route, given the empty and fermionic seed functions.
// Every order's linear system is solved exactly; rank deficiencies throw
// under RequireUnique and fix free coordinates to zero under ZeroFree
// (recorded in the solve log either way).
inline BrFamily seed_br_family(int r, const Series& q_empty, const Series& q_ferm, SeedRoute route,
                               GaugePolicy policy = GaugePolicy::RequireUnique, int order = 6,
                               std::vector<Rat> w = {}) {
    if (w.empty()) w = default_br_w(r);
    if (q_empty.coeff(0) != Rat(1) || q_ferm.coeff(0) != Rat(1))
        throw BadSpec("seed functions must have constant coefficient one");
    ZParams zp = br_zparams(r, w);
    ShiftBase base{Rat(2)};
    int nb = 2 * r;
    // Coefficient table of the bosonic singles, built up order by order.
    std::vector<std::vector<Rat>> coeffs(static_cast<size_t>(nb), {Rat(1)});
    std::vector<OrderSolveInfo> log;

    // Coefficients a^(1)..a^(order-1) determine every series mod u^order.
    for (int k = 1; k < order; ++k) {
        int work = k + 1;  // track powers u^0..u^k
        auto singles_at = [&](const std::vector<Rat>& top) {
            std::vector<Series> out;
            for (int b = 0; b < nb; ++b) {
                std::vector<Rat> c = coeffs[static_cast<size_t>(b)];
                c.resize(static_cast<size_t>(k) + 1, Rat(0));
                c[static_cast<size_t>(k)] = top[static_cast<size_t>(b)];
                out.push_back(Series::truncated(c, work));
            }
            return out;
        };
        auto residual_coeffs = [&](const std::vector<Rat>& top) {
            std::vector<Series> rows = detail::br_route_residuals(
                r, route, zp, base, work, q_empty.truncate_to(work), singles_at(top),
                q_ferm.truncate_to(work), w);
            std::vector<Rat> out;
            for (const Series& s : rows) out.push_back(s.coeff(k));
            return out;
        };

        std::vector<Rat> zero(static_cast<size_t>(nb), Rat(0));
        std::vector<Rat> c0 = residual_coeffs(zero);
        size_t m = c0.size();
        RatMatrix a(m, std::vector<Rat>(static_cast<size_t>(nb), Rat(0)));
        for (int b = 0; b < nb; ++b) {
            std::vector<Rat> probe = zero;
            probe[static_cast<size_t>(b)] = Rat(1);
            std::vector<Rat> cb = residual_coeffs(probe);
            for (size_t i = 0; i < m; ++i) a[i][static_cast<size_t>(b)] = cb[i] - c0[i];
        }
        // The residuals must be affine in the top coefficients; verify on
        // a random-looking probe before trusting the solve.
        {
            std::vector<Rat> probe;
            for (int b = 0; b < nb; ++b) probe.push_back(rat(2 * b + 3, b + 2));
            std::vector<Rat> cp = residual_coeffs(probe);
            for (size_t i = 0; i < m; ++i) {
                Rat predicted = c0[i];
                for (int b = 0; b < nb; ++b)
                    predicted += a[i][static_cast<size_t>(b)] * probe[static_cast<size_t>(b)];
                if (predicted != cp[i])
                    throw ReductionInconsistent("seeding equations are not affine at order " +
                                                std::to_string(k));
            }
        }
        std::vector<Rat> neg_c0;
        for (const Rat& c : c0) neg_c0.push_back(-c);
        LinearSolution sol = solve_linear(a, neg_c0);
        OrderSolveInfo info{k, sol.rank, nb, nb - sol.rank, sol.consistent};
        log.push_back(info);
        if (!sol.consistent)
            throw ReductionInconsistent("seeding equations are inconsistent at order " +
                                        std::to_string(k));
        if (sol.rank < nb && policy == GaugePolicy::RequireUnique)
            throw UnderdeterminedOrder(k, nb - sol.rank,
                                       "seeding order " + std::to_string(k) + " leaves " +
                                           std::to_string(nb - sol.rank) + " free parameters");
        for (int b = 0; b < nb; ++b)
            coeffs[static_cast<size_t>(b)].push_back(sol.particular[static_cast<size_t>(b)]);
    }

    std::vector<Series> singles;
    for (int b = 0; b < nb; ++b)
        singles.push_back(Series::truncated(coeffs[static_cast<size_t>(b)], order));
    QFamily fam = detail::br_candidate_family(r, zp, base, order, q_empty.truncate_to(order),
                                              singles, q_ferm.truncate_to(order));
    // The constructor re-verifies the reduction identities, so a family
    // produced by either route is rejected here if it fails to close.
    return BrFamily(r, fam, w, log);
}

// Exact evaluation of the route equations at prescribed singles: returns
// the order-k linear system (matrix, negated constant) without solving.
// Used to verify that one route's solution satisfies the other route.
inline std::pair<RatMatrix, std::vector<Rat>> br_route_system(int r, SeedRoute route,
                                                              const Series& q_empty,
                                                              const Series& q_ferm,
                                                              const std::vector<Series>& singles,
                                                              const std::vector<Rat>& w, int k) {
    ZParams zp = br_zparams(r, w);
    ShiftBase base{Rat(2)};
    int nb = 2 * r;
    int work = k + 1;
    auto singles_at = [&](const std::vector<Rat>& top) {
        std::vector<Series> out;
        for (int b = 0; b < nb; ++b) {
            std::vector<Rat> c;
            for (int j = 0; j < k; ++j) c.push_back(singles[static_cast<size_t>(b)].coeff(j));
            c.push_back(top[static_cast<size_t>(b)]);
            out.push_back(Series::truncated(c, work));
        }
        return out;
    };
    auto residual_coeffs = [&](const std::vector<Rat>& top) {
        std::vector<Series> rows =
            detail::br_route_residuals(r, route, zp, base, work, q_empty.truncate_to(work),
                                       singles_at(top), q_ferm.truncate_to(work), w);
        std::vector<Rat> out;
        for (const Series& s : rows) out.push_back(s.coeff(k));
        return out;
    };
    std::vector<Rat> zero(static_cast<size_t>(nb), Rat(0));
    std::vector<Rat> c0 = residual_coeffs(zero);
    RatMatrix a(c0.size(), std::vector<Rat>(static_cast<size_t>(nb), Rat(0)));
    for (int b = 0; b < nb; ++b) {
        std::vector<Rat> probe = zero;
        probe[static_cast<size_t>(b)] = Rat(1);
        std::vector<Rat> cb = residual_coeffs(probe);
        for (size_t i = 0; i < c0.size(); ++i) a[i][static_cast<size_t>(b)] = cb[i] - c0[i];
    }
    std::vector<Rat> neg;
    for (const Rat& c : c0) neg.push_back(-c);
    return {std::move(a), std::move(neg)};
}

}  // namespace tqfold
