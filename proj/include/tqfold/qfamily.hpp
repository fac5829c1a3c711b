#pragma once

/**
 * Q-function families on the subset lattice of a graded index set.
 *
 * The index set {1..M+N} splits into a bosonic part {1..M} (parity +1)
 * and a fermionic part {M+1..M+N} (parity -1). A family assigns one
 * truncated series Q_I to every subset I, subject to the bilinear
 * exchange relations checked by qq_bosonic_residual / qq_fermionic_residual.
 *
 * Parameters z_a are stored through exact square roots for bosonic
 * indices (z_a = w_a^2) so that the index reflection map and the
 * half-step shifts stay inside exact rational arithmetic.
 */

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"
#include "report.hpp"
#include "series.hpp"

namespace tqfold {

// Subset of {1..M+N} as a bitmask; bit a-1 represents element a.
using Mask = uint32_t;

inline bool mask_has(Mask m, int a) { return (m >> (a - 1)) & 1u; }
inline Mask mask_add(Mask m, int a) { return m | (Mask(1) << (a - 1)); }
inline Mask mask_remove(Mask m, int a) { return m & ~(Mask(1) << (a - 1)); }
inline int mask_card(Mask m) { return __builtin_popcount(m); }

inline std::vector<int> mask_elements(Mask m) {
    std::vector<int> out;
    for (int a = 1; m != 0; ++a, m >>= 1)
        if (m & 1u) out.push_back(a);
    return out;
}

inline Mask mask_of(const std::vector<int>& elements) {
    Mask m = 0;
    for (int a : elements) {
        if (a < 1 || a > 32) throw BadIndexSet("mask_of: element out of range");
        m = mask_add(m, a);
    }
    return m;
}

inline std::string subset_str(Mask m) {
    std::ostringstream out;
    out << '{';
    bool first = true;
    for (int a : mask_elements(m)) {
        if (!first) out << ',';
        out << a;
        first = false;
    }
    out << '}';
    return out.str();
}

struct Grading {
    int M = 0;
    int N = 0;

    Grading(int bosons, int fermions) : M(bosons), N(fermions) {
        if (M < 0 || N < 0 || M + N > 20) throw BadSpec("Grading: need 0 <= M, N with M+N <= 20");
    }
    int size() const { return M + N; }
    bool is_bosonic(int a) const {
        check_index(a);
        return a <= M;
    }
    int parity(int a) const { return is_bosonic(a) ? 1 : -1; }
    Mask full() const { return (Mask(1) << size()) - 1; }
    Mask bosonic_mask() const { return (Mask(1) << M) - 1; }
    Mask fermionic_mask() const { return full() & ~bosonic_mask(); }
    void check_index(int a) const {
        if (a < 1 || a > size()) throw BadIndexSet("index outside {1..M+N}");
    }
    bool operator==(const Grading& o) const { return M == o.M && N == o.N; }
};

// Index reflection underlying the duality map: bosonic a -> M+1-a,
// fermionic a -> 2M+N+1-a. An involution preserving the parity split.
inline int reflect_index(const Grading& g, int a) {
    g.check_index(a);
    return a <= g.M ? g.M + 1 - a : 2 * g.M + g.N + 1 - a;
}

// Image of a subset under the duality map: the complement of the
// reflected set.
inline Mask sigma_subset(const Grading& g, Mask I) {
    Mask reflected = 0;
    for (int a : mask_elements(I)) reflected = mask_add(reflected, reflect_index(g, a));
    return g.full() & ~reflected;
}

class ZParams {
  public:
    // Direct parameter values, one per index. Nonzero is required here;
    // genericity (distinctness and shift-factor separation) is asserted
    // where it matters, at family construction.
    ZParams(Grading g, std::vector<Rat> z) : g_(g), z_(std::move(z)) {
        if (static_cast<int>(z_.size()) != g_.size())
            throw BadSpec("ZParams: need one parameter per index");
        for (const Rat& v : z_)
            if (v == 0) throw DegenerateParameters("ZParams: zero parameter");
    }

    // Construction through exact square roots: bosonic entries r give
    // z = r^2 and keep r available for half-power formulas; fermionic
    // entries are taken as z directly.
    static ZParams from_sqrt(Grading g, std::vector<Rat> roots) {
        if (static_cast<int>(roots.size()) != g.size())
            throw BadSpec("ZParams: need one parameter per index");
        std::vector<Rat> z(roots.size());
        for (int a = 1; a <= g.size(); ++a) {
            const Rat& r = roots[static_cast<size_t>(a) - 1];
            z[static_cast<size_t>(a) - 1] = g.is_bosonic(a) ? r * r : r;
        }
        ZParams out(g, std::move(z));
        out.w_ = std::move(roots);
        return out;
    }

    const Grading& grading() const { return g_; }
    Rat z(int a) const {
        g_.check_index(a);
        return z_[static_cast<size_t>(a) - 1];
    }
    bool has_sqrt() const { return !w_.empty(); }
    // Exact square root of z_a; bosonic indices of sqrt-constructed
    // parameters only.
    Rat w(int a) const {
        if (!has_sqrt()) throw BadSpec("ZParams: no square roots stored");
        if (!g_.is_bosonic(a)) throw BadIndexSet("ZParams: square root stored only for bosonic indices");
        return w_[static_cast<size_t>(a) - 1];
    }
    const std::vector<Rat>& z_values() const { return z_; }
    const std::vector<Rat>& sqrt_values() const { return w_; }

  private:
    Grading g_;
    std::vector<Rat> z_;
    std::vector<Rat> w_;  // empty unless built by from_sqrt
};

// Duality on parameters: the value at index a becomes the inverse of the
// value at the reflected index. Exact on stored square roots as well.
inline ZParams sigma_z(const ZParams& zp) {
    const Grading& g = zp.grading();
    auto invert_reflect = [&](const std::vector<Rat>& v) {
        std::vector<Rat> out(v.size());
        for (int a = 1; a <= g.size(); ++a)
            out[static_cast<size_t>(a) - 1] = Rat(1) / v[static_cast<size_t>(reflect_index(g, a)) - 1];
        return out;
    };
    if (zp.has_sqrt()) return ZParams::from_sqrt(g, invert_reflect(zp.sqrt_values()));
    return ZParams(g, invert_reflect(zp.z_values()));
}

// Order-by-order solvability needs every factor z_i t^d - z_j t^{-d}
// nonzero for |d| <= 2*order (half-step shifts contribute odd d).
inline void assert_generic(const ZParams& zp, const ShiftBase& base, int order) {
    const Grading& g = zp.grading();
    for (int i = 1; i <= g.size(); ++i)
        for (int j = 1; j <= g.size(); ++j) {
            if (i == j) continue;
            Rat zi = zp.z(i), zj = zp.z(j);
            Rat f = 1;
            for (int d = 0; d <= 2 * order; ++d) {
                if (zi * f * f == zj)
                    throw DegenerateParameters("parameters are non-generic: z_" + std::to_string(i) +
                                               " * t^" + std::to_string(2 * d) + " equals z_" +
                                               std::to_string(j));
                f *= base.t();
            }
        }
}

class QFamily {
  public:
    QFamily(Grading g, ZParams z, ShiftBase base, int order, std::vector<Series> q)
        : g_(g), z_(std::move(z)), base_(base), order_(order), q_(std::move(q)) {
        if (order_ <= 0) throw BadSpec("QFamily: truncation order must be positive");
        if (q_.size() != (size_t(1) << g_.size()))
            throw BadSpec("QFamily: need one series per subset");
        for (const Series& s : q_)
            if (s.coeff(0) == 0) throw BadSpec("QFamily: entry with zero constant coefficient");
        assert_generic(z_, base_, order_);
    }

    const Grading& grading() const { return g_; }
    const ZParams& z() const { return z_; }
    const ShiftBase& base() const { return base_; }
    int order() const { return order_; }
    const Series& q(Mask I) const {
        if (I > g_.full()) throw BadIndexSet("QFamily: subset outside index range");
        return q_[I];
    }
    const std::vector<Series>& entries() const { return q_; }

    // Copy with one entry replaced; used to inject controlled defects.
    QFamily with_q(Mask I, Series s) const {
        std::vector<Series> q = q_;
        if (I > g_.full()) throw BadIndexSet("QFamily: subset outside index range");
        q[I] = std::move(s);
        return QFamily(g_, z_, base_, order_, std::move(q));
    }

  private:
    Grading g_;
    ZParams z_;
    ShiftBase base_;
    int order_;
    std::vector<Series> q_;
};

namespace detail {
inline void check_qq_pair(const QFamily& F, Mask I, int i, int j) {
    const Grading& g = F.grading();
    g.check_index(i);
    g.check_index(j);
    if (i == j) throw BadIndexSet("exchange relation needs two distinct indices");
    if (mask_has(I, i) || mask_has(I, j))
        throw BadIndexSet("exchange relation indices must lie outside the base subset");
}
}  // namespace detail

// Residual of the same-parity exchange relation on (I; i, j):
//   (z_i - z_j) Q_I Q_{I,i,j} - z_i Q_{I,i}^{[p]} Q_{I,j}^{[-p]}
//                             + z_j Q_{I,i}^{[-p]} Q_{I,j}^{[p]},
// truncated to the family order. Zero iff the relation holds.
inline Series qq_bosonic_residual(const QFamily& F, Mask I, int i, int j) {
    detail::check_qq_pair(F, I, i, j);
    const Grading& g = F.grading();
    if (g.parity(i) != g.parity(j))
        throw WrongRelation("same-parity relation called on an opposite-parity pair");
    HalfInt p(g.parity(i));
    Rat zi = F.z().z(i), zj = F.z().z(j);
    const Series& qi = F.q(mask_add(I, i));
    const Series& qj = F.q(mask_add(I, j));
    Series lhs = (zi - zj) * (F.q(I) * F.q(mask_add(mask_add(I, i), j)));
    Series rhs = zi * (qi.shifted(p, F.base()) * qj.shifted(-p, F.base())) -
                 zj * (qi.shifted(-p, F.base()) * qj.shifted(p, F.base()));
    return (lhs - rhs).truncate_to(F.order());
}

// Residual of the opposite-parity exchange relation on (I; i, j):
//   (z_i - z_j) Q_{I,i} Q_{I,j} - z_i Q_I^{[-p_i]} Q_{I,i,j}^{[p_i]}
//                               + z_j Q_I^{[p_i]} Q_{I,i,j}^{[-p_i]}.
inline Series qq_fermionic_residual(const QFamily& F, Mask I, int i, int j) {
    detail::check_qq_pair(F, I, i, j);
    const Grading& g = F.grading();
    if (g.parity(i) == g.parity(j))
        throw WrongRelation("opposite-parity relation called on a same-parity pair");
    HalfInt p(g.parity(i));
    Rat zi = F.z().z(i), zj = F.z().z(j);
    const Series& q0 = F.q(I);
    const Series& qij = F.q(mask_add(mask_add(I, i), j));
    Series lhs = (zi - zj) * (F.q(mask_add(I, i)) * F.q(mask_add(I, j)));
    Series rhs = zi * (q0.shifted(-p, F.base()) * qij.shifted(p, F.base())) -
                 zj * (q0.shifted(p, F.base()) * qij.shifted(-p, F.base()));
    return (lhs - rhs).truncate_to(F.order());
}

struct QQViolation {
    Mask I = 0;
    int i = 0, j = 0;
    bool same_parity = false;
    int first_nonzero = 0;
};

// All exchange relations of the family; empty result means the family is
// consistent modulo u^order.
inline std::vector<QQViolation> check_all_qq(const QFamily& F) {
    std::vector<QQViolation> out;
    const Grading& g = F.grading();
    for (Mask I = 0; I <= g.full(); ++I)
        for (int i = 1; i <= g.size(); ++i) {
            if (mask_has(I, i)) continue;
            for (int j = i + 1; j <= g.size(); ++j) {
                if (mask_has(I, j)) continue;
                bool same = g.parity(i) == g.parity(j);
                Series r = same ? qq_bosonic_residual(F, I, i, j) : qq_fermionic_residual(F, I, i, j);
                if (auto k = r.first_nonzero()) out.push_back({I, i, j, same, *k});
            }
        }
    return out;
}

// The dual family: parameters transformed by sigma_z and entries pulled
// back along the subset duality map.
inline QFamily sigma_family(const QFamily& F) {
    const Grading& g = F.grading();
    std::vector<Series> q(size_t(1) << g.size());
    for (Mask I = 0; I <= g.full(); ++I) q[I] = F.q(sigma_subset(g, I));
    return QFamily(g, sigma_z(F.z()), F.base(), F.order(), std::move(q));
}

// Checks that the dual family again satisfies every exchange relation.
inline Report check_sigma_invariance(const QFamily& F) {
    Report r;
    r.check = "qq/duality";
    r.params = "M=" + std::to_string(F.grading().M) + " N=" + std::to_string(F.grading().N);
    r.truncation_order = F.order();
    auto violations = check_all_qq(sigma_family(F));
    if (!violations.empty()) {
        r.status = Report::Status::Fail;
        r.residual_first_nonzero = violations.front().first_nonzero;
        r.note = "dual family violates " + std::to_string(violations.size()) + " relations";
    }
    return r;
}

// Solves the opposite-parity exchange relation at base subset ∅ for the
// pair function Q_{b,f}:
//   (z_b - z_f) Q_b Q_f = z_b Q_∅^{[-1]} Q_{b,f}^{[1]} - z_f Q_∅^{[1]} Q_{b,f}^{[-1]}
// order by order. The u^k coefficient of the unknown enters linearly with
// factor z_b q^k - z_f q^{-k}, so genericity makes each step a division.
inline Series solve_pair_q(const Series& q_empty, const Series& q_b, const Series& q_f, const Rat& z_b,
                           const Rat& z_f, const ShiftBase& base, int order) {
    if (order <= 0) throw BadSpec("solve_pair_q: truncation order must be positive");
    for (const Series* s : {&q_empty, &q_b, &q_f})
        if (s->coeff(0) != 1) throw BadSpec("solve_pair_q: inputs must have constant coefficient 1");
    if (z_b == z_f) throw DegenerateParameters("solve_pair_q: coincident parameters");

    Series lhs = ((z_b - z_f) * (q_b * q_f)).truncate_to(order);
    std::vector<Rat> x(static_cast<size_t>(order), Rat(0));
    x[0] = 1;
    for (int k = 1; k < order; ++k) {
        Series guess = Series::truncated(x, order);
        Series rhs = z_b * (q_empty.shifted(HalfInt(-1), base) * guess.shifted(HalfInt(1), base)) -
                     z_f * (q_empty.shifted(HalfInt(1), base) * guess.shifted(HalfInt(-1), base));
        Series res = (lhs - rhs).truncate_to(order);
        Rat factor = z_b * base.factor(HalfInt(1), k) - z_f * base.factor(HalfInt(-1), k);
        if (factor == 0)
            throw DegenerateParameters("solve_pair_q: vanishing linear factor at order " +
                                       std::to_string(k));
        x[static_cast<size_t>(k)] = res.coeff(k) / factor;
    }
    return Series::truncated(x, order);
}

// ---- sampling helpers ----

// Monic polynomial seed 1 + c_1 u + ... + c_degree u^degree with small
// random rational coefficients.
inline Series random_q_seed(std::mt19937_64& rng, int degree) {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 3);
    std::vector<Rat> c{Rat(1)};
    for (int k = 1; k <= degree; ++k) c.push_back(rat(num(rng), den(rng)));
    return Series::polynomial(c);
}

}  // namespace tqfold
