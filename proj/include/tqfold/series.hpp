#pragma once

/**
 * Truncated power series in u over exact rationals, with half-integer
 * multiplicative shifts.
 *
 * A Series is either
 *   - exact: it equals the stored polynomial identically (order() is
 *     reported as kUnboundedOrder), or
 *   - truncated: its coefficients are known modulo u^order() only.
 *
 * Arithmetic results carry order = min of the operand orders, so a chain
 * of operations never claims more knowledge than its inputs provide.
 *
 * The shift f^[a] := f(u * t^{2a}) acts coefficientwise:
 * the coefficient of u^k picks up the exact rational factor t^{2*a*k}.
 */

#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "halfint.hpp"
#include "rational.hpp"

namespace tqfold {

inline constexpr int kUnboundedOrder = std::numeric_limits<int>::max();

// The exact value t = q^{1/2}; a shift by the half-integer a multiplies
// the coefficient of u^k by t^{2*a*k}.
class ShiftBase {
  public:
    explicit ShiftBase(Rat t) : t_(std::move(t)) {
        if (t_ == 0 || t_ == 1 || t_ == -1)
            throw DegenerateParameters("ShiftBase: t must avoid {0, 1, -1}");
    }

    const Rat& t() const { return t_; }
    Rat q() const { return t_ * t_; }

    // t^{2a} — the factor applied at u^1 by a shift of a.
    Rat step(HalfInt a) const { return rat_pow(t_, a.twice); }
    // t^{2*a*k} — the factor applied at u^k.
    Rat factor(HalfInt a, int k) const {
        return rat_pow(t_, static_cast<long long>(a.twice) * k);
    }

  private:
    Rat t_;
};

class Series {
  public:
    // Zero series, exact.
    Series() = default;

    static Series constant(Rat c) {
        Series s;
        if (c != 0) s.c_.push_back(std::move(c));
        return s;
    }
    static Series one() { return constant(Rat(1)); }
    static Series zero() { return Series(); }

    // Exact polynomial c0 + c1 u + ...
    static Series polynomial(std::vector<Rat> coeffs) {
        Series s;
        s.c_ = std::move(coeffs);
        s.trim();
        return s;
    }

    // Coefficients known modulo u^order only.
    static Series truncated(std::vector<Rat> coeffs, int order) {
        if (order <= 0) throw BadSpec("Series: truncation order must be positive");
        Series s;
        s.c_ = std::move(coeffs);
        s.order_ = order;
        s.cap_to_order();
        return s;
    }

    // c * u^k, exact.
    static Series monomial(Rat c, int k) {
        Series s;
        if (c != 0) {
            s.c_.assign(static_cast<size_t>(k) + 1, Rat(0));
            s.c_.back() = std::move(c);
        }
        return s;
    }

    // u^k, exact.
    static Series monomial(int k) { return monomial(Rat(1), k); }

    // ---- observers ----

    int order() const { return order_; }
    bool is_exact() const { return order_ == kUnboundedOrder; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    // Degree of the stored polynomial (-1 for zero).
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Rat>& coeffs() const { return c_; }

    // Coefficient of u^k (zero beyond the stored range; callers are
    // responsible for respecting order()).
    const Rat& coeff(int k) const {
        static const Rat kZero(0);
        if (k < 0 || k >= static_cast<int>(c_.size())) return kZero;
        return c_[static_cast<size_t>(k)];
    }

    std::optional<int> first_nonzero() const {
        for (size_t k = 0; k < c_.size(); ++k)
            if (c_[k] != 0) return static_cast<int>(k);
        return std::nullopt;
    }

    friend bool operator==(const Series& a, const Series& b) {
        return a.order_ == b.order_ && a.c_ == b.c_;
    }

    // ---- ring operations ----

    friend Series operator+(const Series& a, const Series& b) {
        Series r;
        r.order_ = std::min(a.order_, b.order_);
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
        r.cap_to_order();
        return r;
    }

    friend Series operator-(const Series& a, const Series& b) { return a + (-b); }

    friend Series operator-(const Series& a) {
        Series r = a;
        for (auto& c : r.c_) c = -c;
        return r;
    }

    friend Series operator*(const Series& a, const Series& b) {
        Series r;
        r.order_ = std::min(a.order_, b.order_);
        if (a.is_zero() || b.is_zero()) return r;
        size_t full = a.c_.size() + b.c_.size() - 1;
        size_t keep = r.order_ == kUnboundedOrder
                          ? full
                          : std::min<size_t>(full, static_cast<size_t>(r.order_));
        r.c_.assign(keep, Rat(0));
        for (size_t i = 0; i < a.c_.size() && i < keep; ++i) {
            if (a.c_[i] == 0) continue;
            size_t jmax = std::min(b.c_.size(), keep - i);
            for (size_t j = 0; j < jmax; ++j) {
                if (b.c_[j] == 0) continue;
                r.c_[i + j] += a.c_[i] * b.c_[j];
            }
        }
        r.trim();
        return r;
    }

    friend Series operator*(const Rat& c, const Series& a) {
        Series r = a;
        if (c == 0) {
            r.c_.clear();
            return r;
        }
        for (auto& x : r.c_) x *= c;
        return r;
    }
    friend Series operator*(const Series& a, const Rat& c) { return c * a; }

    // ---- shift ----

    // f^[a] : coefficient of u^k multiplied by t^{2*a*k}.
    Series shifted(HalfInt a, const ShiftBase& base) const {
        if (a.twice == 0) return *this;
        Series r = *this;
        Rat step = base.step(a);
        Rat f(1);
        for (size_t k = 1; k < r.c_.size(); ++k) {
            f *= step;
            if (r.c_[k] != 0) r.c_[k] *= f;
        }
        return r;
    }

    // ---- inversion / division ----

    // Multiplicative inverse modulo u^order; requires a nonzero constant
    // coefficient.  An exact nonconstant polynomial has no polynomial
    // inverse, so a finite order is required for that case.
    Series inverse() const {
        if (coeff(0) == 0) throw NotInvertible("series inverse: zero constant coefficient");
        if (degree() == 0) return constant(Rat(1) / c_[0]);
        if (is_exact())
            throw NotInvertible("series inverse: nonconstant polynomial needs a finite order");
        Series r;
        r.order_ = order_;
        r.c_.assign(static_cast<size_t>(order_), Rat(0));
        Rat inv0 = Rat(1) / c_[0];
        r.c_[0] = inv0;
        for (int k = 1; k < order_; ++k) {
            Rat acc(0);
            int imax = std::min(k, degree());
            for (int i = 1; i <= imax; ++i) acc += c_[static_cast<size_t>(i)] * r.c_[static_cast<size_t>(k - i)];
            r.c_[static_cast<size_t>(k)] = -inv0 * acc;
        }
        r.trim();
        return r;
    }

    // Reduce knowledge to min(order, k).
    Series truncate_to(int k) const {
        if (k <= 0) throw Error("Series: truncation order must be positive");
        if (k >= order_) return *this;
        Series r = *this;
        r.order_ = k;
        r.cap_to_order();
        return r;
    }

    // ---- diagnostics ----

    std::string str() const {
        if (c_.empty()) return is_exact() ? "0" : "0 (mod u^" + std::to_string(order_) + ")";
        std::string out;
        bool first = true;
        for (size_t k = 0; k < c_.size(); ++k) {
            if (c_[k] == 0) continue;
            if (!first) out += " + ";
            out += rat_str(c_[k]);
            if (k >= 1) out += "*u" + (k > 1 ? "^" + std::to_string(k) : "");
            first = false;
        }
        if (!is_exact()) out += " (mod u^" + std::to_string(order_) + ")";
        return out;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    void cap_to_order() {
        if (order_ != kUnboundedOrder && static_cast<int>(c_.size()) > order_)
            c_.resize(static_cast<size_t>(order_));
        trim();
    }

    std::vector<Rat> c_;           // dense coefficients from u^0, trailing zeros trimmed
    int order_ = kUnboundedOrder;  // coefficients of u^k for k >= order_ are unknown
};

// Free-function spellings.
inline Series shift(const Series& f, HalfInt a, const ShiftBase& base) { return f.shifted(a, base); }
inline Series series_inv(const Series& f) { return f.inverse(); }

}  // namespace tqfold
