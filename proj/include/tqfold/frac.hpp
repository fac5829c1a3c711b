#pragma once

/**
 * The fraction field over truncated series.
 *
 * A Frac stores an explicit numerator/denominator pair and never divides
 * series during arithmetic; equality and residuals are decided by
 * cross-multiplication, so a denominator is never required to be
 * invertible at check time.
 */

#include <string>
#include <utility>

#include "errors.hpp"
#include "series.hpp"

namespace tqfold {

class Frac {
  public:
    Frac() : num_(Series::zero()), den_(Series::one()) {}
    explicit Frac(Series num) : num_(std::move(num)), den_(Series::one()) {}
    Frac(Series num, Series den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw NotInvertible("Frac: identically zero denominator");
        normalize();
    }

    static Frac zero() { return Frac(); }
    static Frac one() { return Frac(Series::one()); }
    static Frac constant(Rat c) { return Frac(Series::constant(std::move(c))); }

    const Series& num() const { return num_; }
    const Series& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    // ---- field operations ----

    friend Frac operator+(const Frac& a, const Frac& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.den_ == b.den_) return Frac(a.num_ + b.num_, a.den_);
        return Frac(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Frac operator-(const Frac& a, const Frac& b) { return a + (-b); }
    friend Frac operator-(const Frac& a) {
        Frac r = a;
        r.num_ = -r.num_;
        return r;
    }
    friend Frac operator*(const Frac& a, const Frac& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        return Frac(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Frac operator/(const Frac& a, const Frac& b) {
        if (b.is_zero()) throw NotInvertible("Frac: division by zero value");
        if (a.is_zero()) return zero();
        return Frac(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend Frac operator*(const Rat& c, const Frac& a) {
        if (c == 0) return zero();
        Frac r = a;
        r.num_ = c * r.num_;
        return r;
    }
    friend Frac operator*(const Frac& a, const Rat& c) { return c * a; }

    Frac inverse() const {
        if (is_zero()) throw NotInvertible("Frac: inverse of zero");
        return Frac(den_, num_);
    }

    // x^e for integer e (negative exponents via the inverse).
    Frac pow(long long e) const {
        if (e == 0) return one();
        Frac b = e < 0 ? inverse() : *this;
        unsigned long long n =
            e < 0 ? -static_cast<unsigned long long>(e) : static_cast<unsigned long long>(e);
        Frac acc = one();
        while (n != 0) {
            if (n & 1) acc = acc * b;
            b = b * b;
            n >>= 1;
        }
        return acc;
    }

    // ---- shift ----

    Frac shifted(HalfInt a, const ShiftBase& base) const {
        Frac r = *this;
        r.num_ = r.num_.shifted(a, base);
        r.den_ = r.den_.shifted(a, base);
        return r;
    }

    // ---- comparisons ----

    // num(x)*den(y) - num(y)*den(x); zero modulo the weakest order involved
    // if and only if the two values agree there.
    friend Series residual(const Frac& x, const Frac& y) {
        return x.num_ * y.den_ - y.num_ * x.den_;
    }

    friend bool frac_equal(const Frac& x, const Frac& y) { return residual(x, y).is_zero(); }

    // ---- conversion ----

    // Divides out the denominator (which must have an invertible constant
    // term) and reports the value modulo u^order.
    Series to_series(int order) const {
        if (is_zero()) return Series::zero().truncate_to(order);
        return (num_.truncate_to(order) * den_.truncate_to(order).inverse());
    }
    // Same, at the fraction's own (finite) order.
    Series to_series() const {
        int o = std::min(num_.order(), den_.order());
        if (o == kUnboundedOrder) {
            if (den_.degree() == 0) return num_ * Series::constant(Rat(1) / den_.coeff(0));
            throw NotInvertible("Frac::to_series: specify a finite order");
        }
        return to_series(o);
    }

    std::string str() const { return "(" + num_.str() + ") / (" + den_.str() + ")"; }

  private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = Series::one();
            return;
        }
        // Fold a constant denominator into the numerator.
        if (den_.degree() == 0 && den_.is_exact()) {
            if (!den_.is_one()) num_ = num_ * Series::constant(Rat(1) / den_.coeff(0));
            den_ = Series::one();
        }
    }

    Series num_, den_;
};

inline Frac frac_shift(const Frac& f, HalfInt a, const ShiftBase& base) {
    return f.shifted(a, base);
}

}  // namespace tqfold
