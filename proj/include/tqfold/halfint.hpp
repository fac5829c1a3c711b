#pragma once

/**
 * Half-integers, stored as doubled integers.
 *
 * Every multiplicative shift exponent in this library lies in (1/2)Z;
 * storing 2a keeps the arithmetic integral and exact.
 */

#include <string>

namespace tqfold {

struct HalfInt {
    int twice = 0;  // the value is twice/2

    constexpr HalfInt() = default;
    constexpr HalfInt(int whole) : twice(2 * whole) {}  // NOLINT: implicit by design

    // n/2 (n may be odd).
    static constexpr HalfInt halves(int n) { return make(n); }

    constexpr bool is_whole() const { return twice % 2 == 0; }
    // Whole value; only meaningful when is_whole().
    constexpr int whole() const { return twice / 2; }

    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return make(a.twice + b.twice); }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return make(a.twice - b.twice); }
    friend constexpr HalfInt operator-(HalfInt a) { return make(-a.twice); }
    friend constexpr HalfInt operator*(int k, HalfInt a) { return make(k * a.twice); }
    friend constexpr bool operator==(HalfInt a, HalfInt b) { return a.twice == b.twice; }
    friend constexpr bool operator!=(HalfInt a, HalfInt b) { return a.twice != b.twice; }
    friend constexpr bool operator<(HalfInt a, HalfInt b) { return a.twice < b.twice; }

    std::string str() const {
        if (is_whole()) return std::to_string(whole());
        return std::to_string(twice) + "/2";
    }

  private:
    static constexpr HalfInt make(int doubled) {
        HalfInt h;
        h.twice = doubled;
        return h;
    }
};

// a + 1/2 and a - 1/2, spelled out at call sites as plus_half/minus_half.
inline constexpr HalfInt plus_half(HalfInt a) { return a + HalfInt::halves(1); }
inline constexpr HalfInt minus_half(HalfInt a) { return a - HalfInt::halves(1); }

}  // namespace tqfold
