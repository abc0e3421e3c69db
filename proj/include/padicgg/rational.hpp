#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "errors.hpp"

namespace padicgg {

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_mul_overflow(a, b, &out))
        throw error(errc::arithmetic_overflow, "rational multiply");
    return out;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_add_overflow(a, b, &out))
        throw error(errc::arithmetic_overflow, "rational add");
    return out;
}

// floor(a / b) for b > 0
constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) noexcept {
    std::int64_t q = a / b;
    if ((a % b != 0) && (a < 0)) --q;
    return q;
}

} // namespace detail

/**
 * Exact rational number in lowest terms with a positive denominator.
 *
 * Backed by 64-bit integers; every operation checks for overflow and throws
 * errc::arithmetic_overflow instead of wrapping. All rationals in this library
 * have denominators dividing lcm(parameter denominators, q - 1) and numerators
 * bounded by a small multiple of q * p^(r-1), far inside the 64-bit range.
 */
class Rational {
public:
    constexpr Rational() noexcept = default;
    constexpr Rational(std::int64_t n) noexcept : num_(n), den_(1) {} // NOLINT: implicit from integer

    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
        if (d == 0) throw error(errc::usage, "zero denominator");
        normalize();
    }

    /// Parses "n", "-n" or "n/d".
    static Rational parse(std::string_view text) {
        auto slash = text.find('/');
        auto to_i64 = [](std::string_view s) {
            if (s.empty()) throw error(errc::usage, "empty integer in rational");
            std::size_t used = 0;
            std::int64_t v = std::stoll(std::string(s), &used);
            if (used != s.size()) throw error(errc::usage, "malformed rational '" + std::string(s) + "'");
            return v;
        };
        try {
            if (slash == std::string_view::npos) return Rational(to_i64(text));
            return Rational(to_i64(text.substr(0, slash)), to_i64(text.substr(slash + 1)));
        } catch (const std::logic_error&) {
            throw error(errc::usage, "malformed rational '" + std::string(text) + "'");
        }
    }

    constexpr std::int64_t num() const noexcept { return num_; }
    constexpr std::int64_t den() const noexcept { return den_; }
    constexpr bool is_integer() const noexcept { return den_ == 1; }

    std::int64_t floor() const noexcept { return detail::floor_div(num_, den_); }

    /// Fractional part x - floor(x), always in [0, 1).
    Rational frac() const {
        Rational r;
        r.num_ = num_ - detail::floor_div(num_, den_) * den_;
        r.den_ = den_;
        return r;
    }

    Rational operator-() const {
        if (num_ == INT64_MIN) throw error(errc::arithmetic_overflow, "rational negate");
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        std::int64_t g = std::gcd(a.den_, b.den_);
        std::int64_t da = a.den_ / g;
        std::int64_t n = detail::checked_add(detail::checked_mul(a.num_, b.den_ / g),
                                             detail::checked_mul(b.num_, da));
        return Rational(n, detail::checked_mul(da, b.den_));
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        std::int64_t g1 = std::gcd(a.num_, b.den_);
        std::int64_t g2 = std::gcd(b.num_, a.den_);
        if (g1 == 0) g1 = 1;
        if (g2 == 0) g2 = 1;
        return Rational(detail::checked_mul(a.num_ / g1, b.num_ / g2),
                        detail::checked_mul(a.den_ / g2, b.den_ / g1));
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw error(errc::usage, "division by zero rational");
        Rational inv;
        inv.num_ = b.den_;
        inv.den_ = b.num_;
        if (inv.den_ < 0) {
            inv.den_ = -inv.den_;
            inv.num_ = -inv.num_;
        }
        return a * inv;
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    friend constexpr bool operator==(const Rational&, const Rational&) noexcept = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
        __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
        return lhs < rhs ? std::strong_ordering::less
                         : (lhs > rhs ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    std::string str() const {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }
    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    void normalize() {
        if (den_ < 0) {
            if (num_ == INT64_MIN || den_ == INT64_MIN)
                throw error(errc::arithmetic_overflow, "rational normalize");
            num_ = -num_;
            den_ = -den_;
        }
        std::int64_t g = std::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// Splits x into its fractional part in [0, 1) and its floor.
struct FracFloor {
    Rational frac;
    std::int64_t floor;
};

inline FracFloor frac_floor(const Rational& x) { return {x.frac(), x.floor()}; }

struct RationalHash {
    std::size_t operator()(const Rational& r) const noexcept {
        std::size_t h = std::hash<std::int64_t>{}(r.num());
        return h ^ (std::hash<std::int64_t>{}(r.den()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    }
};

} // namespace padicgg
