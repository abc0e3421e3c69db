#pragma once

#include <cstdint>
#include <string>

#include "errors.hpp"
#include "rational.hpp"

namespace padicgg {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Moduli are at most 2^63 so that sums of two residues never overflow and
/// products fit in 128 bits.
inline constexpr u64 max_modulus = u64{1} << 63;

constexpr u64 mulmod(u64 a, u64 b, u64 m) noexcept {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

constexpr u64 addmod(u64 a, u64 b, u64 m) noexcept {
    u64 s = a + b;
    return s >= m ? s - m : s;
}

constexpr u64 submod(u64 a, u64 b, u64 m) noexcept { return a >= b ? a - b : a + m - b; }

constexpr u64 powmod(u64 base, u64 e, u64 m) noexcept {
    u64 result = 1 % m;
    base %= m;
    while (e) {
        if (e & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        e >>= 1;
    }
    return result;
}

/// Reduces a signed integer into [0, m).
constexpr u64 reduce_signed(std::int64_t a, u64 m) noexcept {
    if (a >= 0) return static_cast<u64>(a) % m;
    u64 r = static_cast<u64>(-(a + 1)) % m; // avoids overflow on INT64_MIN
    return m - 1 - r;
}

/// Inverse of a modulo m via extended Euclid; 0 when gcd(a, m) != 1.
constexpr u64 invmod(u64 a, u64 m) noexcept {
    __int128 t = 0, new_t = 1;
    __int128 r = m, new_r = a % m;
    while (new_r != 0) {
        __int128 q = r / new_r;
        __int128 tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) return 0;
    if (t < 0) t += m;
    return static_cast<u64>(t);
}

constexpr bool is_prime(u64 n) noexcept {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Smallest e with p^e >= bound.
constexpr int ceil_log(u64 p, u64 bound) noexcept {
    int e = 0;
    u64 v = 1;
    while (v < bound) {
        v *= p;
        ++e;
    }
    return e;
}

/// Odd prime p together with the working precision K; arithmetic is mod p^K.
class PrecisionContext {
public:
    PrecisionContext(std::uint32_t p, int K) : p_(p), K_(K) {
        if (p < 3 || !is_prime(p)) throw error(errc::composite_p, "p=" + std::to_string(p) + " is not an odd prime");
        if (K < 1) throw error(errc::usage, "precision K must be >= 1");
        u64 m = 1;
        for (int i = 0; i < K; ++i) {
            if (m > max_modulus / p)
                throw error(errc::precision_exhausted,
                            std::to_string(p) + "^" + std::to_string(K) + " exceeds 63-bit residues");
            m *= p;
        }
        modulus_ = m;
    }

    std::uint32_t p() const noexcept { return p_; }
    int K() const noexcept { return K_; }
    u64 modulus() const noexcept { return modulus_; }

    /// p^e for 0 <= e <= K.
    u64 pow_p(int e) const noexcept {
        u64 v = 1;
        for (int i = 0; i < e; ++i) v *= p_;
        return v;
    }

    /// Number of factors of p in x, capped at K (x == 0 gives K).
    int valuation(u64 x) const noexcept {
        x %= modulus_;
        if (x == 0) return K_;
        int v = 0;
        while (x % p_ == 0) {
            x /= p_;
            ++v;
        }
        return v;
    }

    friend bool operator==(const PrecisionContext& a, const PrecisionContext& b) noexcept {
        return a.p_ == b.p_ && a.K_ == b.K_;
    }

private:
    std::uint32_t p_;
    int K_;
    u64 modulus_ = 1;
};

/// Element of Z/p^K, standing in for a p-adic integer known to K digits.
class ZpElement {
public:
    ZpElement(u64 residue, const PrecisionContext& ctx) : residue_(residue % ctx.modulus()), ctx_(ctx) {}

    static ZpElement from_int(std::int64_t n, const PrecisionContext& ctx) {
        return ZpElement(reduce_signed(n, ctx.modulus()), ctx);
    }

    u64 residue() const noexcept { return residue_; }
    const PrecisionContext& context() const noexcept { return ctx_; }
    bool is_unit() const noexcept { return residue_ % ctx_.p() != 0; }

    ZpElement inv() const {
        if (!is_unit()) throw error(errc::not_a_unit, "residue " + std::to_string(residue_) + " is divisible by p");
        return ZpElement(invmod(residue_, ctx_.modulus()), ctx_);
    }

    ZpElement pow(u64 e) const { return ZpElement(powmod(residue_, e, ctx_.modulus()), ctx_); }

    ZpElement operator-() const { return ZpElement(submod(0, residue_, ctx_.modulus()), ctx_); }

    friend ZpElement operator+(const ZpElement& a, const ZpElement& b) {
        check(a, b);
        return ZpElement(addmod(a.residue_, b.residue_, a.ctx_.modulus()), a.ctx_);
    }
    friend ZpElement operator-(const ZpElement& a, const ZpElement& b) {
        check(a, b);
        return ZpElement(submod(a.residue_, b.residue_, a.ctx_.modulus()), a.ctx_);
    }
    friend ZpElement operator*(const ZpElement& a, const ZpElement& b) {
        check(a, b);
        return ZpElement(mulmod(a.residue_, b.residue_, a.ctx_.modulus()), a.ctx_);
    }

    friend bool operator==(const ZpElement& a, const ZpElement& b) noexcept {
        return a.ctx_ == b.ctx_ && a.residue_ == b.residue_;
    }

    /// Representative in (-p^K/2, p^K/2].
    std::int64_t symmetric() const noexcept {
        u64 m = ctx_.modulus();
        return residue_ > m / 2 ? -static_cast<std::int64_t>(m - residue_) : static_cast<std::int64_t>(residue_);
    }

private:
    static void check(const ZpElement& a, const ZpElement& b) {
        if (!(a.ctx_ == b.ctx_)) throw error(errc::context_mismatch, "Z/p^K elements from different contexts");
    }

    u64 residue_;
    PrecisionContext ctx_;
};

/// Embeds a rational with p-free denominator into Z/p^K.
inline ZpElement zp_from_rational(const Rational& x, const PrecisionContext& ctx) {
    u64 m = ctx.modulus();
    u64 den = reduce_signed(x.den(), m);
    if (x.den() % static_cast<std::int64_t>(ctx.p()) == 0)
        throw error(errc::denominator_divisible_by_p, x.str() + " with p=" + std::to_string(ctx.p()));
    return ZpElement(mulmod(reduce_signed(x.num(), m), invmod(den, m), m), ctx);
}

} // namespace padicgg
