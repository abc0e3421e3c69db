#pragma once

#include <algorithm>
#include <climits>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "unramified.hpp"

namespace padicgg {

/**
 * Element of Q_q at bounded precision, stored as p^valuation * unit.
 *
 * The unit is known to `precision` relative p-adic digits, so the number is
 * known modulo p^(valuation + precision) (its absolute precision). A value
 * that vanishes at its available precision is an exact_zero whose
 * `valuation` field holds that absolute precision. Units are kept reduced
 * mod p^precision so that equal values have equal representations.
 */
class PadicNumber {
public:
    /// p^valuation * z with z known to `precision` digits; factors of p in z
    /// are moved into the valuation.
    static PadicNumber make(int valuation, ZqElement z, int precision) {
        const auto& ctx = z.context();
        precision = std::min(precision, ctx->K());
        const std::uint32_t p = ctx->p();
        int shift = precision;
        for (auto c : z.coeffs()) {
            u64 m = c % ctx->base().pow_p(precision);
            if (m == 0) continue;
            int v = 0;
            while (m % p == 0) {
                m /= p;
                ++v;
            }
            shift = std::min(shift, v);
        }
        if (shift >= precision) return zero(valuation + precision, ctx);
        const int rel = precision - shift;
        const u64 div = ctx->base().pow_p(shift);
        const u64 mod = ctx->base().pow_p(rel);
        std::vector<u64> c(z.coeffs().begin(), z.coeffs().end());
        for (auto& x : c) x = (x % ctx->base().pow_p(precision)) / div % mod;
        PadicNumber out(ctx);
        out.zero_ = false;
        out.valuation_ = valuation + shift;
        out.precision_ = rel;
        out.unit_ = ZqElement(ctx, std::move(c));
        return out;
    }

    /// Zero known modulo p^abs_precision.
    static PadicNumber zero(int abs_precision, const UnramifiedContextPtr& ctx) {
        PadicNumber out(ctx);
        out.valuation_ = abs_precision;
        return out;
    }

    /// An integer, carried to the full K digits of the context.
    static PadicNumber from_int(std::int64_t n, const UnramifiedContextPtr& ctx) {
        if (n == 0) return zero(ctx->K(), ctx);
        int v = 0;
        while (n % static_cast<std::int64_t>(ctx->p()) == 0) {
            n /= static_cast<std::int64_t>(ctx->p());
            ++v;
        }
        return make(v, ZqElement::from_int(n, ctx), ctx->K());
    }

    static PadicNumber from_zq(const ZqElement& z) { return make(0, z, z.context()->K()); }

    bool exact_zero() const noexcept { return zero_; }
    int valuation() const noexcept { return valuation_; }
    int precision() const noexcept { return zero_ ? 0 : precision_; }
    int absolute_precision() const noexcept { return zero_ ? valuation_ : valuation_ + precision_; }
    const ZqElement& unit() const noexcept { return unit_; }
    const UnramifiedContextPtr& context() const noexcept { return unit_.context(); }

    PadicNumber operator-() const {
        if (zero_) return *this;
        return make(valuation_, -unit_, precision_);
    }

    friend PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) {
        if (a.zero_ && b.zero_) return zero(a.valuation_ + b.valuation_, a.context());
        if (a.zero_) return zero(a.valuation_ + b.valuation_, a.context());
        if (b.zero_) return zero(a.valuation_ + b.valuation_, a.context());
        return make(a.valuation_ + b.valuation_, a.unit_ * b.unit_, std::min(a.precision_, b.precision_));
    }

    /// Multiplication by an exact integer.
    PadicNumber times(std::int64_t n) const { return *this * from_int(n, context()); }

private:
    explicit PadicNumber(const UnramifiedContextPtr& ctx) : unit_(ctx) {}

    bool zero_ = true;
    int valuation_ = 0;
    int precision_ = 0;
    ZqElement unit_;
};

/**
 * Exact sum at the common absolute precision of the terms.
 *
 * Every term is rescaled to the smallest valuation v_min, the units are
 * summed mod p^(A - v_min) where A is the smallest absolute precision, and
 * the result is renormalized. Cancellation down to nothing yields an
 * exact_zero known mod p^A. The result depends only on the multiset of terms.
 */
inline PadicNumber padic_sum(std::span<const PadicNumber> terms) {
    if (terms.empty()) throw error(errc::usage, "padic_sum of no terms");
    const auto& ctx = terms.front().context();
    int abs_prec = INT_MAX;
    int v_min = INT_MAX;
    for (const auto& t : terms) {
        if (t.context() != ctx && !(*t.context() == *ctx))
            throw error(errc::context_mismatch, "padic_sum terms from different contexts");
        abs_prec = std::min(abs_prec, t.absolute_precision());
    }
    for (const auto& t : terms)
        if (!t.exact_zero() && t.valuation() < abs_prec) v_min = std::min(v_min, t.valuation());
    if (v_min == INT_MAX) return PadicNumber::zero(abs_prec, ctx);
    const int width = abs_prec - v_min; // <= K: A is at most the v_min term's own absolute precision
    const u64 mod = ctx->base().pow_p(width);
    std::vector<u64> acc(ctx->r(), 0);
    for (const auto& t : terms) {
        if (t.exact_zero() || t.valuation() >= abs_prec) continue;
        const u64 scale = ctx->base().pow_p(t.valuation() - v_min);
        for (std::size_t i = 0; i < acc.size(); ++i)
            acc[i] = addmod(acc[i], mulmod(t.unit().coeff(i) % mod, scale, mod), mod);
    }
    return PadicNumber::make(v_min, ZqElement(ctx, std::move(acc)), width);
}

inline PadicNumber padic_sum(std::initializer_list<PadicNumber> terms) {
    return padic_sum(std::span<const PadicNumber>(terms.begin(), terms.size()));
}

/// Throws PrecisionExhausted unless x is known modulo p^needed.
inline void require_absolute_precision(const PadicNumber& x, int needed, const std::string& what) {
    if (x.absolute_precision() < needed)
        throw error(errc::precision_exhausted, what + ": known mod p^" + std::to_string(x.absolute_precision()) +
                                                   ", need p^" + std::to_string(needed) + "; raise K");
}

/// a == b modulo p^abs_precision; both must be known that far.
inline bool equal_at(const PadicNumber& a, const PadicNumber& b, int abs_precision) {
    require_absolute_precision(a, abs_precision, "left operand");
    require_absolute_precision(b, abs_precision, "right operand");
    PadicNumber diff = padic_sum({a, -b});
    return diff.exact_zero() || diff.valuation() >= abs_precision;
}

/**
 * Canonical text form at absolute precision min(cap, known precision):
 * "<valuation>:<d0>.<d1>..." with base-p digits of the unit, lowest first.
 * When r > 1 and a non-constant coordinate is nonzero, each further
 * coordinate follows after '|'. A value that vanishes at that precision A
 * renders as "<A>:".
 */
inline std::string render(const PadicNumber& x, int cap) {
    const int A = std::min(cap, x.absolute_precision());
    if (x.exact_zero() || x.valuation() >= A) return std::to_string(A) + ":";
    const auto& ctx = x.context();
    const int digits = A - x.valuation();
    const u64 mod = ctx->base().pow_p(digits);
    auto coordinate = [&](u64 c) {
        c %= mod;
        std::string s;
        for (int i = 0; i < digits; ++i) {
            if (i) s += '.';
            s += std::to_string(c % ctx->p());
            c /= ctx->p();
        }
        return s;
    };
    std::string out = std::to_string(x.valuation()) + ":" + coordinate(x.unit().coeff(0));
    bool higher = false;
    for (std::size_t i = 1; i < ctx->r(); ++i)
        if (x.unit().coeff(i) % mod) higher = true;
    if (higher)
        for (std::size_t i = 1; i < ctx->r(); ++i) out += "|" + coordinate(x.unit().coeff(i));
    return out;
}

} // namespace padicgg
