#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "modular.hpp"
#include "rational.hpp"

namespace padicgg {

/**
 * Morita's p-adic gamma function mod p^K.
 *
 * Gamma_p(n) = (-1)^n prod_{0<j<n, p∤j} j for integers n >= 1, Gamma_p(0) = 1,
 * and Gamma_p(x) == Gamma_p(n) mod p^K whenever x == n mod p^K. So a rational
 * x with p-free denominator is reduced to n in [0, p^K) and the product is
 * evaluated there.
 *
 * The product over [0, n) is split along the base-p digits of n into runs of
 * full blocks [A + c p^s, A + (c+1) p^s) with p^s | A. Such a block
 * contributes B_s(A + c p^s), where
 *
 *     B_s(x) = prod_{0<i<p^s, p∤i} (x + i).
 *
 * Only arguments divisible by p^s are ever plugged into B_s, so its terms of
 * degree e with s*e >= K vanish mod p^K and are dropped. B_{s+1} is built from
 * B_s by p Taylor shifts. Evaluating Gamma_p(n) then costs about
 * p * K * log K multiplications regardless of the size of p^K.
 */
class GammaCache {
public:
    explicit GammaCache(PrecisionContext ctx) : ctx_(ctx) {
        const int K = ctx_.K();
        const u64 m = ctx_.modulus();
        blocks_.resize(static_cast<std::size_t>(K));
        // B_1(x) = prod_{i=1}^{p-1} (x + i), degrees < K
        std::vector<u64> b1{1 % m};
        for (std::uint32_t i = 1; i < ctx_.p(); ++i) b1 = truncated_mul(b1, {i % m, 1 % m}, kept_terms(1));
        if (K > 1) blocks_[1] = b1;
        for (int s = 1; s + 1 < K; ++s) {
            const std::size_t keep = kept_terms(s + 1);
            std::vector<u64> next{1 % m};
            const u64 step = ctx_.pow_p(s);
            for (std::uint32_t c = 0; c < ctx_.p(); ++c)
                next = truncated_mul(next, taylor_shift(blocks_[s], mulmod(c, step, m), keep), keep);
            blocks_[static_cast<std::size_t>(s) + 1] = std::move(next);
        }
    }

    const PrecisionContext& context() const noexcept { return ctx_; }

    /// Gamma_p(n) mod p^K for 0 <= n < p^K.
    u64 gamma_int(u64 n) const {
        const u64 m = ctx_.modulus();
        n %= m;
        u64 prod = 1 % m;
        u64 base = 0;
        for (int s = ctx_.K() - 1; s >= 1; --s) {
            const u64 step = ctx_.pow_p(s);
            const u64 digit = (n / step) % ctx_.p();
            for (u64 c = 0; c < digit; ++c) prod = mulmod(prod, horner(blocks_[static_cast<std::size_t>(s)], base + c * step), m);
            base += digit * step;
        }
        const u64 last = n % ctx_.p();
        for (u64 c = 1; c < last; ++c) prod = mulmod(prod, (base + c) % m, m);
        return (n & 1u) ? submod(0, prod, m) : prod;
    }

    /// Gamma_p(x) mod p^K for x with p-free denominator.
    ZpElement gamma(const Rational& x) const {
        return ZpElement(gamma_int(zp_from_rational(x, ctx_).residue()), ctx_);
    }

private:
    std::size_t kept_terms(int s) const noexcept {
        return static_cast<std::size_t>((ctx_.K() + s - 1) / s);
    }

    std::vector<u64> truncated_mul(const std::vector<u64>& a, const std::vector<u64>& b, std::size_t keep) const {
        const u64 m = ctx_.modulus();
        std::vector<u64> out(std::min(keep, a.size() + b.size() - 1), 0);
        for (std::size_t i = 0; i < a.size() && i < out.size(); ++i)
            for (std::size_t j = 0; j < b.size() && i + j < out.size(); ++j)
                out[i + j] = addmod(out[i + j], mulmod(a[i], b[j], m), m);
        return out;
    }

    // coefficients of f(x + h) up to degree keep - 1
    std::vector<u64> taylor_shift(const std::vector<u64>& f, u64 h, std::size_t keep) const {
        const u64 m = ctx_.modulus();
        const std::size_t n = f.size();
        std::vector<std::vector<u64>> binom(n, std::vector<u64>(n, 0));
        for (std::size_t e = 0; e < n; ++e) {
            binom[e][0] = 1 % m;
            for (std::size_t k = 1; k <= e; ++k) binom[e][k] = addmod(binom[e - 1][k - 1], k < e ? binom[e - 1][k] : 0, m);
        }
        std::vector<u64> hpow(n, 1 % m);
        for (std::size_t i = 1; i < n; ++i) hpow[i] = mulmod(hpow[i - 1], h, m);
        std::vector<u64> out(std::min(keep, n), 0);
        for (std::size_t k = 0; k < out.size(); ++k)
            for (std::size_t e = k; e < n; ++e)
                out[k] = addmod(out[k], mulmod(mulmod(f[e], binom[e][k], m), hpow[e - k], m), m);
        return out;
    }

    u64 horner(const std::vector<u64>& f, u64 x) const {
        const u64 m = ctx_.modulus();
        u64 acc = 0;
        for (std::size_t i = f.size(); i-- > 0;) acc = addmod(mulmod(acc, x % m, m), f[i], m);
        return acc;
    }

    PrecisionContext ctx_;
    std::vector<std::vector<u64>> blocks_;
};

inline ZpElement gamma_p(const Rational& x, const GammaCache& cache) { return cache.gamma(x); }

/// Memo of Gamma_p at fractional parts, keyed by the reduced rational in [0, 1).
class GammaMemo {
public:
    explicit GammaMemo(const GammaCache& cache) : cache_(&cache) {}

    u64 at_frac(const Rational& x) {
        Rational f = x.frac();
        auto it = memo_.find(f);
        if (it != memo_.end()) return it->second;
        u64 v = cache_->gamma(f).residue();
        memo_.emplace(f, v);
        return v;
    }

    const GammaCache& cache() const noexcept { return *cache_; }
    std::size_t size() const noexcept { return memo_.size(); }

private:
    const GammaCache* cache_;
    std::unordered_map<Rational, u64, RationalHash> memo_;
};

/**
 * Reflection check: Gamma_p(x) Gamma_p(1 - x) = (-1)^{x_0}, where x_0 is the
 * representative of x mod p in {1, ..., p}. Passes when the product is +-1
 * and its sign follows that rule.
 */
inline bool verify_reflection(const Rational& x, const GammaCache& cache) {
    const auto& ctx = cache.context();
    ZpElement prod = cache.gamma(x) * cache.gamma(Rational(1) - x);
    const ZpElement one = ZpElement::from_int(1, ctx);
    if (!(prod == one || prod == -one)) return false;
    u64 x0 = zp_from_rational(x, ctx).residue() % ctx.p();
    if (x0 == 0) x0 = ctx.p();
    return prod == ((x0 & 1u) ? -one : one);
}

} // namespace padicgg
