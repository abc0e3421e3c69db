#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "errors.hpp"
#include "finite_field.hpp"
#include "modular.hpp"

namespace padicgg {

/// Z_q mod p^K realized as (Z/p^K)[x] / (f), where f is the defining
/// polynomial of F_q read with coefficients in [0, p).
class UnramifiedContext {
public:
    UnramifiedContext(PrecisionContext base, std::vector<std::uint32_t> poly_low)
        : base_(base), low_(std::move(poly_low)) {
        detail::PolyRing ring{base_.p(), static_cast<std::uint32_t>(low_.size()), low_};
        if (low_.empty()) throw error(errc::usage, "defining polynomial must have degree >= 1");
        for (auto c : low_)
            if (c >= base_.p()) throw error(errc::usage, "defining polynomial coefficients must lie in [0, p)");
        if (!ring.root_is_primitive())
            throw error(errc::usage, "defining polynomial is not irreducible with primitive root mod p");
        q_ = 1;
        for (std::size_t i = 0; i < low_.size(); ++i) q_ *= base_.p();
    }

    static std::shared_ptr<const UnramifiedContext> make(const FqField& field, int K) {
        return std::make_shared<const UnramifiedContext>(PrecisionContext(field.p(), K), field.defining_poly());
    }

    const PrecisionContext& base() const noexcept { return base_; }
    std::uint32_t p() const noexcept { return base_.p(); }
    int K() const noexcept { return base_.K(); }
    u64 modulus() const noexcept { return base_.modulus(); }
    std::uint32_t r() const noexcept { return static_cast<std::uint32_t>(low_.size()); }
    std::uint64_t q() const noexcept { return q_; }
    const std::vector<std::uint32_t>& defining_poly() const noexcept { return low_; }

    bool matches(const FqField& field) const noexcept {
        return field.p() == p() && field.defining_poly() == low_;
    }

    friend bool operator==(const UnramifiedContext& a, const UnramifiedContext& b) noexcept {
        return a.base_ == b.base_ && a.low_ == b.low_;
    }

private:
    PrecisionContext base_;
    std::vector<std::uint32_t> low_;
    std::uint64_t q_ = 1;
};

using UnramifiedContextPtr = std::shared_ptr<const UnramifiedContext>;

/// Element of Z_q mod p^K in the power basis of the defining polynomial.
class ZqElement {
public:
    explicit ZqElement(UnramifiedContextPtr ctx) : ctx_(std::move(ctx)), c_(ctx_->r(), 0) {}

    ZqElement(UnramifiedContextPtr ctx, std::vector<u64> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
        if (c_.size() != ctx_->r()) throw error(errc::usage, "coefficient vector length must equal r");
        for (auto& x : c_) x %= ctx_->modulus();
    }

    static ZqElement from_int(std::int64_t n, const UnramifiedContextPtr& ctx) {
        ZqElement z(ctx);
        z.c_[0] = reduce_signed(n, ctx->modulus());
        return z;
    }

    static ZqElement from_zp(const ZpElement& x, const UnramifiedContextPtr& ctx) {
        if (!(x.context() == ctx->base())) throw error(errc::context_mismatch, "Z_p element precision differs");
        ZqElement z(ctx);
        z.c_[0] = x.residue();
        return z;
    }

    /// Coefficient-wise lift of t from F_q (digits in [0, p)).
    static ZqElement naive_lift(const FqField& field, FqElement t, const UnramifiedContextPtr& ctx) {
        if (!ctx->matches(field)) throw error(errc::context_mismatch, "field and Z_q use different polynomials");
        auto digits = field.coeffs(t);
        return ZqElement(ctx, std::vector<u64>(digits.begin(), digits.end()));
    }

    const UnramifiedContextPtr& context() const noexcept { return ctx_; }
    std::span<const u64> coeffs() const noexcept { return c_; }
    u64 coeff(std::size_t i) const noexcept { return c_[i]; }

    bool is_zero() const noexcept {
        for (auto x : c_)
            if (x) return false;
        return true;
    }

    /// Unit iff the reduction mod p is nonzero in F_q.
    bool is_unit() const noexcept {
        for (auto x : c_)
            if (x % ctx_->p()) return true;
        return false;
    }

    /// Reduction mod p, as a packed F_q code.
    std::uint32_t reduce_code() const noexcept {
        std::uint32_t code = 0;
        for (std::size_t i = c_.size(); i-- > 0;) code = code * ctx_->p() + static_cast<std::uint32_t>(c_[i] % ctx_->p());
        return code;
    }

    /// True when every non-constant coordinate is zero.
    bool in_base_ring() const noexcept {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i]) return false;
        return true;
    }

    ZqElement operator-() const {
        ZqElement out(ctx_);
        for (std::size_t i = 0; i < c_.size(); ++i) out.c_[i] = submod(0, c_[i], ctx_->modulus());
        return out;
    }

    friend ZqElement operator+(const ZqElement& a, const ZqElement& b) {
        check(a, b);
        ZqElement out(a.ctx_);
        u64 m = a.ctx_->modulus();
        for (std::size_t i = 0; i < a.c_.size(); ++i) out.c_[i] = addmod(a.c_[i], b.c_[i], m);
        return out;
    }

    friend ZqElement operator-(const ZqElement& a, const ZqElement& b) {
        check(a, b);
        ZqElement out(a.ctx_);
        u64 m = a.ctx_->modulus();
        for (std::size_t i = 0; i < a.c_.size(); ++i) out.c_[i] = submod(a.c_[i], b.c_[i], m);
        return out;
    }

    friend ZqElement operator*(const ZqElement& a, const ZqElement& b) {
        check(a, b);
        const u64 m = a.ctx_->modulus();
        const std::size_t r = a.c_.size();
        ZqElement out(a.ctx_);
        if (r == 1) {
            out.c_[0] = mulmod(a.c_[0], b.c_[0], m);
            return out;
        }
        std::vector<u64> prod(2 * r - 1, 0);
        for (std::size_t i = 0; i < r; ++i) {
            if (!a.c_[i]) continue;
            for (std::size_t j = 0; j < r; ++j) prod[i + j] = addmod(prod[i + j], mulmod(a.c_[i], b.c_[j], m), m);
        }
        const auto& low = a.ctx_->defining_poly();
        for (std::size_t d = 2 * r - 1; d-- > r;) {
            u64 c = prod[d];
            if (!c) continue;
            for (std::size_t i = 0; i < r; ++i) prod[d - r + i] = submod(prod[d - r + i], mulmod(low[i], c, m), m);
        }
        std::copy(prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(r), out.c_.begin());
        return out;
    }

    ZqElement& operator+=(const ZqElement& o) { return *this = *this + o; }
    ZqElement& operator*=(const ZqElement& o) { return *this = *this * o; }

    /// Multiplies every coordinate by an integer residue mod p^K.
    ZqElement scaled(u64 s) const {
        ZqElement out(ctx_);
        for (std::size_t i = 0; i < c_.size(); ++i) out.c_[i] = mulmod(c_[i], s % ctx_->modulus(), ctx_->modulus());
        return out;
    }

    ZqElement pow(std::uint64_t e) const {
        ZqElement result = from_int(1, ctx_);
        ZqElement base = *this;
        while (e) {
            if (e & 1) result *= base;
            base *= base;
            e >>= 1;
        }
        return result;
    }

    /// Inverse: y0 = x^(q-2) is correct mod p, then Newton y <- y(2 - xy).
    ZqElement inv() const {
        if (!is_unit()) throw error(errc::not_a_unit, "Z_q element is divisible by p");
        if (c_.size() == 1) {
            ZqElement out(ctx_);
            out.c_[0] = invmod(c_[0], ctx_->modulus());
            return out;
        }
        ZqElement y = pow(ctx_->q() - 2);
        const ZqElement two = from_int(2, ctx_);
        for (int digits = 1; digits < ctx_->K(); digits *= 2) y = y * (two - *this * y);
        return y;
    }

    friend bool operator==(const ZqElement& a, const ZqElement& b) noexcept {
        return (a.ctx_ == b.ctx_ || *a.ctx_ == *b.ctx_) && a.c_ == b.c_;
    }

private:
    static void check(const ZqElement& a, const ZqElement& b) {
        if (a.ctx_ != b.ctx_ && !(*a.ctx_ == *b.ctx_))
            throw error(errc::context_mismatch, "Z_q elements from different contexts");
    }

    UnramifiedContextPtr ctx_;
    std::vector<u64> c_;
};

/// Teichmueller lift omega(t): the (q-1)-th root of unity congruent to t mod p.
/// Each z <- z^q step fixes at least one more p-adic digit.
inline ZqElement teichmueller(const FqField& field, FqElement t, const UnramifiedContextPtr& ctx) {
    if (t.is_zero()) throw error(errc::zero_argument, "Teichmueller lift of 0");
    ZqElement z = ZqElement::naive_lift(field, t, ctx);
    for (int i = 0; i < ctx->K(); ++i) z = z.pow(ctx->q());
    return z;
}

/// omega^m(x); the inverse character omega-bar^j is m = (q-1-j) mod (q-1).
inline ZqElement char_eval_padic(const FqField& field, CharacterIndex chi, FqElement x, const UnramifiedContextPtr& ctx) {
    if (x.is_zero()) throw error(errc::zero_argument, "character value at 0");
    return teichmueller(field, x, ctx).pow(chi.m % (field.q() - 1));
}

} // namespace padicgg
