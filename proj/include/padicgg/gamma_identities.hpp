#pragma once

#include <cstdint>
#include <string>

#include "errors.hpp"
#include "finite_field.hpp"
#include "gamma.hpp"
#include "rational.hpp"
#include "unramified.hpp"

namespace padicgg {

/// Both sides of one identity in Z_q.
struct ZqComparison {
    ZqElement lhs;
    ZqElement rhs;
    bool holds() const { return lhs == rhs; }
};

/// The two gamma-product identities for multiplication by t.
struct Lemma31Result {
    ZqComparison plus;  // argument +j/(q-1)
    ZqComparison minus; // argument -j/(q-1)
    bool pass() const { return plus.holds() && minus.holds(); }
};

/// Shared objects for the identity checks at one (p, r, K).
struct IdentityContext {
    const FqField& field;
    UnramifiedContextPtr uctx;
    const GammaCache& gamma;

    ZqElement g(const Rational& x) const { return ZqElement::from_zp(gamma.gamma(x.frac()), uctx); }
};

namespace detail {
inline void check_identity_context(const IdentityContext& ic) {
    if (!ic.uctx->matches(ic.field) || !(ic.gamma.context() == ic.uctx->base()))
        throw error(errc::context_mismatch, "field, Z_q and gamma cache disagree");
}
} // namespace detail

/**
 * For t with p ∤ t and 0 <= j <= q-2:
 *
 *   omega(t)^{tj} prod_i G(<t p^i j/(q-1)>) prod_{h=1}^{t-1} G(<h p^i/t>)
 *       = prod_i prod_{h=0}^{t-1} G(<p^i h/t + p^i j/(q-1)>)
 *
 * and the mirror identity with -j and omega(t)^{-tj}, where G = Gamma_p.
 */
inline Lemma31Result verify_lemma31(std::int64_t t, std::int64_t j, const IdentityContext& ic) {
    detail::check_identity_context(ic);
    const auto q = static_cast<std::int64_t>(ic.field.q());
    if (t <= 0 || t % static_cast<std::int64_t>(ic.field.p()) == 0)
        throw precondition_error("p_divides_t", "t must be a positive integer prime to p");
    if (j < 0 || j > q - 2) throw precondition_error("j_out_of_range", "j must lie in [0, q-2]");

    const auto& uctx = ic.uctx;
    const ZqElement w = teichmueller(ic.field, ic.field.from_int(t), uctx);
    const auto order = static_cast<std::uint64_t>(q - 1);
    const auto tj = static_cast<std::uint64_t>(t * j) % order;
    ZqElement lhs1 = w.pow(tj);
    ZqElement lhs2 = w.pow((order - tj) % order);
    ZqElement rhs1 = ZqElement::from_int(1, uctx);
    ZqElement rhs2 = rhs1;
    std::int64_t pi = 1;
    for (std::uint32_t i = 0; i < ic.field.r(); ++i, pi *= static_cast<std::int64_t>(ic.field.p())) {
        const Rational s(pi * j, q - 1);
        lhs1 *= ic.g(s * Rational(t));
        lhs2 *= ic.g(-s * Rational(t));
        for (std::int64_t h = 1; h < t; ++h) {
            const ZqElement base = ic.g(Rational(h * pi, t));
            lhs1 *= base;
            lhs2 *= base;
        }
        for (std::int64_t h = 0; h < t; ++h) {
            rhs1 *= ic.g(Rational(pi * h, t) + s);
            rhs2 *= ic.g(Rational(pi * (1 + h), t) - s);
        }
    }
    return {{lhs1, rhs1}, {lhs2, rhs2}};
}

/// prod_i Gamma_p(<(1 - l/(q-1)) p^i>) Gamma_p(<l p^i/(q-1)>) = (-1)^r omega-bar^l(-1), 0 < l < q-1.
inline ZqComparison verify_eq29(std::int64_t l, const IdentityContext& ic) {
    detail::check_identity_context(ic);
    const auto q = static_cast<std::int64_t>(ic.field.q());
    if (l <= 0 || l >= q - 1) throw precondition_error("l_out_of_range", "l must lie in (0, q-1)");
    ZqElement lhs = ZqElement::from_int(1, ic.uctx);
    std::int64_t pi = 1;
    for (std::uint32_t i = 0; i < ic.field.r(); ++i, pi *= static_cast<std::int64_t>(ic.field.p())) {
        const Rational x(l, q - 1);
        lhs *= ic.g((Rational(1) - x) * Rational(pi)) * ic.g(x * Rational(pi));
    }
    const CharacterIndex bar_l{static_cast<std::uint64_t>((q - 1 - l) % (q - 1))};
    ZqElement rhs = char_eval_padic(ic.field, bar_l, ic.field.from_int(-1), ic.uctx);
    if (ic.field.r() % 2) rhs = -rhs;
    return {lhs, rhs};
}

/// Both sides of the floor identity used to collapse the Hessian sum.
struct FloorIdentity {
    std::int64_t lhs = 0;
    std::int64_t rhs = 0;
    bool holds() const noexcept { return lhs == rhs; }
};

/**
 * For 1 <= l <= q-2, l != (q-1)/2 and 0 <= i < r, with s = l p^i/(q-1):
 *
 *   [3s] + 3[-s] - 3[-2s] - [6s] = -2[<p^i/2> - s] - [<-p^i/6> + s] - [<-5p^i/6> + s]
 */
inline FloorIdentity verify_lemma5(std::int64_t l, std::int64_t i, std::uint32_t p, std::uint32_t r) {
    std::int64_t q = 1;
    for (std::uint32_t k = 0; k < r; ++k) q = detail::checked_mul(q, static_cast<std::int64_t>(p));
    if (l < 1 || l > q - 2 || 2 * l == q - 1) throw precondition_error("l_inadmissible", "need 1 <= l <= q-2, l != (q-1)/2");
    if (i < 0 || i >= static_cast<std::int64_t>(r)) throw precondition_error("i_out_of_range", "need 0 <= i < r");
    std::int64_t pi = 1;
    for (std::int64_t k = 0; k < i; ++k) pi *= static_cast<std::int64_t>(p);
    const Rational s(l * pi, q - 1);
    const Rational P(pi);
    FloorIdentity out;
    out.lhs = (s * Rational(3)).floor() + 3 * (-s).floor() - 3 * (s * Rational(-2)).floor() - (s * Rational(6)).floor();
    out.rhs = -2 * ((P / Rational(2)).frac() - s).floor() - ((-P / Rational(6)).frac() + s).floor() -
              ((P * Rational(-5) / Rational(6)).frac() + s).floor();
    return out;
}

} // namespace padicgg
