#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "finite_field.hpp"
#include "gamma.hpp"
#include "padic_number.hpp"
#include "rational.hpp"
#include "unramified.hpp"

namespace padicgg {

/// Parameter lists a_1..a_n ; b_1..b_n of the hypergeometric symbol.
struct GParams {
    std::vector<Rational> a;
    std::vector<Rational> b;

    std::size_t n() const noexcept { return a.size(); }

    /// "a1,a2;b1,b2", e.g. "1/4,3/4;1/3,2/3".
    static GParams parse(std::string_view text) {
        const auto semi = text.find(';');
        if (semi == std::string_view::npos) throw error(errc::usage, "parameters must look like a1,...;b1,...");
        auto split = [](std::string_view s) {
            std::vector<Rational> out;
            while (!s.empty()) {
                auto comma = s.find(',');
                out.push_back(Rational::parse(s.substr(0, comma)));
                if (comma == std::string_view::npos) break;
                s.remove_prefix(comma + 1);
            }
            return out;
        };
        GParams g{split(text.substr(0, semi)), split(text.substr(semi + 1))};
        g.validate();
        return g;
    }

    void validate() const {
        if (a.empty() || a.size() != b.size()) throw error(errc::usage, "need n >= 1 top and n bottom parameters");
    }

    void check_prime(std::uint32_t p) const {
        for (const auto* list : {&a, &b})
            for (const auto& x : *list)
                if (x.den() % static_cast<std::int64_t>(p) == 0)
                    throw error(errc::denominator_divisible_by_p, "parameter " + x.str() + " is not p-integral");
    }
};

/// Default output precision: max(5, ceil(log_p(20 q)) + r).
inline int default_precision(std::uint32_t p, std::uint32_t r) {
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < r; ++i) q *= p;
    return std::max(5, ceil_log(p, 20 * q) + static_cast<int>(r));
}

/// Digits carried while summing. Each term has valuation >= -n r and the
/// -1/(q-1) prefactor is a unit, so G is known mod p^K and q G mod p^(K+r).
inline int working_precision(int K, std::size_t n, std::uint32_t r) {
    return K + static_cast<int>(n) * static_cast<int>(r);
}

/// The symbol at a fixed nonzero argument t.
struct GInstance {
    GParams params;
    FqElement t;
};

/**
 * Evaluates nGn[a; b | t]_q for fixed field, n and output precision K.
 *
 * Internally everything lives in Z_q mod p^Kw with Kw = working_precision(K, n, r);
 * results are PadicNumbers in that working context whose absolute precision
 * reports what is actually known. Gamma_p values are memoized across calls.
 */
class GEvaluator {
public:
    GEvaluator(const FqField& field, int K, std::size_t n)
        : field_(&field), K_(K), n_(n),
          uctx_(UnramifiedContext::make(field, working_precision(K, n, field.r()))),
          gamma_(std::make_unique<GammaCache>(uctx_->base())), memo_(*gamma_) {}

    const FqField& field() const noexcept { return *field_; }
    int output_precision() const noexcept { return K_; }
    std::size_t n() const noexcept { return n_; }
    const UnramifiedContextPtr& context() const noexcept { return uctx_; }
    const GammaCache& gamma_cache() const noexcept { return *gamma_; }

    /// Exponent of -p contributed by (a_i, b_i) at Frobenius index k and summation index j.
    static std::int64_t exponent(const Rational& a, const Rational& b, std::int64_t pk, std::int64_t j, std::int64_t q) {
        const Rational s(j * pk, q - 1);
        return -((a * Rational(pk)).frac() - s).floor() - ((-b * Rational(pk)).frac() + s).floor();
    }

    /// The j-th summand without the -1/(q-1) prefactor.
    PadicNumber term(const GInstance& inst, std::int64_t j) {
        prepare(inst);
        const auto q = static_cast<std::int64_t>(field_->q());
        if (j < 0 || j > q - 2) throw error(errc::usage, "summation index out of range");
        return term_with(inst.params, j, omega_bar_t_.pow(static_cast<std::uint64_t>(j)));
    }

    /// nGn[a; b | t]_q.
    PadicNumber eval(const GInstance& inst) {
        prepare(inst);
        const auto q = static_cast<std::int64_t>(field_->q());
        std::vector<PadicNumber> terms;
        terms.reserve(static_cast<std::size_t>(q - 1));
        ZqElement w = ZqElement::from_int(1, uctx_);
        for (std::int64_t j = 0; j <= q - 2; ++j) {
            terms.push_back(term_with(inst.params, j, w));
            w *= omega_bar_t_;
        }
        PadicNumber sum = padic_sum(terms);
        const u64 m = uctx_->modulus();
        const u64 inv = invmod(static_cast<u64>(q - 1) % m, m);
        const ZqElement prefactor = ZqElement::from_int(1, uctx_).scaled(submod(0, inv, m));
        return sum * PadicNumber::from_zq(prefactor);
    }

private:
    void prepare(const GInstance& inst) {
        inst.params.validate();
        if (inst.params.n() != n_) throw error(errc::usage, "evaluator was built for a different n");
        if (inst.t.is_zero()) throw error(errc::zero_argument, "hypergeometric argument t must be nonzero");
        inst.params.check_prime(field_->p());
        if (!has_t_ || bound_t_.code != inst.t.code) {
            omega_bar_t_ = teichmueller(*field_, inst.t, uctx_).inv();
            bound_t_ = inst.t;
            has_t_ = true;
        }
        if (!has_params_ || bound_a_ != inst.params.a || bound_b_ != inst.params.b) {
            bound_a_ = inst.params.a;
            bound_b_ = inst.params.b;
            has_params_ = true;
            // j-independent denominators prod Gamma_p(<a p^k>) Gamma_p(<-b p^k>)
            u64 den = 1;
            const u64 m = uctx_->modulus();
            std::int64_t pk = 1;
            for (std::uint32_t k = 0; k < field_->r(); ++k, pk *= static_cast<std::int64_t>(field_->p()))
                for (std::size_t i = 0; i < n_; ++i) {
                    den = mulmod(den, memo_.at_frac(bound_a_[i] * Rational(pk)), m);
                    den = mulmod(den, memo_.at_frac(-bound_b_[i] * Rational(pk)), m);
                }
            inv_den_ = invmod(den, m);
        }
    }

    PadicNumber term_with(const GParams& g, std::int64_t j, const ZqElement& omega_bar_j) {
        const auto q = static_cast<std::int64_t>(field_->q());
        const u64 m = uctx_->modulus();
        const Rational s0(j, q - 1);
        std::int64_t v = 0;
        u64 ratio = inv_den_;
        std::int64_t pk = 1;
        for (std::uint32_t k = 0; k < field_->r(); ++k, pk *= static_cast<std::int64_t>(field_->p())) {
            for (std::size_t i = 0; i < n_; ++i) {
                const std::int64_t e = exponent(g.a[i], g.b[i], pk, j, q);
                if (e < -1 || e > 1) throw std::logic_error("hypergeometric exponent outside {-1, 0, 1}");
                v += e;
                ratio = mulmod(ratio, memo_.at_frac((g.a[i] - s0) * Rational(pk)), m);
                ratio = mulmod(ratio, memo_.at_frac((-g.b[i] + s0) * Rational(pk)), m);
            }
        }
        // (-p)^v (-1)^{jn} = p^v (-1)^{v + jn}
        const bool negative = ((v + j * static_cast<std::int64_t>(n_)) & 1) != 0;
        if (negative) ratio = submod(0, ratio, m);
        return PadicNumber::make(static_cast<int>(v), omega_bar_j.scaled(ratio), uctx_->K());
    }

    const FqField* field_;
    int K_;
    std::size_t n_;
    UnramifiedContextPtr uctx_;
    std::unique_ptr<GammaCache> gamma_; // stable address for memo_
    GammaMemo memo_;

    bool has_t_ = false;
    FqElement bound_t_{0};
    ZqElement omega_bar_t_{uctx_};
    bool has_params_ = false;
    std::vector<Rational> bound_a_, bound_b_;
    u64 inv_den_ = 1;
};

inline PadicNumber g_term(GEvaluator& ev, const GInstance& inst, std::int64_t j) { return ev.term(inst, j); }
inline PadicNumber g_eval(GEvaluator& ev, const GInstance& inst) { return ev.eval(inst); }

/**
 * The unique integer in [-B, B] congruent to x, for x claimed to lie in Z.
 * Needs every non-constant Z_q coordinate to vanish and p^A > 2B, where A
 * is the absolute precision of x.
 */
inline std::int64_t recover_integer(const PadicNumber& x, std::int64_t B) {
    if (B < 0) throw error(errc::usage, "bound must be nonnegative");
    const auto& ctx = x.context();
    const int A = std::min(x.absolute_precision(), ctx->K());
    if (A <= 0) throw error(errc::bound_too_large_for_precision, "no p-adic digits are known");
    const u64 mod = ctx->base().pow_p(A);
    if (mod <= static_cast<u64>(2 * B))
        throw error(errc::bound_too_large_for_precision,
                    "p^" + std::to_string(A) + " does not exceed 2*" + std::to_string(B));
    if (x.exact_zero()) return 0;
    if (x.valuation() < 0) throw error(errc::not_an_integer, "negative valuation " + std::to_string(x.valuation()));
    for (std::size_t i = 1; i < ctx->r(); ++i)
        if (x.unit().coeff(i) != 0) throw error(errc::not_an_integer, "non-constant coordinate is nonzero");
    const u64 value = mulmod(ctx->base().pow_p(x.valuation()), x.unit().coeff(0), mod);
    if (value <= static_cast<u64>(B)) return static_cast<std::int64_t>(value);
    if (mod - value <= static_cast<u64>(B)) return -static_cast<std::int64_t>(mod - value);
    throw error(errc::no_representative_in_bound, "residue has no representative in [-" + std::to_string(B) + ", " +
                                                      std::to_string(B) + "]");
}

} // namespace padicgg
