#pragma once

#include <cmath>
#include <cstdio>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "curves.hpp"
#include "errors.hpp"
#include "finite_field.hpp"
#include "gamma.hpp"
#include "gamma_identities.hpp"
#include "gauss.hpp"
#include "hypergeom.hpp"
#include "padic_number.hpp"

namespace padicgg {

enum class Theorem {
    MT1,
    COR2_1,
    COR2_2,
    BS1_1,
    BS1_2,
    MC,
    HESSIAN,
    LEMMA31,
    LEMMA5,
    EQ29,
    GAUSS_GK,
    GAUSS_THETA,
    GAUSS_DH,
    ORTHO,
};

inline constexpr Theorem all_theorems[] = {Theorem::MT1,     Theorem::COR2_1,   Theorem::COR2_2,      Theorem::BS1_1,
                                           Theorem::BS1_2,   Theorem::MC,       Theorem::HESSIAN,     Theorem::LEMMA31,
                                           Theorem::LEMMA5,  Theorem::EQ29,     Theorem::GAUSS_GK,    Theorem::GAUSS_THETA,
                                           Theorem::GAUSS_DH, Theorem::ORTHO};

constexpr std::string_view to_string(Theorem t) noexcept {
    switch (t) {
    case Theorem::MT1: return "MT1";
    case Theorem::COR2_1: return "COR2_1";
    case Theorem::COR2_2: return "COR2_2";
    case Theorem::BS1_1: return "BS1_1";
    case Theorem::BS1_2: return "BS1_2";
    case Theorem::MC: return "MC";
    case Theorem::HESSIAN: return "HESSIAN";
    case Theorem::LEMMA31: return "LEMMA31";
    case Theorem::LEMMA5: return "LEMMA5";
    case Theorem::EQ29: return "EQ29";
    case Theorem::GAUSS_GK: return "GAUSS_GK";
    case Theorem::GAUSS_THETA: return "GAUSS_THETA";
    case Theorem::GAUSS_DH: return "GAUSS_DH";
    case Theorem::ORTHO: return "ORTHO";
    }
    return "?";
}

/// One executed check. lhs/rhs are rendered p-adic numbers ("v:d0.d1..."),
/// integers, or complex decimals depending on the theorem.
struct VerifyRecord {
    Theorem theorem = Theorem::MT1;
    std::uint32_t p = 0;
    std::uint32_t r = 0;
    int K = 0;
    std::vector<std::pair<std::string, std::string>> params;
    std::string lhs;
    std::string rhs;
    bool pass = false;
    std::int64_t elapsed_ms = 0;
};

/// 5 - 6 phi(-3) when q = 1 mod 3, otherwise 1.
struct AlphaValue {
    int value = 1;

    static AlphaValue of(const FqField& F) {
        if (F.q() % 3 == 1) return {5 - 6 * F.phi(F.from_int(-3))};
        return {1};
    }
};

/// The hypergeometric symbols that occur in the checked identities.
enum class GSymbol {
    quarter_third,  // [1/4, 3/4; 1/3, 2/3]
    half_sixth,     // [1/2, 1/2; 1/6, 5/6]
    half_third,     // [1/2, 1/2; 1/3, 2/3]
    half_quarter,   // [1/2, 1/2; 1/4, 3/4]
};

inline const GParams& params_of(GSymbol s) {
    static const GParams table[] = {
        {{Rational(1, 4), Rational(3, 4)}, {Rational(1, 3), Rational(2, 3)}},
        {{Rational(1, 2), Rational(1, 2)}, {Rational(1, 6), Rational(5, 6)}},
        {{Rational(1, 2), Rational(1, 2)}, {Rational(1, 3), Rational(2, 3)}},
        {{Rational(1, 2), Rational(1, 2)}, {Rational(1, 4), Rational(3, 4)}},
    };
    return table[static_cast<int>(s)];
}

/**
 * Everything needed to run checks over one field F_q at precision K: the
 * field, a 2G2 evaluator whose values are known mod p^K, a memo of those
 * values by (symbol, t), and lazily built identity and Gauss-sum contexts.
 * Not copyable or movable: the evaluators keep references to the field.
 */
class FieldSession {
public:
    FieldSession(std::uint32_t p, std::uint32_t r, int K = 0, const FieldOptions& opts = {})
        : field_(FqField::build(p, r, opts)), K_(K > 0 ? K : default_precision(p, r)), eval_(field_, K_, 2) {}

    FieldSession(const FieldSession&) = delete;
    FieldSession& operator=(const FieldSession&) = delete;

    const FqField& field() const noexcept { return field_; }
    std::uint32_t p() const noexcept { return field_.p(); }
    std::uint32_t r() const noexcept { return field_.r(); }
    std::uint64_t q() const noexcept { return field_.q(); }
    int K() const noexcept { return K_; }
    const UnramifiedContextPtr& context() const noexcept { return eval_.context(); }
    GEvaluator& evaluator() noexcept { return eval_; }

    /// 2G2[symbol | t]_q, memoized; known at least mod p^K.
    const PadicNumber& G(GSymbol s, FqElement t) {
        const auto key = std::make_pair(static_cast<int>(s), t.code);
        auto it = memo_.find(key);
        if (it == memo_.end()) it = memo_.emplace(key, eval_.eval({params_of(s), t})).first;
        return it->second;
    }

    PadicNumber integer(std::int64_t n) const { return PadicNumber::from_int(n, context()); }

    IdentityContext identities() {
        if (!id_ctx_) {
            id_ctx_ = UnramifiedContext::make(field_, K_);
            id_gamma_ = std::make_unique<GammaCache>(id_ctx_->base());
        }
        return {field_, id_ctx_, *id_gamma_};
    }

    const GaussSums& gauss() {
        if (!gauss_) gauss_ = std::make_unique<GaussSums>(field_);
        return *gauss_;
    }

    std::string str(FqElement x) const { return field_.to_string(x); }

private:
    FqField field_;
    int K_;
    GEvaluator eval_;
    std::map<std::pair<int, std::uint32_t>, PadicNumber> memo_;
    UnramifiedContextPtr id_ctx_;
    std::unique_ptr<GammaCache> id_gamma_;
    std::unique_ptr<GaussSums> gauss_;
};

namespace detail {

inline VerifyRecord make_record(Theorem th, const FieldSession& s) {
    VerifyRecord rec;
    rec.theorem = th;
    rec.p = s.p();
    rec.r = s.r();
    rec.K = s.K();
    return rec;
}

inline void compare_padic(VerifyRecord& rec, const PadicNumber& lhs, const PadicNumber& rhs, int K) {
    rec.lhs = render(lhs, K);
    rec.rhs = render(rhs, K);
    rec.pass = equal_at(lhs, rhs, K);
}

inline std::string format_complex(ComplexVal z) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.12f%+.12fi", z.real(), z.imag());
    return buf;
}

inline void enforce(const char* gate) {
    if (gate) throw precondition_error(gate);
}

inline FqElement weierstrass_argument(const FqField& F, FqElement a, FqElement b) {
    return F.div(F.mul(F.from_int(-27), F.mul(b, b)), F.mul(F.from_int(4), F.pow(a, 3)));
}

// q phi(-3d) G[1/2,1/2;1/6,5/6 | 1/d^3]
inline PadicNumber hessian_side(FieldSession& s, FqElement d) {
    const auto& F = s.field();
    return s.G(GSymbol::half_sixth, F.inv(F.pow(d, 3))).times(static_cast<std::int64_t>(s.q()) * F.phi(F.mul(F.from_int(-3), d)));
}

// alpha - q + phi(-3(8 + 92 d^3 + 35 d^6))
inline std::int64_t scalar_part(FieldSession& s, FqElement d) {
    const auto& F = s.field();
    const FqElement d3 = F.pow(d, 3);
    const FqElement inner = F.add(F.add(F.from_int(8), F.mul(F.from_int(92), d3)), F.mul(F.from_int(35), F.mul(d3, d3)));
    return AlphaValue::of(F).value - static_cast<std::int64_t>(s.q()) + F.phi(F.mul(F.from_int(-3), inner));
}

} // namespace detail

// Each *_gate returns the name of the first violated hypothesis, or nullptr.

inline const char* mt1_gate(const FieldSession& s, FqElement d) {
    const auto& F = s.field();
    if (s.p() <= 3) return "p_le_3";
    if (d.is_zero()) return "d_is_zero";
    if (F.pow(d, 3) == F.one()) return "d_cubed_is_one";
    const auto [m, n] = hessian_bridge(d, F);
    if (m.is_zero()) return "m_is_zero";
    if (n.is_zero()) return "n_is_zero";
    if (detail::weierstrass_argument(F, m, n) == F.one()) return "weierstrass_argument_is_one";
    return nullptr;
}

inline const char* cor2_gate(const FieldSession& s, int branch, FqElement d, FqElement aux) {
    if (const char* g = mt1_gate(s, d)) return g;
    const auto& F = s.field();
    const auto [m, n] = hessian_bridge(d, F);
    if (branch == 1) {
        if (!F.add(F.mul(F.from_int(3), F.mul(aux, aux)), m).is_zero()) return "branch_equation_fails";
        if (aux.is_zero()) return "k_is_zero";
        if (F.add(F.add(F.pow(aux, 3), F.mul(m, aux)), n).is_zero()) return "branch_argument_is_zero";
        return nullptr;
    }
    if (branch == 2) {
        if (!F.add(F.add(F.pow(aux, 3), F.mul(m, aux)), n).is_zero()) return "branch_equation_fails";
        if (aux.is_zero()) return "h_is_zero";
        if (F.add(F.mul(F.from_int(3), F.mul(aux, aux)), m).is_zero()) return "branch_argument_is_zero";
        return nullptr;
    }
    return "branch_unknown";
}

inline const char* bs1_gate(const FieldSession& s, int branch, FqElement a, FqElement b, FqElement aux) {
    const auto& F = s.field();
    if (s.p() <= 3) return "p_le_3";
    if (a.is_zero()) return "a_is_zero";
    if (b.is_zero()) return "b_is_zero";
    if (detail::weierstrass_argument(F, a, b) == F.one()) return "weierstrass_argument_is_one";
    if (branch == 1) {
        if (a != F.neg(F.mul(F.from_int(3), F.mul(aux, aux)))) return "branch_equation_fails";
        if (aux.is_zero()) return "k_is_zero";
        if (F.add(F.add(F.pow(aux, 3), F.mul(a, aux)), b).is_zero()) return "branch_argument_is_zero";
        return nullptr;
    }
    if (branch == 2) {
        if (!F.add(F.add(F.pow(aux, 3), F.mul(a, aux)), b).is_zero()) return "branch_equation_fails";
        if (aux.is_zero()) return "h_is_zero";
        if (F.add(F.mul(F.from_int(3), F.mul(aux, aux)), a).is_zero()) return "branch_argument_is_zero";
        return nullptr;
    }
    return "branch_unknown";
}

inline const char* mc_gate(const FieldSession& s, FqElement a, FqElement b) {
    const auto& F = s.field();
    if (s.p() <= 3) return "p_le_3";
    const FqElement four_a3 = F.mul(F.from_int(4), F.pow(a, 3));
    if (F.add(four_a3, F.mul(F.from_int(27), F.mul(b, b))).is_zero()) return "singular_curve";
    const FqElement j = j_invariant(WeierstrassCurve(F, a, b), F);
    if (j.is_zero()) return "j_is_zero";
    if (j == F.from_int(1728)) return "j_is_1728";
    return nullptr;
}

inline const char* hessian_gate(const FieldSession& s, FqElement a, bool allow_p5 = false) {
    const auto& F = s.field();
    if (allow_p5 ? s.p() <= 3 : s.p() <= 5) return allow_p5 ? "p_le_3" : "p_le_5";
    if (a.is_zero()) return "a_is_zero";
    if (F.pow(a, 3) == F.one()) return "a_cubed_is_one";
    return nullptr;
}

/// Hessian-to-Weierstrass transformation at parameter d.
inline VerifyRecord verify_mt1(FieldSession& s, FqElement d) {
    detail::enforce(mt1_gate(s, d));
    const auto& F = s.field();
    const auto [m, n] = hessian_bridge(d, F);
    auto rec = detail::make_record(Theorem::MT1, s);
    rec.params = {{"d", s.str(d)}};
    const PadicNumber lhs = detail::hessian_side(s, d);
    const PadicNumber tail = s.G(GSymbol::quarter_third, detail::weierstrass_argument(F, m, n))
                                 .times(static_cast<std::int64_t>(s.q()) * F.phi(n));
    detail::compare_padic(rec, lhs, padic_sum({s.integer(detail::scalar_part(s, d)), tail}), s.K());
    return rec;
}

/// Hessian branches: 1 takes aux = k with 3k^2 + m = 0, 2 takes aux = h with h^3 + m h + n = 0.
inline VerifyRecord verify_cor2(FieldSession& s, int branch, FqElement d, FqElement aux) {
    detail::enforce(cor2_gate(s, branch, d, aux));
    const auto& F = s.field();
    const auto q = static_cast<std::int64_t>(s.q());
    const auto [m, n] = hessian_bridge(d, F);
    auto rec = detail::make_record(branch == 1 ? Theorem::COR2_1 : Theorem::COR2_2, s);
    PadicNumber tail = s.integer(0);
    if (branch == 1) {
        const FqElement c = F.add(F.add(F.pow(aux, 3), F.mul(m, aux)), n); // k^3 + m k + n
        const FqElement t = F.neg(F.div(c, F.mul(F.from_int(4), F.pow(aux, 3))));
        tail = s.G(GSymbol::half_third, t).times(q * F.phi(c));
        rec.params = {{"d", s.str(d)}, {"k", s.str(aux)}};
    } else {
        const FqElement c = F.add(F.mul(F.from_int(3), F.mul(aux, aux)), m); // 3h^2 + m
        const FqElement t = F.div(F.mul(F.from_int(4), c), F.mul(F.from_int(9), F.mul(aux, aux)));
        tail = s.G(GSymbol::half_quarter, t).times(q * F.phi(F.neg(c)));
        rec.params = {{"d", s.str(d)}, {"h", s.str(aux)}};
    }
    const PadicNumber lhs = detail::hessian_side(s, d);
    detail::compare_padic(rec, lhs, padic_sum({s.integer(detail::scalar_part(s, d)), tail}), s.K());
    return rec;
}

/// Weierstrass-symbol transformations: branch 1 needs a = -3k^2 (aux = k),
/// branch 2 needs h^3 + a h + b = 0 (aux = h).
inline VerifyRecord verify_bs1(FieldSession& s, int branch, FqElement a, FqElement b, FqElement aux) {
    detail::enforce(bs1_gate(s, branch, a, b, aux));
    const auto& F = s.field();
    auto rec = detail::make_record(branch == 1 ? Theorem::BS1_1 : Theorem::BS1_2, s);
    PadicNumber rhs = s.integer(0);
    if (branch == 1) {
        const FqElement c = F.add(F.add(F.pow(aux, 3), F.mul(a, aux)), b);
        const FqElement u = F.neg(F.div(c, F.mul(F.from_int(4), F.pow(aux, 3))));
        rhs = s.G(GSymbol::half_third, u).times(F.phi(F.mul(b, c)));
        rec.params = {{"a", s.str(a)}, {"b", s.str(b)}, {"k", s.str(aux)}};
    } else {
        const FqElement c = F.add(F.mul(F.from_int(3), F.mul(aux, aux)), a);
        const FqElement u = F.div(F.mul(F.from_int(4), c), F.mul(F.from_int(9), F.mul(aux, aux)));
        rhs = s.G(GSymbol::half_quarter, u).times(F.phi(F.neg(F.mul(b, c))));
        rec.params = {{"a", s.str(a)}, {"b", s.str(b)}, {"h", s.str(aux)}};
    }
    detail::compare_padic(rec, s.G(GSymbol::quarter_third, detail::weierstrass_argument(F, a, b)), rhs, s.K());
    return rec;
}

/// Trace of Frobenius against phi(b) q 2G2[1/4,3/4;1/3,2/3 | -27b^2/4a^3].
inline VerifyRecord verify_mc(FieldSession& s, FqElement a, FqElement b) {
    detail::enforce(mc_gate(s, a, b));
    const auto& F = s.field();
    auto rec = detail::make_record(Theorem::MC, s);
    rec.params = {{"a", s.str(a)}, {"b", s.str(b)}};
    const std::int64_t trace = count_weierstrass(WeierstrassCurve(F, a, b), F).trace;
    rec.lhs = std::to_string(trace);
    const PadicNumber value =
        s.G(GSymbol::quarter_third, detail::weierstrass_argument(F, a, b)).times(static_cast<std::int64_t>(s.q()) * F.phi(b));
    try {
        const std::int64_t rhs = recover_integer(value, static_cast<std::int64_t>(hasse_bound(s.q())));
        rec.rhs = std::to_string(rhs);
        rec.pass = rhs == trace;
    } catch (const error& e) {
        rec.rhs = std::string(to_string(e.code())) + " " + render(value, s.K());
    }
    return rec;
}

/// Affine Hessian count against alpha - 1 + q - q phi(-3a) 2G2[1/2,1/2;1/6,5/6 | 1/a^3].
inline VerifyRecord verify_hessian(FieldSession& s, FqElement a, bool allow_p5 = false) {
    detail::enforce(hessian_gate(s, a, allow_p5));
    const auto& F = s.field();
    auto rec = detail::make_record(Theorem::HESSIAN, s);
    rec.params = {{"a", s.str(a)}};
    const std::int64_t count = count_hessian(HessianCurve(F, a), F);
    rec.lhs = std::to_string(count);
    const auto q = static_cast<std::int64_t>(s.q());
    const PadicNumber value = detail::hessian_side(s, a);
    const auto bound = static_cast<std::int64_t>(std::floor(double(q) + 6 * std::sqrt(double(q)) + 6));
    try {
        const std::int64_t rhs = AlphaValue::of(F).value - 1 + q - recover_integer(value, bound);
        rec.rhs = std::to_string(rhs);
        rec.pass = rhs == count;
    } catch (const error& e) {
        rec.rhs = std::string(to_string(e.code())) + " " + render(value, s.K());
    }
    return rec;
}

/// Gamma-product identities for multiplication by t; one record per identity.
inline std::vector<VerifyRecord> verify_lemma31_records(FieldSession& s, std::int64_t t, std::int64_t j) {
    const auto res = verify_lemma31(t, j, s.identities());
    std::vector<VerifyRecord> out;
    for (int which = 0; which < 2; ++which) {
        const ZqComparison& c = which == 0 ? res.plus : res.minus;
        auto rec = detail::make_record(Theorem::LEMMA31, s);
        rec.params = {{"t", std::to_string(t)}, {"j", std::to_string(j)}, {"sign", which == 0 ? "+" : "-"}};
        rec.lhs = render(PadicNumber::from_zq(c.lhs), s.K());
        rec.rhs = render(PadicNumber::from_zq(c.rhs), s.K());
        rec.pass = c.holds();
        out.push_back(std::move(rec));
    }
    return out;
}

inline VerifyRecord verify_eq29_record(FieldSession& s, std::int64_t l) {
    const auto c = verify_eq29(l, s.identities());
    auto rec = detail::make_record(Theorem::EQ29, s);
    rec.params = {{"l", std::to_string(l)}};
    rec.lhs = render(PadicNumber::from_zq(c.lhs), s.K());
    rec.rhs = render(PadicNumber::from_zq(c.rhs), s.K());
    rec.pass = c.holds();
    return rec;
}

inline VerifyRecord verify_lemma5_record(FieldSession& s, std::int64_t l, std::int64_t i) {
    const auto c = verify_lemma5(l, i, s.p(), s.r());
    auto rec = detail::make_record(Theorem::LEMMA5, s);
    rec.params = {{"l", std::to_string(l)}, {"i", std::to_string(i)}};
    rec.lhs = std::to_string(c.lhs);
    rec.rhs = std::to_string(c.rhs);
    rec.pass = c.holds();
    return rec;
}

inline VerifyRecord float_record(Theorem th, FieldSession& s, std::vector<std::pair<std::string, std::string>> params,
                                 const FloatCheck& c) {
    auto rec = detail::make_record(th, s);
    rec.params = std::move(params);
    rec.lhs = detail::format_complex(c.lhs);
    rec.rhs = detail::format_complex(c.rhs);
    rec.pass = c.pass();
    return rec;
}

/// Both orthogonality relations over the field; lhs counts the relations that
/// evaluate to the expected value, rhs the number of relations.
inline VerifyRecord verify_ortho_record(FieldSession& s, bool over_characters) {
    const auto& F = s.field();
    const auto order = static_cast<std::int64_t>(F.q() - 1);
    std::int64_t good = 0;
    if (over_characters) {
        for (std::uint64_t m = 0; m < F.q() - 1; ++m) {
            auto v = character_sum_over_field(F, {m});
            if (v && *v == (m == 0 ? order : 0)) ++good;
        }
    } else {
        for (std::uint32_t c = 1; c < F.q(); ++c) {
            auto v = character_sum_over_group(F, {c});
            if (v && *v == (c == 1 ? order : 0)) ++good;
        }
    }
    auto rec = detail::make_record(Theorem::ORTHO, s);
    rec.params = {{"sum", over_characters ? "over_x" : "over_chi"}};
    rec.lhs = std::to_string(good);
    rec.rhs = std::to_string(order);
    rec.pass = good == order;
    return rec;
}

} // namespace padicgg
