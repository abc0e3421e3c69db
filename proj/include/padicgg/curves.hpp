#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "finite_field.hpp"

namespace padicgg {

struct CurveCount {
    std::int64_t affine = 0;
    std::int64_t projective = 0;
    std::int64_t trace = 0;
};

/// y^2 = x^3 + a x + b with 4a^3 + 27b^2 != 0.
class WeierstrassCurve {
public:
    WeierstrassCurve(const FqField& field, FqElement a, FqElement b) : a_(a), b_(b) {
        if (discriminant_part(field).is_zero()) throw error(errc::singular_curve, "4a^3 + 27b^2 = 0");
    }

    FqElement a() const noexcept { return a_; }
    FqElement b() const noexcept { return b_; }

    /// 4a^3 + 27b^2
    FqElement discriminant_part(const FqField& F) const {
        return F.add(F.mul(F.from_int(4), F.pow(a_, 3)), F.mul(F.from_int(27), F.mul(b_, b_)));
    }

    FqElement rhs(const FqField& F, FqElement x) const { return F.add(F.add(F.mul(F.mul(x, x), x), F.mul(a_, x)), b_); }

private:
    FqElement a_, b_;
};

/// x^3 + y^3 + 1 = 3 d x y with d^3 != 1.
class HessianCurve {
public:
    HessianCurve(const FqField& field, FqElement d) : d_(d) {
        if (field.pow(d, 3) == field.one()) throw error(errc::singular_hessian, "d^3 = 1");
    }

    FqElement d() const noexcept { return d_; }

private:
    FqElement d_;
};

inline std::uint64_t hasse_bound(std::uint64_t q) {
    auto s = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(4 * q)));
    while (s * s > 4 * q) --s;
    while ((s + 1) * (s + 1) <= 4 * q) ++s;
    return s; // floor(2 sqrt q)
}

/// Counts via sum_x (1 + phi(x^3 + a x + b)).
inline CurveCount count_weierstrass(const WeierstrassCurve& E, const FqField& F) {
    CurveCount c;
    for (std::uint32_t code = 0; code < F.q(); ++code) c.affine += 1 + F.phi(E.rhs(F, FqElement{code}));
    c.projective = c.affine + 1;
    c.trace = static_cast<std::int64_t>(F.q()) + 1 - c.projective;
    return c;
}

/// Counts by testing every pair (x, y); the independent second strategy.
inline CurveCount count_weierstrass_naive(const WeierstrassCurve& E, const FqField& F) {
    CurveCount c;
    for (std::uint32_t x = 0; x < F.q(); ++x) {
        const auto v = E.rhs(F, FqElement{x});
        for (std::uint32_t y = 0; y < F.q(); ++y)
            if (F.mul(FqElement{y}, FqElement{y}) == v) ++c.affine;
    }
    c.projective = c.affine + 1;
    c.trace = static_cast<std::int64_t>(F.q()) + 1 - c.projective;
    return c;
}

/// Affine solutions of x^3 + y^3 + 1 = 3 d x y.
inline std::int64_t count_hessian(const HessianCurve& C, const FqField& F) {
    std::vector<FqElement> cubes(F.q());
    for (std::uint32_t x = 0; x < F.q(); ++x) cubes[x] = F.pow(FqElement{x}, 3);
    const FqElement three_d = F.mul(F.from_int(3), C.d());
    std::int64_t n = 0;
    for (std::uint32_t x = 0; x < F.q(); ++x) {
        const FqElement row = F.add(cubes[x], F.one());
        const FqElement slope = F.mul(three_d, FqElement{x});
        for (std::uint32_t y = 0; y < F.q(); ++y)
            if (F.add(row, cubes[y]) == F.mul(slope, FqElement{y})) ++n;
    }
    return n;
}

/// m = -27 d (d^3 + 8), n = 27 (d^6 - 20 d^3 - 8).
inline std::pair<FqElement, FqElement> hessian_bridge(FqElement d, const FqField& F) {
    const FqElement d3 = F.pow(d, 3);
    const FqElement m = F.mul(F.from_int(-27), F.mul(d, F.add(d3, F.from_int(8))));
    const FqElement n = F.mul(F.from_int(27), F.sub(F.sub(F.mul(d3, d3), F.mul(F.from_int(20), d3)), F.from_int(8)));
    return {m, n};
}

/// Both sides of #E(F_q) + q = #C_d(F_q) + 2 + phi(-3(8 + 92 d^3 + 35 d^6)),
/// with E: y^2 = x^3 + m x + n from hessian_bridge and #E projective.
struct CountRelation {
    std::int64_t lhs = 0;
    std::int64_t rhs = 0;
    bool holds() const noexcept { return lhs == rhs; }
};

inline CountRelation check_count_relation(FqElement d, const FqField& F) {
    const HessianCurve C(F, d);
    const auto [m, n] = hessian_bridge(d, F);
    const WeierstrassCurve E(F, m, n);
    const FqElement d3 = F.pow(d, 3);
    const FqElement inner = F.add(F.add(F.from_int(8), F.mul(F.from_int(92), d3)), F.mul(F.from_int(35), F.mul(d3, d3)));
    CountRelation out;
    out.lhs = count_weierstrass(E, F).projective + static_cast<std::int64_t>(F.q());
    out.rhs = count_hessian(C, F) + 2 + F.phi(F.mul(F.from_int(-3), inner));
    return out;
}

/// 1728 * 4a^3 / (4a^3 + 27b^2)
inline FqElement j_invariant(const WeierstrassCurve& E, const FqField& F) {
    const FqElement four_a3 = F.mul(F.from_int(4), F.pow(E.a(), 3));
    return F.div(F.mul(F.from_int(1728), four_a3), E.discriminant_part(F));
}

inline bool is_generic(const WeierstrassCurve& E, const FqField& F) {
    const FqElement j = j_invariant(E, F);
    return !j.is_zero() && j != F.from_int(1728);
}

} // namespace padicgg
