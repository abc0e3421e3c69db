#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "errors.hpp"
#include "finite_field.hpp"

namespace padicgg {

using ComplexVal = std::complex<double>;

/// Outcome of a floating-point identity check.
struct FloatCheck {
    ComplexVal lhs;
    ComplexVal rhs;
    double tol = 0;

    double error() const { return std::abs(lhs - rhs); }
    bool pass() const { return std::isfinite(lhs.real()) && std::isfinite(lhs.imag()) && std::isfinite(rhs.real()) &&
                               std::isfinite(rhs.imag()) && error() < tol; }
};

/// Default tolerance: each sum has q - 1 unit-modulus terms.
inline double default_gauss_tol(std::uint64_t q) { return 1e-6 * static_cast<double>(q); }

/**
 * Numerical Gauss sums G_m = sum_{x != 0} T^m(x) theta(x) over one field,
 * with T^m(g^s) = exp(2 pi i m s/(q-1)) and theta(x) = exp(2 pi i tr(x)/p).
 * All q - 1 sums are computed up front from two root-of-unity tables.
 */
class GaussSums {
public:
    explicit GaussSums(const FqField& field) : field_(&field) {
        const std::uint64_t n = field.q() - 1;
        unity_.resize(n);
        for (std::uint64_t k = 0; k < n; ++k) unity_[k] = std::polar(1.0, 2 * std::numbers::pi * double(k) / double(n));
        additive_.resize(field.p());
        for (std::uint32_t k = 0; k < field.p(); ++k)
            additive_[k] = std::polar(1.0, 2 * std::numbers::pi * double(k) / double(field.p()));
        sums_.assign(n, ComplexVal{});
        for (std::uint64_t m = 0; m < n; ++m)
            for (std::uint32_t s = 0; s < n; ++s)
                sums_[m] += unity_[(m * s) % n] * additive_[field.trace(field.exp(s))];
    }

    const FqField& field() const noexcept { return *field_; }

    ComplexVal gauss_sum(std::int64_t m) const { return sums_[index(m)]; }

    /// T^m(x) for x != 0.
    ComplexVal character(std::int64_t m, FqElement x) const {
        const std::uint64_t n = field_->q() - 1;
        return unity_[(index(m) * field_->dlog(x)) % n];
    }

    ComplexVal theta(FqElement x) const { return additive_[field_->trace(x)]; }

    std::uint64_t index(std::int64_t m) const noexcept {
        return reduce_signed(m, field_->q() - 1);
    }

private:
    const FqField* field_;
    std::vector<ComplexVal> unity_;
    std::vector<ComplexVal> additive_;
    std::vector<ComplexVal> sums_;
};

inline ComplexVal gauss_sum(CharacterIndex m, const GaussSums& g) { return g.gauss_sum(static_cast<std::int64_t>(m.m)); }

/// G_k G_{-k} = q T^k(-1) for k != 0 mod q-1.
inline FloatCheck check_gk_product(std::int64_t k, const GaussSums& g, double tol) {
    const auto& F = g.field();
    if (g.index(k) == 0) throw error(errc::trivial_character, "k = 0 mod q-1");
    return {g.gauss_sum(k) * g.gauss_sum(-k), double(F.q()) * g.character(k, F.from_int(-1)), tol};
}

/// theta(alpha) = (1/(q-1)) sum_m G_{-m} T^m(alpha) for alpha != 0.
inline FloatCheck check_theta_expansion(FqElement alpha, const GaussSums& g, double tol) {
    if (alpha.is_zero()) throw error(errc::zero_argument, "theta expansion needs alpha != 0");
    const auto n = static_cast<std::int64_t>(g.field().q() - 1);
    ComplexVal rhs{};
    for (std::int64_t m = 0; m < n; ++m) rhs += g.gauss_sum(-m) * g.character(m, alpha);
    return {g.theta(alpha), rhs / double(n), tol};
}

/**
 * Davenport-Hasse product relation for psi = T^s and m | q-1:
 * prod_{chi^m = 1} G(chi psi) = -G(psi^m) psi(m^{-m}) prod_{chi^m = 1} G(chi).
 */
inline FloatCheck check_davenport_hasse(std::int64_t m, std::int64_t s, const GaussSums& g, double tol) {
    const auto& F = g.field();
    const auto n = static_cast<std::int64_t>(F.q() - 1);
    if (m <= 0 || n % m != 0)
        throw error(errc::modulus_mismatch, "q = " + std::to_string(F.q()) + " is not 1 mod " + std::to_string(m));
    const std::int64_t step = n / m;
    ComplexVal lhs{1.0, 0.0}, orbit{1.0, 0.0};
    for (std::int64_t k = 0; k < m; ++k) {
        lhs *= g.gauss_sum(k * step + s);
        orbit *= g.gauss_sum(k * step);
    }
    const FqElement m_pow = F.pow(F.from_int(m), -m);
    const ComplexVal rhs = -g.gauss_sum(s * m) * g.character(s, m_pow) * orbit;
    // both products have modulus q^{m/2}; compare at unit scale
    const double scale = std::pow(static_cast<double>(F.q()), 0.5 * static_cast<double>(m));
    return {lhs / scale, rhs / scale, tol};
}

} // namespace padicgg
