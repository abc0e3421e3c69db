#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "modular.hpp"

namespace padicgg {

/// Element of F_q; the coefficient vector (c_0, ..., c_{r-1}) in the power
/// basis of the defining polynomial is packed as code = sum c_i p^i.
struct FqElement {
    std::uint32_t code = 0;

    bool is_zero() const noexcept { return code == 0; }
    friend constexpr auto operator<=>(FqElement, FqElement) noexcept = default;
};

/// Multiplicative character T^m, m taken mod q - 1.
struct CharacterIndex {
    std::uint64_t m = 0;
    friend constexpr auto operator<=>(CharacterIndex, CharacterIndex) noexcept = default;
};

struct FieldOptions {
    /// Upper bound on q (the discrete-log tables are O(q)).
    std::uint64_t max_q = 100000;
    /// Skip this many admissible defining polynomials in search order.
    unsigned poly_rank = 0;
    /// Skip this many primitive elements in search order when picking g.
    unsigned generator_rank = 0;
};

namespace detail {

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Arithmetic in F_p[x]/(f) on packed codes, f monic of degree r with low
// coefficients `low` (f = x^r + low[r-1] x^{r-1} + ... + low[0]).
struct PolyRing {
    std::uint32_t p;
    std::uint32_t r;
    std::vector<std::uint32_t> low;

    std::vector<std::uint32_t> unpack(std::uint32_t code) const {
        std::vector<std::uint32_t> c(r);
        for (std::uint32_t i = 0; i < r; ++i) {
            c[i] = code % p;
            code /= p;
        }
        return c;
    }
    std::uint32_t pack(const std::vector<std::uint32_t>& c) const {
        std::uint32_t code = 0;
        for (std::uint32_t i = r; i-- > 0;) code = code * p + c[i];
        return code;
    }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        auto x = unpack(a), y = unpack(b);
        std::vector<std::uint64_t> prod(2 * r - 1, 0);
        for (std::uint32_t i = 0; i < r; ++i)
            for (std::uint32_t j = 0; j < r; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{x[i]} * y[j]) % p;
        for (std::uint32_t d = 2 * r - 1; d-- > r;) {
            std::uint64_t c = prod[d];
            if (!c) continue;
            prod[d] = 0;
            for (std::uint32_t i = 0; i < r; ++i)
                prod[d - r + i] = (prod[d - r + i] + (p - low[i]) * c) % p;
        }
        std::vector<std::uint32_t> out(r);
        for (std::uint32_t i = 0; i < r; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
        return pack(out);
    }
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
        std::uint32_t result = 1;
        while (e) {
            if (e & 1) result = mul(result, a);
            a = mul(a, a);
            e >>= 1;
        }
        return result;
    }
    // code of the class of x (x itself when r >= 2, -low[0] when r == 1)
    std::uint32_t root() const { return r == 1 ? (p - low[0]) % p : p; }

    // True when the class of x has order q - 1, which forces f irreducible.
    bool root_is_primitive() const {
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < r; ++i) q *= p;
        std::uint32_t x = root();
        if (x == 0 || pow(x, q - 1) != 1) return false;
        for (auto ell : prime_factors(q - 1))
            if (pow(x, (q - 1) / ell) == 1) return false;
        return true;
    }
};

} // namespace detail

/**
 * Finite field F_q, q = p^r, with a fixed defining polynomial, a fixed
 * generator g of F_q^x and complete discrete-log tables.
 *
 * The defining polynomial is the first monic degree-r polynomial (low
 * coefficients enumerated as the base-p integer sum a_i p^i) whose root has
 * multiplicative order q - 1; an element of order q - 1 can only exist when
 * the quotient ring is a field, so this test certifies irreducibility too.
 * The generator is the smallest element code of order q - 1.
 */
class FqField {
public:
    static FqField build(std::uint32_t p, std::uint32_t r, const FieldOptions& opts = {}) {
        if (p < 3 || !is_prime(p)) throw error(errc::composite_p, "p=" + std::to_string(p));
        if (r < 1) throw error(errc::usage, "extension degree r must be >= 1");
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < r; ++i) {
            q *= p;
            if (q > opts.max_q)
                throw error(errc::field_too_large,
                            std::to_string(p) + "^" + std::to_string(r) + " exceeds q <= " + std::to_string(opts.max_q));
        }
        FqField f;
        f.p_ = p;
        f.r_ = r;
        f.q_ = static_cast<std::uint32_t>(q);
        detail::PolyRing ring{p, r, std::vector<std::uint32_t>(r)};
        unsigned admissible = 0;
        bool found = false;
        for (std::uint32_t c = 0; c < q && !found; ++c) {
            std::uint32_t code = c;
            for (std::uint32_t i = 0; i < r; ++i) {
                ring.low[i] = code % p;
                code /= p;
            }
            if (ring.low[0] == 0) continue; // x | f
            if (ring.root_is_primitive() && admissible++ == opts.poly_rank) found = true;
        }
        if (!found) throw error(errc::usage, "no admissible defining polynomial at requested rank");
        f.low_ = ring.low;

        // Powers of the root T enumerate F_q^x; build log_T then re-base on g.
        std::vector<std::uint32_t> log_T(q, 0);
        std::uint32_t root = ring.root();
        std::uint32_t cur = 1;
        for (std::uint64_t s = 0; s + 1 < q; ++s) {
            log_T[cur] = static_cast<std::uint32_t>(s);
            cur = ring.mul(cur, root);
        }
        unsigned seen = 0;
        std::uint32_t g = 0;
        std::uint64_t log_g_T = 0;
        for (std::uint32_t c = 1; c < q; ++c) {
            if (std::gcd<std::uint64_t, std::uint64_t>(log_T[c], q - 1) == 1 && seen++ == opts.generator_rank) {
                g = c;
                log_g_T = log_T[c];
                break;
            }
        }
        if (g == 0) throw error(errc::usage, "no generator at requested rank");
        f.generator_ = FqElement{g};
        // dlog_g(x) = log_T(x) / log_T(g) mod (q - 1)
        std::uint64_t inv = invmod(log_g_T, q - 1);
        f.dlog_.assign(q, 0);
        f.exp_.assign(q - 1, 0);
        for (std::uint32_t c = 1; c < q; ++c) {
            auto s = static_cast<std::uint32_t>(mulmod(log_T[c], inv, q - 1));
            f.dlog_[c] = s;
            f.exp_[s] = c;
        }
        f.trace_.resize(q);
        for (std::uint32_t c = 0; c < q; ++c) {
            FqElement x{c}, acc{0}, power = x;
            for (std::uint32_t i = 0; i < r; ++i) {
                acc = f.add(acc, power);
                power = f.frobenius(power);
            }
            if (acc.code >= p) throw error(errc::usage, "trace left the prime field");
            f.trace_[c] = acc.code;
        }
        return f;
    }

    std::uint32_t p() const noexcept { return p_; }
    std::uint32_t r() const noexcept { return r_; }
    std::uint32_t q() const noexcept { return q_; }

    /// Low coefficients a_0..a_{r-1} of the monic defining polynomial.
    const std::vector<std::uint32_t>& defining_poly() const noexcept { return low_; }
    FqElement generator() const noexcept { return generator_; }

    FqElement zero() const noexcept { return {0}; }
    FqElement one() const noexcept { return {1}; }

    FqElement from_int(std::int64_t n) const noexcept {
        return {static_cast<std::uint32_t>(reduce_signed(n, p_))};
    }

    FqElement from_coeffs(std::span<const std::int64_t> coeffs) const {
        if (coeffs.size() > r_) throw error(errc::usage, "too many coefficients for F_q element");
        std::uint32_t code = 0;
        for (std::size_t i = coeffs.size(); i-- > 0;)
            code = code * p_ + static_cast<std::uint32_t>(reduce_signed(coeffs[i], p_));
        return {code};
    }

    std::vector<std::uint32_t> coeffs(FqElement x) const {
        std::vector<std::uint32_t> c(r_);
        for (std::uint32_t i = 0; i < r_; ++i) {
            c[i] = x.code % p_;
            x.code /= p_;
        }
        return c;
    }

    FqElement add(FqElement a, FqElement b) const noexcept {
        if (r_ == 1) return {(a.code + b.code) % p_};
        std::uint32_t out = 0, scale = 1;
        for (std::uint32_t i = 0; i < r_; ++i) {
            std::uint32_t d = (a.code % p_ + b.code % p_) % p_;
            out += d * scale;
            scale *= p_;
            a.code /= p_;
            b.code /= p_;
        }
        return {out};
    }

    FqElement neg(FqElement a) const noexcept {
        if (r_ == 1) return {(p_ - a.code) % p_};
        std::uint32_t out = 0, scale = 1;
        for (std::uint32_t i = 0; i < r_; ++i) {
            out += ((p_ - a.code % p_) % p_) * scale;
            scale *= p_;
            a.code /= p_;
        }
        return {out};
    }

    FqElement sub(FqElement a, FqElement b) const noexcept { return add(a, neg(b)); }

    FqElement mul(FqElement a, FqElement b) const noexcept {
        if (a.is_zero() || b.is_zero()) return {0};
        std::uint32_t s = dlog_[a.code] + dlog_[b.code];
        if (s >= q_ - 1) s -= q_ - 1;
        return {exp_[s]};
    }

    FqElement inv(FqElement a) const {
        if (a.is_zero()) throw error(errc::zero_argument, "inverse of 0 in F_q");
        return {exp_[(q_ - 1 - dlog_[a.code]) % (q_ - 1)]};
    }

    FqElement div(FqElement a, FqElement b) const { return mul(a, inv(b)); }

    /// a^e; negative e requires a != 0, and 0^0 = 1.
    FqElement pow(FqElement a, std::int64_t e) const {
        if (a.is_zero()) {
            if (e < 0) throw error(errc::zero_argument, "negative power of 0 in F_q");
            return e == 0 ? one() : zero();
        }
        std::int64_t s = static_cast<std::int64_t>(dlog_[a.code]) * (e % static_cast<std::int64_t>(q_ - 1));
        return {exp_[reduce_signed(s, q_ - 1)]};
    }

    FqElement frobenius(FqElement a) const noexcept {
        if (a.is_zero()) return a;
        return {exp_[mulmod(dlog_[a.code], p_, q_ - 1)]};
    }

    /// Discrete log base the field generator; throws for 0.
    std::uint32_t dlog(FqElement a) const {
        if (a.is_zero()) throw error(errc::zero_argument, "dlog of 0");
        return dlog_[a.code];
    }

    /// g^s.
    FqElement exp(std::uint64_t s) const noexcept { return {exp_[s % (q_ - 1)]}; }

    /// Quadratic character with phi(0) = 0.
    int phi(FqElement a) const noexcept {
        if (a.is_zero()) return 0;
        return (dlog_[a.code] & 1u) ? -1 : 1;
    }

    /// Absolute trace to F_p, as an integer in [0, p).
    std::uint32_t trace(FqElement a) const noexcept { return trace_[a.code]; }

    std::string to_string(FqElement a) const {
        if (r_ == 1) return std::to_string(a.code);
        auto c = coeffs(a);
        std::string s = "(";
        for (std::uint32_t i = 0; i < r_; ++i) {
            if (i) s += ",";
            s += std::to_string(c[i]);
        }
        return s + ")";
    }

    /// Parses "n" (embedded from Z) or "c0,c1,..." / "(c0,c1,...)" (power basis).
    FqElement parse(std::string_view text) const {
        std::string s(text);
        if (!s.empty() && s.front() == '(') s.erase(0, 1);
        if (!s.empty() && s.back() == ')') s.pop_back();
        std::vector<std::int64_t> parts;
        std::size_t start = 0;
        try {
            while (true) {
                auto comma = s.find(',', start);
                std::string piece = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
                std::size_t used = 0;
                parts.push_back(std::stoll(piece, &used));
                if (used != piece.size()) throw std::invalid_argument(piece);
                if (comma == std::string::npos) break;
                start = comma + 1;
            }
        } catch (const std::logic_error&) {
            throw error(errc::usage, "malformed field element '" + std::string(text) + "'");
        }
        if (parts.size() == 1) return from_int(parts[0]);
        return from_coeffs(parts);
    }

private:
    std::uint32_t p_ = 0, r_ = 0, q_ = 0;
    std::vector<std::uint32_t> low_;
    FqElement generator_;
    std::vector<std::uint32_t> dlog_;
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> trace_;
};

// ---------------------------------------------------------------------------
// Orthogonality relations, evaluated exactly.
//
// A sum of (q-1)-th roots of unity is represented by the multiset of its
// exponents. It equals its count when every exponent is 0, and it is exactly
// 0 when the multiset is invariant under a shift by (q-1)/l for some prime
// l | q-1 (the sum is then fixed by multiplication by a root of unity != 1).

/// Exact value of sum_e counts[e] * zeta^e when decidable by the rules above.
inline std::optional<std::int64_t> exact_root_sum(const std::vector<std::uint64_t>& counts) {
    std::uint64_t n = counts.size();
    std::uint64_t total = 0;
    bool only_zero = true;
    for (std::uint64_t e = 0; e < n; ++e) {
        total += counts[e];
        if (e != 0 && counts[e] != 0) only_zero = false;
    }
    if (only_zero) return static_cast<std::int64_t>(total);
    for (auto ell : detail::prime_factors(n)) {
        std::uint64_t shift = n / ell;
        bool invariant = true;
        for (std::uint64_t e = 0; e < n && invariant; ++e)
            if (counts[e] != counts[(e + shift) % n]) invariant = false;
        if (invariant) return 0;
    }
    return std::nullopt;
}

/// sum over x in F_q of T^m(x) (T^m(0) = 0), exactly.
inline std::optional<std::int64_t> character_sum_over_field(const FqField& field, CharacterIndex chi) {
    std::uint64_t n = field.q() - 1;
    std::vector<std::uint64_t> counts(n, 0);
    for (std::uint32_t c = 1; c < field.q(); ++c) ++counts[mulmod(chi.m % n, field.dlog({c}), n)];
    return exact_root_sum(counts);
}

/// sum over all characters chi of chi(x), exactly; x != 0.
inline std::optional<std::int64_t> character_sum_over_group(const FqField& field, FqElement x) {
    std::uint64_t n = field.q() - 1;
    std::vector<std::uint64_t> counts(n, 0);
    std::uint64_t s = field.dlog(x);
    for (std::uint64_t m = 0; m < n; ++m) ++counts[mulmod(m, s, n)];
    return exact_root_sum(counts);
}

/// Checks both orthogonality relations for every character and every x != 0.
inline bool check_orthogonality(const FqField& field) {
    std::int64_t order = field.q() - 1;
    for (std::uint64_t m = 0; m < field.q() - 1; ++m) {
        auto s = character_sum_over_field(field, {m});
        if (!s || *s != (m == 0 ? order : 0)) return false;
    }
    for (std::uint32_t c = 1; c < field.q(); ++c) {
        auto s = character_sum_over_group(field, {c});
        if (!s || *s != (c == 1 ? order : 0)) return false;
    }
    return true;
}

} // namespace padicgg
