#include <gtest/gtest.h>

#include <set>
#include <utility>
#include <vector>

#include "padicgg/unramified.hpp"

using namespace padicgg;

namespace {

// Multiplicative order of x in (Z/p)^x by repeated multiplication.
std::uint64_t order_mod(std::uint64_t x, std::uint64_t p) {
    std::uint64_t k = 1, v = x % p;
    while (v != 1) {
        v = v * x % p;
        ++k;
    }
    return k;
}

const std::vector<std::pair<std::uint32_t, std::uint32_t>> small_fields = {
    {3, 1}, {5, 1}, {7, 1}, {11, 1}, {13, 1}, {3, 2}, {5, 2}, {7, 2}, {3, 3}, {11, 2}, {3, 4}, {113, 1}};

} // namespace

// =============================================================================
// Construction
// =============================================================================

TEST(FieldBuildTest, PrimeFieldGenerator) {
    FqField F = FqField::build(7, 1);
    EXPECT_EQ(F.q(), 7u);
    EXPECT_EQ(F.generator().code, 3u);  // smallest primitive root mod 7
    EXPECT_EQ(order_mod(3, 7), 6u);
}

TEST(FieldBuildTest, GeneratorIsSmallestPrimitiveRoot) {
    for (std::uint32_t p : {5u, 11u, 13u, 23u, 41u, 47u, 71u}) {
        FqField F = FqField::build(p, 1);
        std::uint32_t want = 2;
        while (order_mod(want, p) != p - 1) ++want;
        EXPECT_EQ(F.generator().code, want) << "p=" << p;
    }
}

TEST(FieldBuildTest, QuadraticExtensionGeneratorOrder) {
    FqField F = FqField::build(5, 2);
    EXPECT_EQ(F.q(), 25u);
    std::uint64_t k = 1;
    for (FqElement x = F.generator(); x != F.one(); x = F.mul(x, F.generator())) ++k;
    EXPECT_EQ(k, 24u);
}

TEST(FieldBuildTest, Errors) {
    auto code_of = [](auto&& f) {
        try {
            f();
        } catch (const error& e) {
            return e.code();
        }
        return errc::usage;
    };
    EXPECT_EQ(code_of([] { FqField::build(9, 1); }), errc::composite_p);
    EXPECT_EQ(code_of([] { FqField::build(2, 3); }), errc::composite_p);
    EXPECT_EQ(code_of([] { FqField::build(101, 3, {.max_q = 100000}); }), errc::field_too_large);
}

TEST(FieldBuildTest, RankOptionsGiveDifferentPresentations) {
    FqField a = FqField::build(7, 2);
    FqField b = FqField::build(7, 2, {.poly_rank = 1});
    FqField c = FqField::build(7, 2, {.generator_rank = 3});
    EXPECT_NE(a.defining_poly(), b.defining_poly());
    EXPECT_EQ(a.defining_poly(), c.defining_poly());
    EXPECT_NE(a.generator(), c.generator());
}

// =============================================================================
// Arithmetic and discrete logs
// =============================================================================

TEST(FieldArithTest, Axioms) {
    for (auto [p, r] : small_fields) {
        if (FqField::build(p, r).q() > 30) continue;
        FqField F = FqField::build(p, r);
        for (std::uint32_t a = 0; a < F.q(); ++a)
            for (std::uint32_t b = 0; b < F.q(); ++b) {
                FqElement x{a}, y{b};
                EXPECT_EQ(F.add(x, y), F.add(y, x));
                EXPECT_EQ(F.mul(x, y), F.mul(y, x));
                EXPECT_EQ(F.sub(F.add(x, y), y), x);
                if (b) {
                    EXPECT_EQ(F.mul(F.div(x, y), y), x);
                }
                for (std::uint32_t c = 0; c < F.q(); c += 3) {
                    FqElement z{c};
                    EXPECT_EQ(F.mul(x, F.add(y, z)), F.add(F.mul(x, y), F.mul(x, z)));
                }
            }
    }
}

TEST(FieldArithTest, DlogIsAHomomorphismAndBijection) {
    for (auto [p, r] : small_fields) {
        FqField F = FqField::build(p, r);
        std::set<std::uint32_t> seen;
        for (std::uint32_t a = 1; a < F.q(); ++a) {
            seen.insert(F.dlog({a}));
            EXPECT_EQ(F.exp(F.dlog({a})), FqElement{a});
            for (std::uint32_t b = 1; b < F.q(); ++b)
                EXPECT_EQ(F.dlog(F.mul({a}, {b})), (F.dlog({a}) + F.dlog({b})) % (F.q() - 1));
        }
        EXPECT_EQ(seen.size(), F.q() - 1);
        EXPECT_THROW(F.dlog(F.zero()), error);
    }
}

TEST(FieldArithTest, ParseAndPrint) {
    FqField F = FqField::build(7, 2);
    FqElement x = F.parse("3,5");
    EXPECT_EQ(F.to_string(x), "(3,5)");
    EXPECT_EQ(F.parse("(3,5)"), x);
    EXPECT_EQ(F.parse("-1"), F.from_int(6));
    EXPECT_THROW(F.parse("1,2,3"), error);
    EXPECT_THROW(F.parse("a"), error);
}

// =============================================================================
// Quadratic character, trace, Teichmueller character
// =============================================================================

TEST(PhiTest, Examples) {
    FqField F = FqField::build(11, 1);
    EXPECT_EQ(F.phi(F.zero()), 0);
    EXPECT_EQ(F.phi(F.one()), 1);
    EXPECT_EQ(F.phi(F.generator()), -1);
}

TEST(PhiTest, EulerCriterionOnPrimeFields) {
    for (std::uint32_t p : {5u, 7u, 11u, 13u, 31u, 97u}) {
        FqField F = FqField::build(p, 1);
        for (std::uint32_t a = 1; a < p; ++a) {
            std::uint64_t e = powmod(a, (p - 1) / 2, p);
            EXPECT_EQ(F.phi({a}), e == 1 ? 1 : -1);
        }
    }
}

TEST(PhiTest, Multiplicative) {
    for (auto [p, r] : small_fields) {
        FqField F = FqField::build(p, r);
        for (std::uint32_t a = 1; a < F.q(); ++a)
            for (std::uint32_t b = 1; b < F.q(); ++b) EXPECT_EQ(F.phi({a}) * F.phi({b}), F.phi(F.mul({a}, {b})));
    }
}

TEST(PhiTest, MinusThreeIsASquareWhenQIsOneModThree) {
    int checked = 0;
    for (std::uint32_t p = 5; p < 10000; ++p) {
        if (!is_prime(p)) continue;
        std::uint64_t q = p;
        for (std::uint32_t r = 1; q < 10000; ++r, q *= p) {
            if (q % 3 != 1) continue;
            FqField F = FqField::build(p, r);
            EXPECT_EQ(F.phi(F.from_int(-3)), 1) << "q=" << q;
            ++checked;
        }
    }
    EXPECT_GT(checked, 600);
}

TEST(TraceTest, PrimeFieldIdentityAndVieta) {
    FqField F7 = FqField::build(7, 1);
    for (std::uint32_t a = 0; a < 7; ++a) EXPECT_EQ(F7.trace({a}), a);

    FqField F = FqField::build(5, 2);
    EXPECT_EQ(F.trace(F.zero()), 0u);
    FqElement T = F.parse("0,1");
    EXPECT_EQ(F.trace(T), (5 - F.defining_poly()[1]) % 5);  // T + T^5 = -a1
}

TEST(TraceTest, Additive) {
    FqField F = FqField::build(3, 3);
    for (std::uint32_t a = 0; a < F.q(); ++a)
        for (std::uint32_t b = 0; b < F.q(); ++b)
            EXPECT_EQ(F.trace(F.add({a}, {b})), (F.trace({a}) + F.trace({b})) % 3);
}

TEST(CharEvalTest, Examples) {
    FqField F = FqField::build(7, 1);
    auto ctx = UnramifiedContext::make(F, 4);
    const auto one = ZqElement::from_int(1, ctx);
    for (std::uint32_t x = 1; x < 7; ++x) {
        EXPECT_EQ(char_eval_padic(F, {0}, {x}, ctx), one);
        EXPECT_EQ(char_eval_padic(F, {6}, {x}, ctx), one);
    }
    EXPECT_EQ(char_eval_padic(F, {3}, F.from_int(3), ctx), ZqElement::from_int(-1, ctx));
    EXPECT_THROW(char_eval_padic(F, {1}, F.zero(), ctx), error);
}

TEST(CharEvalTest, ReducesToGeneratorPowers) {
    for (auto [p, r] : small_fields) {
        FqField F = FqField::build(p, r);
        auto ctx = UnramifiedContext::make(F, 2);
        for (std::uint64_t m = 0; m < F.q() - 1; m += 5)
            for (std::uint64_t s = 0; s < F.q() - 1; s += 3)
                EXPECT_EQ(char_eval_padic(F, {m}, F.exp(s), ctx).reduce_code(), F.exp(m * s).code);
    }
}

// =============================================================================
// Orthogonality
// =============================================================================

TEST(OrthogonalityTest, TrivialCharacterAndIdentity) {
    FqField F = FqField::build(13, 1);
    EXPECT_EQ(character_sum_over_field(F, {0}), 12);
    EXPECT_EQ(character_sum_over_group(F, F.one()), 12);
    EXPECT_EQ(character_sum_over_field(F, {5}), 0);
    EXPECT_EQ(character_sum_over_group(F, F.from_int(2)), 0);
}

TEST(OrthogonalityTest, AllFieldsUpTo121) {
    for (std::uint32_t p = 3; p <= 121; ++p) {
        if (!is_prime(p)) continue;
        for (std::uint32_t r = 1, q = p; q <= 121; ++r, q *= p)
            EXPECT_TRUE(check_orthogonality(FqField::build(p, r))) << "q=" << q;
    }
}

TEST(OrthogonalityTest, RootSumRules) {
    EXPECT_EQ(exact_root_sum({3, 0, 0, 0}), 3);
    EXPECT_EQ(exact_root_sum({1, 1, 1, 1}), 0);
    EXPECT_EQ(exact_root_sum({1, 0, 1, 0}), 0);
    EXPECT_EQ(exact_root_sum({1, 1, 0, 0}), std::nullopt);  // 1 + i is not decided by the shift rule
}
