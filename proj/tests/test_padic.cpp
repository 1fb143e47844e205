#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "drinfeld/padic.hpp"

using namespace drinfeld;

namespace {

FieldElem random_elem(const Field& F, std::mt19937_64& rng, int max_shift) {
    std::vector<Integer> c(static_cast<std::size_t>(F.degree()));
    std::uint64_t bound = checked_pow(F.p(), 4);
    for (auto& x : c)
        x = static_cast<std::int64_t>(rng() % bound);
    FieldElem x = F.from_coefficients(c);
    return x.shifted(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(max_shift + 1)));
}

// Brute-force inverse modulo m.
std::uint64_t brute_inverse(std::uint64_t a, std::uint64_t m) {
    for (std::uint64_t x = 0; x < m; ++x)
        if (a * x % m == 1)
            return x;
    return m;
}

}  // namespace

TEST_CASE("integer arithmetic mod p^N") {
    Field F({3, 1, 1, 4});
    auto x = F.from_int(5) * F.from_int(5);
    CHECK(x.coefficients()[0] == 25);

    Field G({3, 1, 1, 3});
    auto half = G.one() / G.from_int(2);
    CHECK(brute_inverse(2, 27) == 14);
    CHECK(half.coefficients()[0] == 14);
}

TEST_CASE("Eisenstein relation pi^2 = p") {
    Field F({2, 2, 1, 6});
    auto x = F.pi() * F.pi();
    auto c = x.coefficients();
    CHECK(c[0] == 2);
    CHECK(c[1] == 0);
    CHECK(x.congruent(F.from_int(2)));
}

TEST_CASE("valuations") {
    Field F({3, 1, 1, 3});
    CHECK(F.from_int(3).valuation().value() == Rational(1));
    CHECK(F.from_int(18).valuation().value() == Rational(2));
    Field E({5, 2, 1, 10});
    CHECK(E.pi().valuation().value() == Rational(1, 2));
    CHECK(E.from_int(5).valuation().value() == Rational(1));
    CHECK(E.zero().valuation().bounded_below);
}

TEST_CASE("mismatched fields and zero division are errors") {
    Field F({3, 1, 1, 5});
    Field G({5, 1, 1, 5});
    CHECK_THROWS_AS(F.one() + G.one(), DomainError);
    CHECK_THROWS_AS(F.one() / F.zero(), PrecisionError);
    // 3^5 vanishes at precision 5.
    auto tiny = F.from_int(243) - F.from_int(243);
    CHECK(tiny.is_zero_at_precision());
    CHECK_THROWS_AS(F.one() / tiny, PrecisionError);
    CHECK_THROWS_AS(Field({4, 1, 1, 5}), DomainError);
}

TEST_CASE("ramified multiplication agrees with an independent lift computation") {
    // (a + b pi)(c + d pi) = (ac + bd p) + (ad + bc) pi over Z, truncated.
    Field F({3, 2, 1, 12});
    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
        std::int64_t a = static_cast<std::int64_t>(rng() % 500), b = static_cast<std::int64_t>(rng() % 500);
        std::int64_t c = static_cast<std::int64_t>(rng() % 500), d = static_cast<std::int64_t>(rng() % 500);
        std::vector<Integer> xa{a, b}, xc{c, d};
        auto x = F.from_coefficients(xa) * F.from_coefficients(xc);
        std::vector<Integer> expect{a * c + b * d * 3, a * d + b * c};
        auto y = F.from_coefficients(expect);
        CHECK(x.congruent(y));
    }
}

TEST_CASE("unramified quadratic arithmetic agrees with an independent lift computation") {
    Field F({3, 1, 2, 8});
    auto g = F.residue_polynomial();  // omega^2 = -g1 omega - g0
    REQUIRE(g.size() == 2);
    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
        std::int64_t a = static_cast<std::int64_t>(rng() % 300), b = static_cast<std::int64_t>(rng() % 300);
        std::int64_t c = static_cast<std::int64_t>(rng() % 300), d = static_cast<std::int64_t>(rng() % 300);
        std::vector<Integer> xa{a, b}, xc{c, d};
        auto x = F.from_coefficients(xa) * F.from_coefficients(xc);
        auto g0 = static_cast<std::int64_t>(g[0]), g1 = static_cast<std::int64_t>(g[1]);
        std::int64_t bd = b * d;
        std::vector<Integer> expect{a * c - bd * g0, a * d + b * c - bd * g1};
        CHECK(x.congruent(F.from_coefficients(expect)));
    }
}

TEST_CASE("inverse round-trips in mixed extensions") {
    for (FieldDesc desc : {FieldDesc{2, 3, 2, 30}, FieldDesc{3, 2, 3, 24}, FieldDesc{5, 4, 1, 20}}) {
        Field F(desc);
        std::mt19937_64 rng(desc.p * 13 + static_cast<std::uint64_t>(desc.e));
        for (int t = 0; t < 100; ++t) {
            auto x = random_elem(F, rng, 5);
            if (x.is_zero_at_precision())
                continue;
            auto y = x * x.inverse();
            CHECK(y.congruent(F.one()));
        }
    }
}

TEST_CASE("valuation is multiplicative and ultrametric") {
    Field F({2, 3, 2, 36});
    std::mt19937_64 rng(2024);
    int checked = 0;
    for (int t = 0; t < 1000; ++t) {
        auto x = random_elem(F, rng, 6);
        auto y = random_elem(F, rng, 6);
        auto vx = x.valuation(), vy = y.valuation();
        if (!vx.exact() || !vy.exact())
            continue;
        auto vxy = (x * y).valuation();
        REQUIRE(vxy.exact());
        CHECK(vxy.pi_units == vx.pi_units + vy.pi_units);
        auto s = (x + y).valuation();
        CHECK(s.pi_units >= std::min(vx.pi_units, vy.pi_units));
        if (vx.pi_units != vy.pi_units) {
            CHECK(s.exact());
            CHECK(s.pi_units == std::min(vx.pi_units, vy.pi_units));
        }
        ++checked;
    }
    CHECK(checked > 900);
}

TEST_CASE("precision loss is tracked through cancellation") {
    Field F({3, 1, 1, 10});
    auto x = F.one() + F.from_int(81);
    auto d = x - F.one();
    CHECK(d.valuation().pi_units == 4);
    CHECK(d.relative_precision() == 6);
    auto q = F.one() / d;
    CHECK(q.valuation().pi_units == -4);
}

TEST_CASE("normalize_unimodular") {
    Field F({2, 1, 1, 10});
    std::vector<FieldElem> v{F.from_int(2), F.from_int(4), F.from_int(6)};
    auto n = normalize_unimodular(v);
    CHECK(n[0].congruent(F.one()));
    CHECK(n[1].congruent(F.from_int(2)));
    CHECK(n[2].congruent(F.from_int(3)));

    std::vector<FieldElem> zero{F.zero(), F.zero()};
    CHECK_THROWS_AS(normalize_unimodular(zero), DomainError);

    // Constant on L^*-orbits, idempotent.
    Field L({3, 2, 2, 20});
    std::mt19937_64 rng(5);
    for (int t = 0; t < 50; ++t) {
        std::vector<FieldElem> w;
        for (int i = 0; i < 3; ++i)
            w.push_back(random_elem(L, rng, 3));
        auto base = normalize_unimodular(w);
        auto again = normalize_unimodular(base);
        auto lambda = random_elem(L, rng, 0) + L.one();  // almost surely nonzero
        if (lambda.is_zero_at_precision())
            continue;
        lambda = lambda.shifted(static_cast<std::int64_t>(rng() % 4) - 2);
        std::vector<FieldElem> scaled;
        for (auto& x : w)
            scaled.push_back(x * lambda);
        auto other = normalize_unimodular(scaled);
        for (int i = 0; i < 3; ++i) {
            CHECK(base[static_cast<std::size_t>(i)].congruent(again[static_cast<std::size_t>(i)]));
            CHECK(base[static_cast<std::size_t>(i)].congruent(other[static_cast<std::size_t>(i)]));
        }
    }
}

TEST_CASE("ramified units: p / pi^e is a unit congruent to 1") {
    Field F({3, 4, 1, 20});
    auto u = F.from_int(3) / F.pi().pow(4);
    CHECK(u.is_unit());
    CHECK(u.congruent(F.one()));
}
