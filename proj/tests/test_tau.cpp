#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "drinfeld/tau.hpp"

using namespace drinfeld;

namespace {

std::vector<FieldElem> vec(std::initializer_list<FieldElem> xs) { return std::vector<FieldElem>(xs); }

std::vector<FieldElem> random_coords(const Field& L, int n, std::mt19937_64& rng) {
    std::vector<FieldElem> z;
    for (int i = 0; i < n; ++i) {
        std::vector<Integer> c(static_cast<std::size_t>(L.degree()));
        for (auto& x : c)
            x = static_cast<std::int64_t>(rng() % 50);
        z.push_back(L.from_coefficients(c).shifted(static_cast<std::int64_t>(rng() % 5)));
    }
    return z;
}

IntMatrix random_gl(std::uint64_t p, int n, std::mt19937_64& rng) {
    return ModMatrix::random_invertible(p, 3, n, rng).to_int();
}

// Moves the standard simplex somewhere else in the building.
PointedSimplex random_simplex(std::uint64_t p, int d, const SimplexType& type, std::mt19937_64& rng) {
    IntMatrix g = random_gl(p, d + 1, rng);
    for (int i = 0; i <= d; ++i) {
        auto s = static_cast<std::int64_t>(checked_pow(p, static_cast<unsigned>(rng() % 3)));
        for (auto& x : g[static_cast<std::size_t>(i)])
            x *= s;
    }
    return act(g, standard_simplex(p, d, type));
}

}  // namespace

TEST_CASE("tau on the basic examples") {
    Field L({2, 2, 1, 20});
    auto bp = tau(vec({L.one(), L.pi()}));
    CHECK(same_cell(bp.simplex, standard_simplex(2, 1, {1, 1})));
    CHECK(bp.simplex == standard_simplex(2, 1, {1, 1}));
    CHECK(bp.weights == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});

    Field U({3, 1, 2, 10});
    auto bv = tau(vec({U.one(), U.omega()}));
    CHECK(bv.simplex.k() == 0);
    CHECK(homothety_equal(bv.simplex.lattice(0), Lattice::standard(3, 2)));
    CHECK(bv.weights == std::vector<Rational>{Rational(1)});
}

TEST_CASE("open and closed covers") {
    Field L({2, 2, 1, 20});
    CHECK(member_open_cover(vec({L.one(), L.pi()}), 1));
    CHECK_FALSE(member_open_cover(vec({L.one(), L.pi().pow(3)}), 1));
    CHECK(member_open_cover(vec({L.one(), L.pi().pow(3)}), 2));
    CHECK_THROWS_AS(member_open_cover(vec({L.one(), L.pi()}), 10), PrecisionError);

    Field M({2, 2, 2, 30});
    std::mt19937_64 rng(12);
    int tested = 0;
    for (int t = 0; t < 100; ++t) {
        auto z = random_coords(M, 2 + static_cast<int>(t % 2), rng);
        try {
            for (int n = 1; n <= 3; ++n) {
                bool o = member_open_cover(z, n), c = member_closed_cover(z, n), o1 = member_open_cover(z, n + 1);
                CHECK((!o || c));
                CHECK((!c || o1));
            }
            ++tested;
        } catch (const PrecisionError&) {
        }
    }
    CHECK(tested > 50);
}

TEST_CASE("tubes") {
    Field L({2, 2, 1, 20});
    auto edge = standard_simplex(2, 1, {1, 1});
    auto z = vec({L.one(), L.pi()});
    CHECK(member_tube(z, edge, TubeMode::open));
    auto X = tube_coordinates(z, edge);
    CHECK(X[0].valuation().value() == Rational(1, 2));
    CHECK(X[1].valuation().value() == Rational(1, 2));
    CHECK((X[0] * X[1]).congruent(L.from_int(2)));

    Field U({3, 1, 2, 10});
    auto w = vec({U.one(), U.omega()});
    auto edge3 = standard_simplex(3, 1, {1, 1});
    CHECK_FALSE(member_tube(w, edge3, TubeMode::open));
    CHECK(member_tube(w, standard_simplex(3, 1, {2}), TubeMode::open));
    auto Xv = tube_coordinates(w, standard_simplex(3, 1, {2}));
    CHECK(Xv[0].congruent(U.from_int(3)));
    CHECK(Xv[1].valuation().pi_units == 0);
}

TEST_CASE("tau agrees with tube membership on constructed points") {
    struct Config {
        FieldDesc desc;
        int d;
        std::vector<SimplexType> types;
    };
    std::vector<Config> configs{
        {{2, 2, 2, 40}, 1, {{1, 1}, {2}}},
        {{3, 3, 2, 48}, 1, {{1, 1}, {2}}},
        {{2, 3, 3, 48}, 2, {{1, 1, 1}, {1, 2}, {2, 1}, {3}}},
        {{3, 2, 2, 40}, 2, {{1, 2}, {2, 1}}},
    };
    std::mt19937_64 rng(2718);
    for (const auto& cfg : configs) {
        Field L(cfg.desc);
        for (int t = 0; t < 25; ++t) {
            const auto& type = cfg.types[rng() % cfg.types.size()];
            auto sigma = random_simplex(cfg.desc.p, cfg.d, type, rng);
            auto h = random_heights(sigma.k(), L.e(), rng);
            auto z = tube_point(sigma, L, h, &rng);
            auto bp = tau(z);
            REQUIRE(same_cell(bp.simplex, sigma));
            // Weights follow from the heights: t_0 = 1 - m_k/e, t_i = (m_i - m_{i-1})/e.
            std::map<std::string, Rational> expect;
            expect[sigma.lattice(0).class_key()] = Rational(1) - Rational(h.back(), L.e());
            for (int i = 1; i <= sigma.k(); ++i)
                expect[sigma.lattice(i).class_key()] =
                    Rational(h[static_cast<std::size_t>(i)] - h[static_cast<std::size_t>(i - 1)], L.e());
            CHECK(bp.vertex_weights() == expect);
            CHECK(member_tube(z, sigma, TubeMode::open));
            CHECK(member_tube(z, rotate(sigma), TubeMode::open));
            for (const auto& other : candidate_cells(sigma))
                if (!same_cell(other, sigma))
                    CHECK_FALSE(member_tube(z, other, TubeMode::open));
            auto X = tube_coordinates(z, sigma);
            auto jumps = sigma.jumps();
            FieldElem prod = L.one();
            for (int j : jumps)
                prod *= X[static_cast<std::size_t>(j)];
            CHECK(prod.congruent(L.from_int(static_cast<std::int64_t>(cfg.desc.p))));
            for (int j = 1; j <= cfg.d; ++j) {
                bool starts_block = std::find(jumps.begin(), jumps.end(), j) != jumps.end();
                CHECK(X[static_cast<std::size_t>(j)].valuation().pi_units >= 0);
                if (!starts_block)
                    CHECK(X[static_cast<std::size_t>(j)].valuation().pi_units == 0);
            }
            // Projective invariance.
            FieldElem lambda = L.from_int(7).shifted(static_cast<std::int64_t>(rng() % 4));
            std::vector<FieldElem> scaled;
            for (auto& x : z)
                scaled.push_back(x * lambda);
            CHECK(tau(scaled).vertex_weights() == bp.vertex_weights());
            // Equivariance.
            auto g = random_gl(cfg.desc.p, cfg.d + 1, rng);
            auto moved = tau(act_point(g, z));
            BuildingPoint expected{act(g, bp.simplex), bp.weights};
            CHECK(moved.vertex_weights() == expected.vertex_weights());
        }
    }
}

TEST_CASE("certified level") {
    Field L({2, 2, 1, 20});
    auto z = vec({L.one(), L.pi()});
    CHECK(SymmetricSpacePoint(z).certified_level() == 1);
    CHECK(SymmetricSpacePoint(vec({L.one(), L.pi().pow(3)})).certified_level() == 2);
    CHECK_THROWS_AS(tube_point(standard_simplex(2, 1, {2}), L, std::vector<int>{0}), DomainError);
}
