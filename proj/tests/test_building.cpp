#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "drinfeld/building.hpp"

using namespace drinfeld;

namespace {

IntMatrix random_gl(std::uint64_t p, int n, std::mt19937_64& rng) {
    return ModMatrix::random_invertible(p, 2, n, rng).to_int();
}

// dim M_i / p M_0 from the Smith form of the coordinate matrix of M_i in M_0.
int quotient_dim_by_snf(const Lattice& M0, const Lattice& Mi) {
    BigMatrix C;
    for (const auto& g : Mi.generators())
        C.push_back(*M0.coordinates(g));
    auto s = smith_normal_form(C);
    int n = M0.size(), with_p = 0;
    for (const auto& x : s.invariants)
        if (x % M0.p() == 0)
            ++with_p;
    return n - with_p;
}

}  // namespace

TEST_CASE("lattice normal form") {
    auto Z2 = Lattice::standard(3, 2);
    CHECK(Z2.scale() == 0);
    CHECK(Z2.basis() == identity_matrix(2));
    auto L = Lattice::from_generators(3, IntMatrix{{3, 6}, {0, 9}, {6, 3}});
    // span{(3,6),(0,9),(6,3)} = 3 * span{(1,2),(0,3),(2,1)} = 3 * span{(1,2),(0,3)}
    CHECK(L.scale() == 1);
    CHECK(L.basis() == IntMatrix{{1, 2}, {0, 3}});
    CHECK(L.volume() == 3);
    CHECK(L.contains(ScaledVector{{3, 6}, 0}));
    CHECK_FALSE(L.contains(ScaledVector{{3, 0}, 0}));
    CHECK(L.contains(ScaledVector{{1, 0}, 2}));
    // Unit rescaling of generators changes nothing.
    CHECK(Lattice::from_generators(3, IntMatrix{{2, 4}, {0, 3}}) == Lattice::from_generators(3, IntMatrix{{1, 2}, {0, 3}}));
    CHECK_THROWS_AS(Lattice::from_generators(3, IntMatrix{{1, 2}, {2, 4}}), DomainError);
}

TEST_CASE("homothety equality") {
    auto Z2 = Lattice::standard(2, 2);
    CHECK(homothety_equal(Z2, Z2.scaled(1)));
    CHECK_FALSE(homothety_equal(Z2, Lattice::from_generators(2, IntMatrix{{1, 0}, {0, 2}})));

    std::mt19937_64 rng(4);
    for (int t = 0; t < 200; ++t) {
        IntMatrix g{{static_cast<std::int64_t>(rng() % 9), static_cast<std::int64_t>(rng() % 9)},
                    {static_cast<std::int64_t>(rng() % 9), static_cast<std::int64_t>(rng() % 9)}};
        if (determinant(g) == 0)
            continue;
        auto s = smith_normal_form(BigMatrix{{g[0][0], g[0][1]}, {g[1][0], g[1][1]}});
        bool same = vp(s.invariants[0], 2) == vp(s.invariants[1], 2);
        CHECK(homothety_equal(Z2.times(g), Z2) == same);
    }
}

TEST_CASE("simplex types") {
    CHECK(standard_simplex(2, 1, {2}).type() == SimplexType{2});
    auto edge = standard_simplex(3, 1, {1, 1});
    CHECK(edge.lattice(1) == Lattice::from_generators(3, IntMatrix{{3, 0}, {0, 1}}));
    CHECK(edge.type() == SimplexType{1, 1});
    CHECK(standard_simplex(2, 2, {1, 1, 1}).type() == SimplexType{1, 1, 1});
    auto s21 = standard_simplex(2, 2, {2, 1});
    CHECK(s21.lattice(1) == Lattice::from_generators(2, IntMatrix{{2, 0, 0}, {0, 2, 0}, {0, 0, 1}}));

    // The chain written with the generators swapped is the other standard edge.
    auto other = PointedSimplex({Lattice::standard(3, 2), Lattice::from_generators(3, IntMatrix{{1, 0}, {0, 3}})});
    CHECK(other.type() == SimplexType{1, 1});

    CHECK_THROWS_AS(standard_simplex(2, 2, {2, 2}), DomainError);
    CHECK_THROWS_AS(PointedSimplex({Lattice::standard(2, 2), Lattice::standard(2, 2)}), DomainError);
    CHECK_THROWS_AS(PointedSimplex({Lattice::standard(2, 2), Lattice::standard(2, 2).scaled(1)}), DomainError);

    for (auto type : {SimplexType{1, 1, 1}, SimplexType{2, 1}, SimplexType{1, 2}, SimplexType{3}})
        for (std::uint64_t p : {2u, 3u}) {
            auto s = standard_simplex(p, 2, type);
            auto jumps = s.jumps();
            for (int i = 0; i <= s.k(); ++i)
                CHECK(quotient_dim_by_snf(s.lattice(0), s.lattice(i)) == 3 - jumps[static_cast<std::size_t>(i)]);
        }
}

TEST_CASE("adapted bases, rotation and the group action") {
    auto std_edge = standard_simplex(2, 1, {1, 1});
    auto f = adapted_basis(std_edge);
    CHECK(f.rows == identity_matrix(2));
    CHECK(is_adapted(std_edge, f));

    std::mt19937_64 rng(8);
    for (auto type : {SimplexType{1, 1}, SimplexType{2}, SimplexType{1, 1, 1}, SimplexType{1, 2}, SimplexType{2, 1}}) {
        int d = 0;
        for (int e : type)
            d += e;
        --d;
        for (std::uint64_t p : {2u, 3u}) {
            auto s = standard_simplex(p, d, type);
            for (int t = 0; t < 20; ++t) {
                auto g = random_gl(p, d + 1, rng);
                auto gs = act(g, s);
                CHECK(gs.type() == type);
                auto fb = adapted_basis(gs);
                CHECK(is_adapted(gs, fb));
                // The transported canonical basis is adapted too.
                Integer det = determinant(g);
                AdaptedBasis moved{adjugate(g), -vp(det, p)};
                CHECK(is_adapted(gs, moved));
                // Homothety of the whole chain keeps the type.
                std::vector<Lattice> c;
                for (const auto& M : gs.chain())
                    c.push_back(M.scaled(3));
                CHECK(PointedSimplex(c).type() == type);
            }
            // Rotating k+1 times returns the chain scaled by p.
            PointedSimplex r = s;
            for (int i = 0; i <= s.k(); ++i)
                r = rotate(r);
            for (int i = 0; i <= s.k(); ++i)
                CHECK(r.lattice(i) == s.lattice(i).scaled(1));
            auto once = rotate(s);
            SimplexType rt(type.begin() + 1, type.end());
            rt.push_back(type[0]);
            CHECK(once.type() == rt);
            CHECK(same_cell(once, s));
        }
    }
}

TEST_CASE("neighbors") {
    CHECK(neighbors(Lattice::standard(2, 2)).size() == 3);
    CHECK(neighbors(Lattice::standard(3, 2)).size() == 4);
    CHECK(neighbors(Lattice::standard(2, 3)).size() == 14);
    CHECK(neighbor_count(1, 2) == 3);
    CHECK(neighbor_count(2, 2) == 14);
    CHECK(neighbor_count(2, 3) == 26);
    for (std::uint64_t p : {2u, 3u}) {
        auto v = Lattice::standard(p, 3);
        auto nb = neighbors(v);
        CHECK(nb.size() == neighbor_count(2, p));
        std::set<std::string> keys;
        for (const auto& w : nb) {
            keys.insert(w.class_key());
            CHECK(v.contains(w));
            CHECK(w.contains(v.scaled(1)));
            auto e = edge_between(v, w);
            REQUIRE(e.has_value());
            CHECK(edge_between(w, v).has_value());
        }
        CHECK(keys.size() == nb.size());
    }
    auto Z2 = Lattice::standard(2, 2);
    CHECK_FALSE(edge_between(Z2, Lattice::from_generators(2, IntMatrix{{4, 0}, {0, 1}})).has_value());
    CHECK_FALSE(edge_between(Z2, Z2.scaled(2)).has_value());
}

TEST_CASE("balls in the tree") {
    CHECK(ball(Lattice::standard(2, 2), 0).vertices.size() == 1);
    CHECK(ball(Lattice::standard(2, 2), 2).vertices.size() == 10);
    CHECK(ball(Lattice::standard(3, 2), 2).vertices.size() == 17);
    for (std::uint64_t p : {2u, 3u})
        for (int r = 0; r <= 4; ++r) {
            auto b = ball(Lattice::standard(p, 2), r);
            std::uint64_t pr = checked_pow(p, static_cast<unsigned>(r));
            CHECK(b.vertices.size() == 1 + (p + 1) * (pr - 1) / (p - 1));
            CHECK(b.edges.size() + 1 == b.vertices.size());
            CHECK(bfs_parents_unique(b));
            for (const auto& e : b.pointed_edges())
                CHECK(e.type() == SimplexType{1, 1});
        }
    CHECK_THROWS_AS(ball(Lattice::standard(2, 3), 3), CapExceeded);
    // d = 2: not a tree.
    auto b2 = ball(Lattice::standard(2, 3), 1);
    CHECK(b2.vertices.size() == 15);
    CHECK_FALSE(bfs_parents_unique(b2));
}

TEST_CASE("every edge of a ball is conjugate to a standard edge") {
    for (int d : {1, 2}) {
        auto b = ball(Lattice::standard(2, d + 1), 2);
        int checked = 0;
        for (const auto& e : b.pointed_edges()) {
            auto f = adapted_basis(e);
            REQUIRE(is_adapted(e, f));
            auto s = standard_simplex(2, d, e.type());
            for (int i = 0; i <= e.k(); ++i)
                CHECK(s.lattice(i).times(f.rows).scaled(f.scale) == e.lattice(i));
            if (++checked > 400)
                break;
        }
    }
}

TEST_CASE("locality depth") {
    CHECK(locality_depth(standard_simplex(2, 1, {1, 1})) == 1);
    CHECK(locality_depth(standard_simplex(3, 2, {3})) == 1);
    auto v = Lattice::from_generators(2, IntMatrix{{4, 0}, {0, 1}});
    auto e = edge_between(v, neighbors(v)[0]);
    REQUIRE(e.has_value());
    CHECK(locality_depth(*e) == 3);
}
