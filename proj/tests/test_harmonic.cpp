#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "drinfeld/harmonic.hpp"
#include "drinfeld/intlinalg.hpp"

using namespace drinfeld;

namespace {

ProjPoint pt(std::uint64_t p, int n, std::vector<std::uint64_t> v) { return ProjPoint(p, n, v); }

}  // namespace

TEST_CASE("slopes on the standard edge") {
    auto edge = standard_simplex(2, 1, {1, 1});
    CHECK(slope(IntVector{1, 0}, edge) == 0);
    CHECK(slope(IntVector{0, 1}, edge) == 1);
    CHECK(slope(IntVector{1, 1}, edge) == 0);
    CHECK(slope(IntVector{2, 1}, edge) == 1);
    CHECK(slope(IntVector{1, 4}, edge) == 0);
    CHECK_THROWS_AS(slope(IntVector{2, 4}, edge), DomainError);
    CHECK_THROWS_AS(slope(IntVector{1, 0}, standard_simplex(2, 1, {2})), DomainError);

    auto a = pt(2, 1, {1, 0}), b = pt(2, 1, {0, 1});
    CHECK(lambda_sigma(edge, a, b) == 1);
    CHECK(lambda_sigma(edge, b, a) == -1);
    CHECK(lambda_sigma(edge, a, a) == 0);
    CHECK(lambda_oracle(edge, a.lift(), b.lift()) == 1);
}

TEST_CASE("oracle agreement on the tree, radius 2") {
    for (std::uint64_t p : {2u, 3u}) {
        auto b = ball(Lattice::standard(p, 2), 2);
        auto pts = enumerate_points(1, p, 1);
        for (const auto& e : b.pointed_edges()) {
            EdgeSampler s(e);
            for (const auto& x : pts)
                for (const auto& y : pts) {
                    int l = lambda_sigma(e, x, y);
                    CHECK(l >= -1);
                    CHECK(l <= 1);
                    CHECK(l == -lambda_sigma(e, y, x));
                    CHECK(l == lambda_oracle(s, x.lift(), y.lift()));
                }
        }
    }
}

TEST_CASE("oracle agreement on standard edges in dimension two") {
    std::mt19937_64 rng(31);
    auto pts = enumerate_points(2, 2, 2);
    for (auto type : {SimplexType{1, 2}, SimplexType{2, 1}}) {
        auto e = standard_simplex(2, 2, type);
        EdgeSampler s(e);
        for (int t = 0; t < 20; ++t) {
            const auto& a = pts[rng() % pts.size()];
            const auto& b = pts[rng() % pts.size()];
            const auto& c = pts[rng() % pts.size()];
            int ab = lambda_oracle(s, a.lift(), b.lift());
            CHECK(ab == lambda_sigma(e, a, b));
            CHECK(lambda_oracle(s, a.lift(), c.lift()) == ab + lambda_oracle(s, b.lift(), c.lift()));
        }
    }
}

TEST_CASE("locality in the representative") {
    std::mt19937_64 rng(2);
    auto b = ball(Lattice::standard(3, 2), 2);
    for (const auto& e : b.pointed_edges()) {
        int depth = locality_depth(e);
        for (int t = 0; t < 10; ++t) {
            IntVector a{static_cast<std::int64_t>(rng() % 9), 1};
            std::swap(a[0], a[rng() % 2]);
            std::int64_t pn = static_cast<std::int64_t>(checked_pow(3, static_cast<unsigned>(depth)));
            IntVector moved{a[0] + pn * static_cast<std::int64_t>(rng() % 5), a[1] - pn * static_cast<std::int64_t>(rng() % 5)};
            CHECK(slope(a, e) == slope(moved, e));
        }
    }
}

TEST_CASE("pairing with distributions") {
    auto edge = standard_simplex(3, 1, {1, 1});
    auto a = pt(3, 1, {1, 0}), b = pt(3, 1, {1, 2});
    CHECK(pair_distribution(dirac_pair(a, b), edge) == lambda_sigma(edge, a, b));
    CHECK(pair_distribution(MassZeroVector(1, 3, 1), edge) == 0);

    // Refinement: the pairing of a compatible family does not depend on the level.
    auto bl = ball(Lattice::standard(2, 2), 1);
    auto edges = bl.pointed_edges();
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto fam = random_family(1, 2, 4, seed, 5);
        for (const auto& e : edges) {
            int depth = locality_depth(e);
            for (int n = depth; n < 4; ++n)
                CHECK(pair_distribution(fam.at(n), e) == pair_distribution(fam.at(n + 1), e));
        }
    }
    auto far = ball(Lattice::standard(2, 2), 2).pointed_edges();
    bool raised = false;
    for (const auto& e : far)
        if (locality_depth(e) > 1) {
            CHECK_THROWS_AS(pair_distribution(dirac_pair(pt(2, 1, {1, 0}), pt(2, 1, {0, 1})), e), DomainError);
            raised = true;
            break;
        }
    CHECK(raised);
}

TEST_CASE("flow condition on the tree") {
    auto a = pt(2, 1, {1, 0}), b = pt(2, 1, {0, 1});
    CHECK(check_kirchhoff(Lattice::standard(2, 2), a, b));
    CHECK(check_kirchhoff(Lattice::standard(2, 2), a, a));
    std::mt19937_64 rng(10);
    for (std::uint64_t p : {2u, 3u, 5u}) {
        auto bl = ball(Lattice::standard(p, 2), 3);
        auto pts = enumerate_points(1, p, 1);
        for (int t = 0; t < 100; ++t) {
            const auto& v = bl.vertices[rng() % bl.vertices.size()];
            CHECK(check_kirchhoff(v, pts[rng() % pts.size()], pts[rng() % pts.size()]));
        }
    }
    CHECK_THROWS_AS(check_kirchhoff(Lattice::standard(2, 3), pt(2, 1, {1, 0, 0}), pt(2, 1, {0, 1, 0})), DomainError);
}

TEST_CASE("cochain tables") {
    auto edges = ball(Lattice::standard(2, 2), 1).pointed_edges();
    auto t = cochain_table(edges, enumerate_points(1, 2, 1));
    CHECK(t.entries.size() == edges.size() * 9);
    CHECK(t.well_formed());
    t.entries[0].value = 2;
    CHECK_FALSE(t.well_formed());
}

TEST_CASE("lambda vectors span the level-one lattice") {
    auto pts = enumerate_points(1, 2, 1);
    BigMatrix rows;
    for (const auto& e : ball(Lattice::standard(2, 2), 2).pointed_edges()) {
        BigVector r;
        for (std::size_t j = 1; j < pts.size(); ++j)
            r.push_back(lambda_sigma(e, pts[j], pts[0]));
        rows.push_back(std::move(r));
    }
    auto snf = smith_normal_form(rows);
    CHECK(snf.rank() == static_cast<int>(pts.size()) - 1);
    CHECK(snf.unimodular());
    for (std::size_t j = 1; j < pts.size(); ++j) {
        BigVector unit(pts.size() - 1, 0);
        unit[j - 1] = 1;
        CHECK(in_row_span(rows, unit));
    }
}
