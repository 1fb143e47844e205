#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "drinfeld/alpha.hpp"

using namespace drinfeld;

namespace {

ProjPoint pt(std::uint64_t p, int n, std::vector<std::uint64_t> v) { return ProjPoint(p, n, v); }

std::vector<FieldElem> vec(std::initializer_list<FieldElem> xs) { return std::vector<FieldElem>(xs); }

// Direct product of linear forms, written out without the library's bookkeeping.
FieldElem naive_ratio(const IntVector& a, const IntVector& b, const std::vector<FieldElem>& z) {
    FieldElem la = z[0].field().zero(), lb = la;
    for (std::size_t j = 0; j < z.size(); ++j) {
        la += z[j] * z[0].field().from_int(a[j]);
        lb += z[j] * z[0].field().from_int(b[j]);
    }
    return la / lb;
}

}  // namespace

TEST_CASE("products from distributions") {
    auto a = pt(2, 2, {1, 3}), b = pt(2, 2, {2, 1}), c = pt(2, 2, {0, 1});
    auto u = alpha_level(dirac_pair(a, b));
    CHECK(u.exponents().size() == 2);
    CHECK(u.exponents().at(a) == 1);
    CHECK(u.exponents().at(b) == -1);
    CHECK(alpha_level(MassZeroVector(1, 2, 2)).is_empty());
    auto uv = alpha_level(dirac_pair(a, b) + dirac_pair(b, c));
    CHECK(uv.exponents() == (u * alpha_level(dirac_pair(b, c))).exponents());
    CHECK_THROWS_AS(FormalProduct(1, 2, 2, {{a, 1}}), DomainError);
    CHECK_THROWS_AS(u * alpha_level(dirac_pair(pt(2, 1, {1, 0}), pt(2, 1, {0, 1}))), DomainError);
}

TEST_CASE("evaluation") {
    Field L({2, 2, 1, 24});
    SymmetricSpacePoint z(vec({L.one(), L.pi()}));
    REQUIRE(z.certified_level() == 1);
    auto a = pt(2, 2, {1, 0}), b = pt(2, 2, {0, 1}), c = pt(2, 2, {1, 1});

    auto v = evaluate_product(alpha_level(dirac_pair(a, b)), z);
    CHECK(v.valuation().value() == Rational(-1, 2));
    CHECK(v.congruent(naive_ratio({1, 0}, {0, 1}, z.coords())));
    CHECK(evaluate_product(alpha_level(dirac_pair(a, a)), z).congruent(L.one()));

    // Degree 0: rescaling the coordinates changes nothing.
    auto w = evaluate_product(alpha_level(dirac_pair(a, c)), z);
    CHECK(w.valuation().pi_units == 0);
    FieldElem lambda = L.from_int(5).shifted(3);
    auto scaled = evaluate_raw(alpha_level(dirac_pair(a, c)), vec({lambda, L.pi() * lambda}));
    CHECK(scaled.congruent(w));

    // Cocycle identity, exactly.
    auto ab = evaluate_product(alpha_level(dirac_pair(a, b)), z);
    auto bc = evaluate_product(alpha_level(dirac_pair(b, c)), z);
    auto ac = evaluate_product(alpha_level(dirac_pair(a, c)), z);
    CHECK((ab * bc).congruent(ac));

    // Basepoint independence: the value is literally unchanged for mass zero.
    auto mu = dirac_pair(a, b) + dirac_pair(c, b);
    auto u = alpha_level(mu);
    CHECK(evaluate_product(u, z).congruent(evaluate_product(u.with_basepoint(c), z)));

    // Uncertified: the level-1 product cannot be evaluated on the level-1 cover.
    CHECK_THROWS_AS(evaluate_product(alpha_level(dirac_pair(pt(2, 1, {1, 0}), pt(2, 1, {0, 1}))), z), DomainError);
}

TEST_CASE("residues along edges") {
    auto edge = standard_simplex(2, 1, {1, 1});
    auto a = pt(2, 1, {1, 0}), b = pt(2, 1, {0, 1});
    auto u = alpha_level(dirac_pair(a, b));
    EdgeSampler s(edge);
    // The measured residue pins the global sign.
    CHECK(dlog_residue_oracle(u, s) == -1);
    CHECK(dlog_residue(u, edge) == -1);
    CHECK(dlog_residue(u, edge) == kResidueSign * pair_distribution(dirac_pair(a, b), edge));
    CHECK(dlog_residue(alpha_level(MassZeroVector(1, 2, 1)), edge) == 0);

    for (std::uint64_t p : {2u, 3u}) {
        auto pts = enumerate_points(1, p, 1);
        for (const auto& e : ball(Lattice::standard(p, 2), 2).pointed_edges()) {
            int depth = std::max(1, locality_depth(e));
            EdgeSampler se(e);
            for (std::size_t j = 1; j < pts.size(); ++j) {
                auto mu = section_lift(dirac_pair(pts[j], pts[0]), depth);
                auto w = alpha_level(mu);
                CHECK(dlog_residue(w, e) == kResidueSign * pair_distribution(mu, e));
                CHECK(dlog_residue(w, e) == dlog_residue_oracle(w, se));
            }
        }
    }
}

TEST_CASE("convergence certificates") {
    Field L({2, 2, 1, 40});
    SymmetricSpacePoint z1(vec({L.one(), L.pi()})), z2(vec({L.one(), L.pi() + L.pi().pow(3)}));
    REQUIRE(z1.certified_level() == 1);
    REQUIRE(z2.certified_level() == 1);

    // Small representatives coincide at every level: the formal ratio is empty.
    auto top = dirac_pair(pt(2, 3, {1, 0}), pt(2, 3, {0, 1}));
    auto single = convergence_certificate(DistributionFamily::from_top(top), z1, z2, 1, 2, 3);
    CHECK(single.margin.infinite);
    CHECK(single.pass);

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto fam = random_family(1, 2, 3, seed, 4);
        for (RepSystem r : {RepSystem::standard, RepSystem::mirrored}) {
            auto c = convergence_certificate(fam, z1, z2, 1, 2, 3, r);
            CHECK(c.pass);
            CHECK(c.threshold == 1);
        }
        CHECK(restriction_certificate(fam, z1, z2, 1, 2).pass);
    }
    CHECK_THROWS_AS(convergence_certificate(random_family(1, 2, 3, 0, 2), z1, z2, 2, 2, 3), DomainError);
}

TEST_CASE("a wrong product fails the certificate") {
    // l_(0,1)/l_(1,0) against the empty product: not a 1-unit up to constants.
    Field L({2, 2, 1, 40});
    SymmetricSpacePoint z1(vec({L.one(), L.pi()})), z2(vec({L.one(), L.pi() + L.one()}));
    auto m = two_point_margin({{IntVector{0, 1}, 1}, {IntVector{1, 0}, -1}}, {}, z1, z2);
    CHECK_FALSE(m.infinite);
    CHECK_FALSE(m.at_least(1));
}

TEST_CASE("equivariance") {
    Field L({2, 2, 1, 40});
    SymmetricSpacePoint z1(vec({L.one(), L.pi()})), z2(vec({L.one(), L.pi() + L.pi().pow(3)}));
    auto mu = dirac_pair(pt(2, 2, {1, 3}), pt(2, 2, {0, 1})) + dirac_pair(pt(2, 2, {1, 2}), pt(2, 2, {1, 1}));

    auto id = equivariance_certificate(identity_matrix(2), mu, z1, z2);
    CHECK(id.margin.infinite);
    auto diag = equivariance_certificate({{3, 0}, {0, 5}}, mu, z1, z2);
    CHECK(diag.pass);

    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        auto g = ModMatrix::random_invertible(2, 4, 2, rng).to_int();
        auto fam = random_family(1, 2, 2, rng(), 3);
        auto c = equivariance_certificate(g, fam.at(2), z1, z2);
        CHECK(c.pass);
    }
}
