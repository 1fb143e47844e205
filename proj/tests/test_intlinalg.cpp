#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "drinfeld/intlinalg.hpp"

using namespace drinfeld;

namespace {

BigMatrix big(std::vector<std::vector<long>> m) {
    BigMatrix out;
    for (auto& r : m) {
        BigVector row;
        for (auto x : r)
            row.emplace_back(x);
        out.push_back(row);
    }
    return out;
}

// det by cofactor expansion, independent of the elimination code.
Integer cofactor_det(const BigMatrix& m) {
    if (m.size() == 1)
        return m[0][0];
    Integer s = 0;
    for (std::size_t j = 0; j < m.size(); ++j) {
        BigMatrix minor;
        for (std::size_t i = 1; i < m.size(); ++i) {
            BigVector r;
            for (std::size_t c = 0; c < m.size(); ++c)
                if (c != j)
                    r.push_back(m[i][c]);
            minor.push_back(r);
        }
        Integer t = m[0][j] * cofactor_det(minor);
        s += (j % 2) ? -t : t;
    }
    return s;
}

}  // namespace

TEST_CASE("smith normal form of known matrices") {
    auto s = smith_normal_form(big({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}));
    REQUIRE(s.rank() == 3);
    CHECK(s.invariants[0] == 2);
    CHECK(s.invariants[1] == 6);
    CHECK(s.invariants[2] == 12);
    CHECK(integer_rank(big({{1, 2}, {2, 4}})) == 1);
    CHECK(integer_rank(big({{0, 0}, {0, 0}})) == 0);
    CHECK(smith_normal_form(big({{1, 0}, {0, 1}, {1, 1}})).unimodular());
    CHECK_FALSE(smith_normal_form(big({{2, 0}, {0, 1}})).unimodular());
}

TEST_CASE("invariant factors multiply to |det| and divide each other") {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 200; ++t) {
        BigMatrix m(3, BigVector(3));
        for (auto& r : m)
            for (auto& x : r)
                x = static_cast<long>(rng() % 21) - 10;
        auto s = smith_normal_form(m);
        Integer det = cofactor_det(m);
        if (det == 0) {
            CHECK(s.rank() < 3);
            continue;
        }
        REQUIRE(s.rank() == 3);
        CHECK(s.invariants[0] * s.invariants[1] * s.invariants[2] == abs(det));
        CHECK(s.invariants[1] % s.invariants[0] == 0);
        CHECK(s.invariants[2] % s.invariants[1] == 0);
    }
}

TEST_CASE("row span membership") {
    auto m = big({{2, 0}, {0, 3}});
    CHECK(in_row_span(m, {4, 9}));
    CHECK_FALSE(in_row_span(m, {1, 0}));
    auto h = hermite_normal_form(big({{4, 6}, {2, 3}, {0, 5}}));
    CHECK(h.size() == 2);
    CHECK(in_row_span(h, {2, 3}));
    CHECK(in_row_span(h, {0, 5}));
    CHECK_FALSE(in_row_span(h, {0, 1}));
}
