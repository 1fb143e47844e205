#include "drinfeld/harmonic.hpp"

#include <algorithm>
#include <map>

namespace drinfeld {

namespace {

void require_edge(const PointedSimplex& edge) {
    if (edge.k() != 1)
        throw DomainError("expected a pointed edge (k = 1)");
}

int field_degree_for(const PointedSimplex& edge) {
    const auto& t = edge.type();
    return *std::max_element(t.begin(), t.end());
}

}  // namespace

int slope(std::span<const std::int64_t> a, const PointedSimplex& edge) {
    require_edge(edge);
    const Lattice& M0 = edge.lattice(0);
    const std::uint64_t p = M0.p();
    if (std::all_of(a.begin(), a.end(), [p](std::int64_t x) { return x % static_cast<std::int64_t>(p) == 0; }))
        throw DomainError("dual vector is not primitive");
    // Smallest m with p^m a in M_0; then p^m a is not in p M_0.
    IntVector row(a.begin(), a.end());
    int m = M0.scale();
    while (!M0.contains(ScaledVector{row, m}))
        ++m;
    while (M0.contains(ScaledVector{row, m - 1}))
        --m;
    return edge.lattice(1).contains(ScaledVector{row, m}) ? 1 : 0;
}

int slope(const ProjPoint& a, const PointedSimplex& edge) { return slope(a.lift(), edge); }

int lambda_sigma(const PointedSimplex& edge, std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
    return slope(b, edge) - slope(a, edge);
}

int lambda_sigma(const PointedSimplex& edge, const ProjPoint& a, const ProjPoint& b) {
    return lambda_sigma(edge, a.lift(), b.lift());
}

EdgeSampler::EdgeSampler(const PointedSimplex& edge, int e_oracle)
    : edge_(edge), field_(FieldDesc{edge.p(), e_oracle, field_degree_for(edge), 12 * e_oracle}) {
    require_edge(edge);
    if (e_oracle < 3)
        throw DomainError("the oracle needs e >= 3 for two interior parameters");
    std::vector<int> h1{0, 1}, h2{0, e_oracle - 1};
    gap_ = e_oracle - 2;
    z1_ = tube_point(edge, field_, h1);
    z2_ = tube_point(edge, field_, h2);
    if (!member_tube(z1_, edge, TubeMode::open) || !member_tube(z2_, edge, TubeMode::open))
        throw Error("oracle sample point fell outside the open tube");
}

int EdgeSampler::slope_of(const FieldElem& at_z1, const FieldElem& at_z2) const {
    Valuation v1 = at_z1.valuation(), v2 = at_z2.valuation();
    if (!v1.exact() || !v2.exact())
        throw PrecisionError("oracle valuation not resolved at working precision");
    std::int64_t diff = v2.pi_units - v1.pi_units;
    if (diff % gap_ != 0)
        throw PrecisionError("non-integral valuation slope");
    return static_cast<int>(diff / gap_);
}

int EdgeSampler::slope(std::span<const std::int64_t> a) const {
    return slope_of(linear_form(a, z1_), linear_form(a, z2_));
}

int lambda_oracle(const EdgeSampler& sampler, std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
    const auto& z1 = sampler.z1();
    const auto& z2 = sampler.z2();
    FieldElem r1 = linear_form(b, z1) / linear_form(a, z1);
    FieldElem r2 = linear_form(b, z2) / linear_form(a, z2);
    return sampler.slope_of(r1, r2);
}

int lambda_oracle(const PointedSimplex& edge, std::span<const std::int64_t> a, std::span<const std::int64_t> b,
                  int e_oracle) {
    return lambda_oracle(EdgeSampler(edge, e_oracle), a, b);
}

Integer pair_distribution(const MassZeroVector& mu, const PointedSimplex& edge) {
    require_edge(edge);
    int depth = locality_depth(edge);
    if (mu.level() < depth)
        throw DomainError("distribution level " + std::to_string(mu.level()) + " is below the edge's locality depth " +
                          std::to_string(depth));
    Integer s = 0;
    for (const auto& [x, c] : mu.entries())
        s -= c * slope(x, edge);
    return s;
}

MassZeroVector section_lift(const MassZeroVector& mu, int level) {
    MassZeroVector::Entries e;
    for (const auto& [x, c] : mu.entries())
        e.emplace(lift_to(x, level), c);
    return MassZeroVector(mu.dim(), mu.p(), level, e);
}

bool check_kirchhoff(const Lattice& v, const ProjPoint& a, const ProjPoint& b) {
    if (v.size() != 2)
        throw DomainError("the flow condition is checked on the tree only (d = 1)");
    int sum = 0;
    for (const auto& w : neighbors(v)) {
        auto e = edge_between(v, w);
        if (!e)
            throw Error("neighbor is not adjacent");
        sum += lambda_sigma(*e, a, b);
    }
    return sum == 0;
}

bool CochainTable::well_formed() const {
    std::map<std::tuple<std::size_t, ProjPoint, ProjPoint>, int> value;
    for (const auto& c : entries) {
        if (c.value < -1 || c.value > 1)
            return false;
        value[{c.edge, c.a, c.b}] = c.value;
    }
    for (const auto& [key, v] : value) {
        auto it = value.find({std::get<0>(key), std::get<2>(key), std::get<1>(key)});
        if (it != value.end() && it->second != -v)
            return false;
    }
    return true;
}

CochainTable cochain_table(const std::vector<PointedSimplex>& edges, const std::vector<ProjPoint>& points) {
    CochainTable t{edges, {}};
    for (std::size_t i = 0; i < edges.size(); ++i) {
        std::vector<int> s;
        for (const auto& x : points)
            s.push_back(slope(x, edges[i]));
        for (std::size_t a = 0; a < points.size(); ++a)
            for (std::size_t b = 0; b < points.size(); ++b)
                t.entries.push_back({i, points[a], points[b], s[b] - s[a]});
    }
    return t;
}

}  // namespace drinfeld
