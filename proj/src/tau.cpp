#include "drinfeld/tau.hpp"

#include <algorithm>
#include <limits>

namespace drinfeld {

namespace {

using ModVec = std::vector<std::uint64_t>;

// All nonzero vectors of F_p^n; `projective` keeps those whose first nonzero
// entry is 1.
std::vector<ModVec> nonzero_vectors(int n, std::uint64_t p, bool projective) {
    std::vector<ModVec> out;
    ModVec v(static_cast<std::size_t>(n), 0);
    while (true) {
        std::size_t t = 0;
        for (; t < v.size(); ++t) {
            if (++v[t] < p)
                break;
            v[t] = 0;
        }
        if (t == v.size())
            break;
        if (projective) {
            auto it = std::find_if(v.begin(), v.end(), [](std::uint64_t x) { return x != 0; });
            if (*it != 1)
                continue;
        }
        out.push_back(v);
    }
    return out;
}

ScaledVector lift(const ModVec& c, const Lattice& M) {
    const auto& B = M.basis();
    IntVector row(B[0].size(), 0);
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i])
            for (std::size_t j = 0; j < row.size(); ++j)
                row[j] += static_cast<std::int64_t>(c[i]) * B[i][j];
    return {row, M.scale()};
}

int elem_e(std::span<const FieldElem> z) { return z[0].desc().e; }

// Exact valuation in pi-units or PrecisionError.
std::int64_t exact_val(const FieldElem& x, const char* what) {
    Valuation v = x.valuation();
    if (!v.exact())
        throw PrecisionError(std::string("valuation of ") + what + " is not resolved at working precision");
    return v.pi_units;
}

std::vector<std::int64_t> cover_valuations(std::span<const FieldElem> z, int level, std::int64_t& lower_bound_min,
                                           bool& any_bounded) {
    const int d = static_cast<int>(z.size()) - 1;
    const std::uint64_t p = z[0].desc().p;
    std::vector<std::int64_t> vals;
    any_bounded = false;
    lower_bound_min = std::numeric_limits<std::int64_t>::max();
    for (const auto& H : enumerate_points(d, p, level)) {
        auto a = H.lift();
        Valuation v = pair(a, z).valuation();
        if (v.exact()) {
            vals.push_back(v.pi_units);
        } else {
            any_bounded = true;
            lower_bound_min = std::min(lower_bound_min, v.pi_units);
        }
    }
    return vals;
}

// max - min of v(l_a(z)) over H_level compared with `bound` (pi-units).
bool spread_below(std::span<const FieldElem> z, int level, std::int64_t bound, bool strict) {
    if (z.size() < 2)
        throw DomainError("points need at least two coordinates");
    std::int64_t lb;
    bool bounded;
    auto vals = cover_valuations(z, level, lb, bounded);
    if (vals.empty())
        throw PrecisionError("no hyperplane valuation is resolved at working precision");
    auto [mn, mx] = std::minmax_element(vals.begin(), vals.end());
    std::int64_t spread = *mx - *mn;
    bool ok = strict ? spread < bound : spread <= bound;
    if (!ok)
        return false;
    if (bounded) {
        std::int64_t gap = lb - *mn;
        if (strict ? gap >= bound : gap > bound)
            return false;
        throw PrecisionError("cover membership is ambiguous at working precision");
    }
    return true;
}

}  // namespace

FieldElem pair(const ScaledVector& a, std::span<const FieldElem> z) {
    return linear_form(a.row, z).shifted(static_cast<std::int64_t>(a.scale) * elem_e(z));
}

FieldElem pair(std::span<const std::int64_t> a, std::span<const FieldElem> z) { return linear_form(a, z); }

bool member_open_cover(std::span<const FieldElem> z, int n) {
    const auto& desc = z[0].desc();
    if (desc.N <= n * desc.e)
        throw PrecisionError("working precision must exceed n*e");
    return spread_below(z, n, static_cast<std::int64_t>(n) * desc.e, true);
}

bool member_closed_cover(std::span<const FieldElem> z, int n) {
    const auto& desc = z[0].desc();
    if (desc.N <= n * desc.e)
        throw PrecisionError("working precision must exceed n*e");
    return spread_below(z, n + 1, static_cast<std::int64_t>(n) * desc.e, false);
}

int certify_level(std::span<const FieldElem> z, int max_level) {
    for (int n = 1; n <= max_level; ++n)
        if (member_open_cover(z, n))
            return n;
    return 0;
}

SymmetricSpacePoint::SymmetricSpacePoint(std::span<const FieldElem> coords, int max_level)
    : coords_(normalize_unimodular(coords)) {
    level_ = certify_level(coords_, max_level);
}

std::map<std::string, Rational> BuildingPoint::vertex_weights() const {
    std::map<std::string, Rational> m;
    for (int i = 0; i <= simplex.k(); ++i)
        m[simplex.lattice(i).class_key()] += weights[static_cast<std::size_t>(i)];
    return m;
}

BuildingPoint tau(std::span<const FieldElem> zin) {
    auto z = normalize_unimodular(zin);
    const auto& desc = z[0].desc();
    const int n = static_cast<int>(z.size());
    const std::uint64_t p = desc.p;
    const std::int64_t e = desc.e;
    const auto all = nonzero_vectors(n, p, false);

    // Grow M until every a in M \ pM has v(<z,a>) < 1: M becomes the unit ball.
    Lattice M = Lattice::standard(p, n);
    for (int iter = 0;; ++iter) {
        if (iter > desc.N)
            throw PrecisionError("z is too close to a rational hyperplane for the working precision");
        std::vector<ModVec> w1;
        for (const auto& c : all) {
            Valuation v = pair(lift(c, M), z).valuation();
            if (v.pi_units >= e)
                w1.push_back(c);
            else if (!v.exact())
                throw PrecisionError("valuation below 1 is not resolved at working precision");
        }
        if (w1.empty())
            break;
        // The set must be a subspace: p^dim - 1 nonzero vectors.
        std::uint64_t size = 1;
        while (size - 1 < w1.size())
            size *= p;
        if (size - 1 != w1.size())
            throw Error("valuation-jump set is not a subspace");
        BigMatrix gens;
        for (const auto& r : M.basis()) {
            BigVector v(r.begin(), r.end());
            for (auto& x : v)
                x *= p;
            gens.push_back(std::move(v));
        }
        for (const auto& c : w1) {
            auto l = lift(c, M);
            gens.emplace_back(l.row.begin(), l.row.end());
        }
        M = Lattice::from_generators(p, gens, M.scale() - 1);
    }

    // t(a) on M/pM, all in [0, e).
    std::vector<std::pair<std::int64_t, ModVec>> t;
    for (const auto& c : all)
        t.emplace_back(exact_val(pair(lift(c, M), z), "a hyperplane form"), c);
    std::vector<std::int64_t> jumps;
    for (const auto& [v, c] : t)
        jumps.push_back(v);
    std::sort(jumps.begin(), jumps.end());
    jumps.erase(std::unique(jumps.begin(), jumps.end()), jumps.end());
    if (jumps.empty() || jumps[0] != 0 || jumps.back() >= e)
        throw Error("unit ball has inconsistent valuations");

    std::vector<Lattice> chain{M};
    for (std::size_t i = 1; i < jumps.size(); ++i) {
        std::vector<ModVec> w;
        for (const auto& [v, c] : t)
            if (v >= jumps[i])
                w.push_back(c);
        std::uint64_t size = 1;
        while (size - 1 < w.size())
            size *= p;
        if (size - 1 != w.size())
            throw Error("valuation-jump set is not a subspace");
        BigMatrix gens;
        for (const auto& r : M.basis()) {
            BigVector v(r.begin(), r.end());
            for (auto& x : v)
                x *= p;
            gens.push_back(std::move(v));
        }
        for (const auto& c : w) {
            auto l = lift(c, M);
            gens.emplace_back(l.row.begin(), l.row.end());
        }
        chain.push_back(Lattice::from_generators(p, gens, M.scale()));
    }
    BuildingPoint bp{PointedSimplex(std::move(chain)), {}};
    const std::size_t k = jumps.size() - 1;
    bp.weights.push_back(Rational(1) - Rational(jumps[k], e));
    for (std::size_t i = 1; i <= k; ++i)
        bp.weights.push_back(Rational(jumps[i] - jumps[i - 1], e));
    return bp;
}

bool member_tube(std::span<const FieldElem> z, const PointedSimplex& sigma, TubeMode mode) {
    const std::int64_t e = z[0].desc().e;
    const std::uint64_t p = sigma.p();
    if (static_cast<int>(z.size()) != sigma.dim() + 1)
        throw DomainError("point and simplex have different dimensions");
    auto f = adapted_basis(sigma);
    auto jumps = sigma.jumps();
    std::vector<std::int64_t> v;
    for (int i = 0; i <= sigma.k(); ++i)
        v.push_back(exact_val(pair(f.vector(jumps[static_cast<std::size_t>(i)]), z), "l_i"));
    const bool strict = mode == TubeMode::open;
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::int64_t next = i + 1 < v.size() ? v[i + 1] : v[0] + e;
        if (strict ? !(v[i] < next) : !(v[i] <= next))
            return false;
    }
    const int n = sigma.dim() + 1;
    const auto reps = nonzero_vectors(n, p, true);
    for (int i = 0; i <= sigma.k(); ++i) {
        const Lattice& Mi = sigma.lattice(i);
        const Lattice nxt = sigma.next(i);
        for (const auto& c : reps) {
            auto a = lift(c, Mi);
            if (nxt.contains(a))
                continue;
            Valuation w = pair(a, z).valuation();
            if (w.exact()) {
                if (w.pi_units != v[static_cast<std::size_t>(i)])
                    return false;
            } else if (w.pi_units > v[static_cast<std::size_t>(i)]) {
                return false;
            } else {
                throw PrecisionError("tube membership is ambiguous at working precision");
            }
        }
    }
    return true;
}

std::vector<FieldElem> tube_coordinates(std::span<const FieldElem> z, const PointedSimplex& sigma) {
    if (!member_tube(z, sigma, TubeMode::closed))
        throw DomainError("point is not in the closed tube over the simplex");
    Field L = z[0].field();
    auto f = adapted_basis(sigma);
    auto jumps = sigma.jumps();
    const int d = sigma.dim(), k = sigma.k();
    std::vector<FieldElem> l;
    for (int i = 0; i <= k; ++i)
        l.push_back(pair(f.vector(jumps[static_cast<std::size_t>(i)]), z));
    std::vector<FieldElem> X(static_cast<std::size_t>(d + 1));
    X[0] = L.from_int(static_cast<std::int64_t>(sigma.p())) * l[0] / l[static_cast<std::size_t>(k)];
    for (int j = 1; j <= d; ++j) {
        int i0 = 0;
        while (i0 + 1 <= k && jumps[static_cast<std::size_t>(i0 + 1)] < j)
            ++i0;
        X[static_cast<std::size_t>(j)] = pair(f.vector(j), z) / l[static_cast<std::size_t>(i0)];
    }
    FieldElem prod = L.one();
    for (int i = 0; i <= k; ++i)
        prod *= X[static_cast<std::size_t>(jumps[static_cast<std::size_t>(i)])];
    if (!prod.congruent(L.from_int(static_cast<std::int64_t>(sigma.p()))))
        throw Error("tube coordinates: product relation fails");
    for (const auto& x : X)
        if (x.valuation().pi_units < 0)
            throw Error("tube coordinates: coordinate outside the unit disc");
    return X;
}

std::vector<FieldElem> act_point(const IntMatrix& g, std::span<const FieldElem> z) {
    if (g.size() != z.size())
        throw DomainError("matrix and point have different dimensions");
    std::vector<FieldElem> out;
    for (const auto& row : g)
        out.push_back(linear_form(row, z));
    return out;
}

std::vector<FieldElem> tube_point(const PointedSimplex& sigma, const Field& L, std::span<const int> heights,
                                  std::mt19937_64* rng) {
    const int k = sigma.k(), n = sigma.dim() + 1;
    if (static_cast<int>(heights.size()) != k + 1)
        throw DomainError("need one height per chain member");
    if (heights[0] != 0)
        throw DomainError("heights must start at 0");
    for (int i = 0; i < k; ++i)
        if (heights[static_cast<std::size_t>(i)] >= heights[static_cast<std::size_t>(i + 1)])
            throw DomainError("heights must increase strictly");
    if (heights[static_cast<std::size_t>(k)] >= L.e())
        throw DomainError("heights must stay below e");
    for (int ei : sigma.type())
        if (ei > L.f())
            throw DomainError("residue degree f is too small for a block of size " + std::to_string(ei));
    if (L.p() != sigma.p())
        throw DomainError("field and simplex use different primes");

    auto f = adapted_basis(sigma);
    auto jumps = sigma.jumps();
    jumps.push_back(n);
    std::vector<FieldElem> w;
    const FieldElem om = L.omega();
    const std::uint64_t bound = checked_pow(L.p(), 3);
    for (int i = 0; i <= k; ++i)
        for (int j = jumps[static_cast<std::size_t>(i)]; j < jumps[static_cast<std::size_t>(i + 1)]; ++j) {
            FieldElem x = om.pow(j - jumps[static_cast<std::size_t>(i)]).shifted(heights[static_cast<std::size_t>(i)]);
            if (rng) {
                std::vector<Integer> c(static_cast<std::size_t>(L.degree()));
                for (auto& y : c)
                    y = static_cast<std::int64_t>((*rng)() % bound);
                x *= L.one() + L.from_coefficients(c).shifted(1);
            }
            w.push_back(std::move(x));
        }
    // z = F^{-1} w up to a scalar, F having rows f_j.
    IntMatrix adj = adjugate(f.rows);
    std::vector<FieldElem> z;
    for (const auto& row : adj)
        z.push_back(linear_form(row, w));
    return normalize_unimodular(z);
}

std::vector<PointedSimplex> candidate_cells(const PointedSimplex& sigma) {
    std::vector<PointedSimplex> out;
    const int k = sigma.k();
    for (unsigned mask = 1; mask < (1u << (k + 1)); ++mask) {
        std::vector<Lattice> c;
        for (int i = 0; i <= k; ++i)
            if (mask & (1u << i))
                c.push_back(sigma.lattice(i));
        out.emplace_back(std::move(c));
    }
    const Lattice& M0 = sigma.lattice(0);
    for (const auto& w : neighbors(M0)) {
        out.emplace_back(std::vector<Lattice>{w});
        if (auto e = edge_between(M0, w))
            out.push_back(*e);
    }
    return out;
}

std::vector<int> random_heights(int k, int e, std::mt19937_64& rng) {
    if (k >= e)
        throw DomainError("need e > k to place k interior jumps");
    std::vector<int> pool;
    for (int m = 1; m < e; ++m)
        pool.push_back(m);
    for (std::size_t i = pool.size(); i > 1; --i)
        std::swap(pool[i - 1], pool[rng() % i]);
    std::vector<int> h(pool.begin(), pool.begin() + k);
    std::sort(h.begin(), h.end());
    h.insert(h.begin(), 0);
    return h;
}

}  // namespace drinfeld
