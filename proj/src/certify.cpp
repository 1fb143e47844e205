#include "drinfeld/certify.hpp"

#include <chrono>

#include "drinfeld/intlinalg.hpp"

namespace drinfeld {

namespace {

constexpr std::size_t kMaxFailures = 10;

struct Grid {
    int d;
    std::uint64_t p;
};

class Run {
public:
    Run(const CertifyOptions& o, int id, std::string name, double budget) : opts_(o) {
        r_.id = id;
        r_.name = std::move(name);
        r_.budget_seconds = budget;
    }

    bool wants(int d, std::uint64_t p) const { return (!opts_.d || *opts_.d == d) && (!opts_.p || *opts_.p == p); }

    // Counts one instance; records a failure when `ok` is false.
    void check(bool ok, const std::function<Json()>& describe) {
        ++r_.instances;
        if (!ok) {
            failed_ = true;
            if (r_.failures.size() < kMaxFailures)
                r_.failures.push_back(describe());
        }
    }
    void error(const std::exception& e, Json where) {
        ++r_.instances;
        failed_ = true;
        where["error"] = e.what();
        if (r_.failures.size() < kMaxFailures)
            r_.failures.push_back(std::move(where));
    }
    Json& summary() { return r_.summary; }

    CriterionResult finish() {
        r_.status = r_.instances == 0 ? Status::not_applicable : failed_ ? Status::fail : Status::pass;
        return r_;
    }

private:
    const CertifyOptions& opts_;
    CriterionResult r_;
    bool failed_ = false;
};

std::uint64_t ipow(std::uint64_t b, int k) {
    std::uint64_t r = 1;
    while (k-- > 0)
        r *= b;
    return r;
}

std::mt19937_64 stream(std::uint64_t seed, int criterion, std::uint64_t salt = 0) {
    return std::mt19937_64(seed * 1000003ull + static_cast<std::uint64_t>(criterion) * 7919ull + salt);
}

// Smallest margin seen, in p-units, as text.
struct MarginTracker {
    bool any = false;
    Margin min;
    std::int64_t infinite = 0;

    void add(const Margin& m) {
        if (m.infinite) {
            ++infinite;
            return;
        }
        if (!any || m.p_units() < min.p_units())
            min = m;
        any = true;
    }
    Json to_json() const {
        return Json{{"min_margin_p_units", any ? min.to_string() : "inf"},
                    {"min_margin_pi_units", any ? Json(min.pi_units) : Json("inf")},
                    {"infinite_margins", infinite}};
    }
};

// ---------------------------------------------------------------------------

CriterionResult point_counts(const CertifyOptions& o) {
    Run run(o, 1, "point-count exactness", 10);
    for (std::uint64_t p : {2u, 3u, 5u})
        for (int d = 1; d <= 2; ++d) {
            if (!run.wants(d, p))
                continue;
            for (int n = 1; n <= 3; ++n) {
                auto pts = enumerate_points(d, p, n);
                std::uint64_t expect = ipow(p, (n - 1) * d) * (ipow(p, d + 1) - 1) / (p - 1);
                bool distinct = std::adjacent_find(pts.begin(), pts.end()) == pts.end();
                run.check(pts.size() == expect && distinct, [&] {
                    return Json{{"d", d}, {"p", p}, {"n", n}, {"count", pts.size()}, {"expected", expect}};
                });
            }
        }
    return run.finish();
}

CriterionResult transitions(const CertifyOptions& o) {
    Run run(o, 2, "transition structure", 10);
    for (std::uint64_t p : {2u, 3u, 5u})
        for (int d = 1; d <= 2; ++d) {
            if (!run.wants(d, p))
                continue;
            for (int n = 2; n <= 3; ++n) {
                std::map<ProjPoint, std::uint64_t> fiber;
                for (const auto& x : enumerate_points(d, p, n - 1))
                    fiber[x] = 0;
                bool closed = true;
                for (const auto& x : enumerate_points(d, p, n)) {
                    auto it = fiber.find(reduce_point(x));
                    if (it == fiber.end())
                        closed = false;
                    else
                        ++it->second;
                }
                bool ok = closed;
                for (const auto& [x, c] : fiber)
                    ok = ok && c == ipow(p, d);
                run.check(ok, [&] { return Json{{"d", d}, {"p", p}, {"n", n}}; });
            }
        }
    return run.finish();
}

CriterionResult tree_geometry(const CertifyOptions& o) {
    Run run(o, 3, "tree geometry", 10);
    for (std::uint64_t p : {2u, 3u}) {
        if (!run.wants(1, p))
            continue;
        for (int r = 0; r <= 4; ++r) {
            auto b = ball(Lattice::standard(p, 2), r);
            std::uint64_t expect = 1 + (p + 1) * (ipow(p, r) - 1) / (p - 1);
            bool ok = b.vertices.size() == expect && b.edges.size() + 1 == b.vertices.size() && bfs_parents_unique(b);
            run.check(ok, [&] {
                return Json{{"p", p}, {"r", r}, {"vertices", b.vertices.size()}, {"expected", expect}};
            });
        }
    }
    return run.finish();
}

CriterionResult lambda_values(const CertifyOptions& o) {
    Run run(o, 4, "lambda values against the valuation oracle", 300);
    for (int d = 1; d <= 2; ++d)
        for (std::uint64_t p : {2u, 3u}) {
            if (!run.wants(d, p))
                continue;
            auto pts = enumerate_points(d, p, 1);
            const std::size_t m = pts.size();
            std::vector<IntVector> lifts;
            for (const auto& x : pts)
                lifts.push_back(x.lift());
            auto edges = ball(Lattice::standard(p, d + 1), 2).pointed_edges();
            for (std::size_t k = 0; k < edges.size(); ++k) {
                const auto& e = edges[k];
                try {
                    EdgeSampler s(e);
                    std::vector<int> lam(m * m);
                    for (std::size_t a = 0; a < m; ++a)
                        for (std::size_t b = 0; b < m; ++b)
                            lam[a * m + b] = lambda_sigma(e, lifts[a], lifts[b]);
                    bool ok = true;
                    for (std::size_t a = 0; a < m && ok; ++a)
                        for (std::size_t b = 0; b < m && ok; ++b) {
                            int v = lam[a * m + b];
                            ok = v >= -1 && v <= 1 && v == -lam[b * m + a] &&
                                 v == lambda_oracle(s, lifts[a], lifts[b]);
                            for (std::size_t c = 0; c < m && ok; ++c)
                                ok = lam[a * m + c] == v + lam[b * m + c];
                        }
                    run.check(ok, [&] { return Json{{"d", d}, {"p", p}, {"edge", to_json(e)}}; });
                } catch (const Error& ex) {
                    run.error(ex, Json{{"d", d}, {"p", p}, {"edge", k}});
                }
            }
            run.summary()[std::to_string(d) + "," + std::to_string(p)] =
                Json{{"edges", edges.size()}, {"pairs_per_edge", m * m}};
        }
    return run.finish();
}

CriterionResult harmonicity(const CertifyOptions& o) {
    Run run(o, 5, "tree harmonicity", 60);
    for (std::uint64_t p : {2u, 3u, 5u}) {
        if (!run.wants(1, p))
            continue;
        auto pts = enumerate_points(1, p, 1);
        auto b = ball(Lattice::standard(p, 2), 3);
        for (const auto& v : b.vertices) {
            bool ok = true;
            for (const auto& x : pts)
                for (const auto& y : pts)
                    ok = ok && check_kirchhoff(v, x, y);
            run.check(ok, [&] { return Json{{"p", p}, {"vertex", to_json(v)}}; });
        }
    }
    return run.finish();
}

Field cover_field(std::uint64_t p, int d) { return Field(FieldDesc{p, 2, d + 1, 40}); }

CriterionResult congruences(const CertifyOptions& o, bool restriction) {
    Run run(o, restriction ? 7 : 6, restriction ? "restriction compatibility" : "congruence certificate", 120);
    MarginTracker standard, swapped;
    for (std::uint64_t p : {2u, 3u}) {
        if (!run.wants(1, p))
            continue;
        auto rng = stream(o.seed, 6, p);  // both criteria see the same families and points
        Field L = cover_field(p, 1);
        for (int t = 0; t < 20; ++t) {
            auto fam = random_family(1, p, 3, rng(), 1 + static_cast<int>(rng() % 5));
            auto z1 = random_level_one_point(L, 1, rng);
            auto z2 = random_level_one_point(L, 1, rng);
            Json where{{"p", p}, {"family", to_json(fam)}};
            try {
                if (restriction) {
                    auto c = restriction_certificate(fam, z1, z2, 1, 2);
                    standard.add(c.margin);
                    run.check(c.pass, [&] { return Json{{"where", where}, {"certificate", to_json(c)}}; });
                } else {
                    for (RepSystem r : {RepSystem::standard, RepSystem::mirrored}) {
                        auto c = convergence_certificate(fam, z1, z2, 1, 2, 3, r);
                        (r == RepSystem::standard ? standard : swapped).add(c.margin);
                        run.check(c.pass, [&] { return Json{{"where", where}, {"certificate", to_json(c)}}; });
                    }
                }
            } catch (const Error& ex) {
                run.error(ex, where);
            }
        }
    }
    run.summary()["threshold_p_units"] = 1;
    run.summary()["standard"] = standard.to_json();
    if (!restriction)
        run.summary()["swapped"] = swapped.to_json();
    return run.finish();
}

// Pairing value with a level-1 vector: embedded at the edge's depth.
MassZeroVector at_depth(const MassZeroVector& mu, const PointedSimplex& e) {
    return section_lift(mu, std::max(mu.level(), locality_depth(e)));
}

CriterionResult round_trip(const CertifyOptions& o) {
    Run run(o, 8, "residue round trip", 180);
    // Calibrate the global sign once, on the standard edge for p = 2.
    auto cal_edge = standard_simplex(2, 1, {1, 1});
    auto cal_mu = dirac_pair(ProjPoint(2, 1, std::vector<std::uint64_t>{1, 0}),
                             ProjPoint(2, 1, std::vector<std::uint64_t>{0, 1}));
    int measured = dlog_residue_oracle(alpha_level(cal_mu), EdgeSampler(cal_edge));
    Integer pairing = pair_distribution(cal_mu, cal_edge);
    int epsilon = pairing != 0 ? static_cast<int>(Integer(measured) / pairing) : 0;
    run.summary()["epsilon"] = epsilon;
    run.summary()["epsilon_matches_library"] = epsilon == kResidueSign;

    auto sweep = [&](int d, std::uint64_t p, const std::vector<PointedSimplex>& edges) {
        auto pts = enumerate_points(d, p, 1);
        for (const auto& e : edges) {
            try {
                EdgeSampler s(e);
                for (std::size_t j = 1; j < pts.size(); ++j) {
                    auto mu = at_depth(dirac_pair(pts[j], pts[0]), e);
                    auto u = alpha_level(mu);
                    Integer res = dlog_residue(u, e);
                    int oracle = dlog_residue_oracle(u, s);
                    bool ok = epsilon == kResidueSign && res == epsilon * pair_distribution(mu, e) && res == oracle;
                    run.check(ok, [&] {
                        return Json{{"d", d}, {"p", p}, {"edge", to_json(e)}, {"mu", to_json(mu)},
                                    {"oracle", oracle}};
                    });
                }
            } catch (const Error& ex) {
                run.error(ex, Json{{"d", d}, {"p", p}, {"edge", to_json(e)}});
            }
        }
    };
    for (std::uint64_t p : {2u, 3u})
        if (run.wants(1, p))
            sweep(1, p, ball(Lattice::standard(p, 2), 2).pointed_edges());
    if (run.wants(2, 2))
        sweep(2, 2, {standard_simplex(2, 2, {1, 2}), standard_simplex(2, 2, {2, 1})});
    return run.finish();
}

CriterionResult injectivity(const CertifyOptions& o) {
    Run run(o, 9, "injectivity witness", 60);
    for (Grid g : {Grid{1, 2}, Grid{1, 3}, Grid{2, 2}}) {
        if (!run.wants(g.d, g.p))
            continue;
        auto pts = enumerate_points(g.d, g.p, 1);
        auto edges = ball(Lattice::standard(g.p, g.d + 1), 1).pointed_edges();
        BigMatrix m;
        for (const auto& e : edges) {
            BigVector row;
            for (std::size_t j = 1; j < pts.size(); ++j)
                row.push_back(pair_distribution(at_depth(dirac_pair(pts[j], pts[0]), e), e));
            m.push_back(std::move(row));
        }
        int rank = integer_rank(m);
        int expect = static_cast<int>(pts.size()) - 1;
        run.summary()[std::to_string(g.d) + "," + std::to_string(g.p)] =
            Json{{"rank", rank}, {"expected", expect}, {"edges", edges.size()}};
        run.check(rank == expect, [&] { return Json{{"d", g.d}, {"p", g.p}, {"rank", rank}}; });
    }
    return run.finish();
}

// Moves the standard simplex by a random element of GL_{d+1}(Z) with unit
// determinant mod p and random row scalings.
PointedSimplex random_simplex(std::uint64_t p, int d, const SimplexType& type, std::mt19937_64& rng) {
    IntMatrix g = ModMatrix::random_invertible(p, 3, d + 1, rng).to_int();
    for (auto& row : g) {
        auto s = static_cast<std::int64_t>(ipow(p, static_cast<int>(rng() % 3)));
        for (auto& x : row)
            x *= s;
    }
    return act(g, standard_simplex(p, d, type));
}

CriterionResult tau_cross(const CertifyOptions& o) {
    Run run(o, 10, "tau cross-validation", 120);
    struct Config {
        FieldDesc desc;
        int d;
        std::vector<SimplexType> types;
    };
    const std::vector<Config> configs{
        {{2, 2, 2, 40}, 1, {{1, 1}, {2}}},
        {{3, 3, 2, 48}, 1, {{1, 1}, {2}}},
        {{2, 3, 3, 48}, 2, {{1, 1, 1}, {1, 2}, {2, 1}, {3}}},
        {{3, 2, 2, 40}, 2, {{1, 2}, {2, 1}}},
    };
    for (std::size_t ci = 0; ci < configs.size(); ++ci) {
        const auto& cfg = configs[ci];
        if (!run.wants(cfg.d, cfg.desc.p))
            continue;
        auto rng = stream(o.seed, 10, ci);
        Field L(cfg.desc);
        for (int t = 0; t < 100; ++t) {
            const auto& type = cfg.types[rng() % cfg.types.size()];
            auto sigma = random_simplex(cfg.desc.p, cfg.d, type, rng);
            try {
                auto h = random_heights(sigma.k(), L.e(), rng);
                auto z = tube_point(sigma, L, h, &rng);
                auto bp = tau(z);
                bool ok = same_cell(bp.simplex, sigma) && member_tube(z, sigma, TubeMode::open);
                for (const auto& other : candidate_cells(sigma))
                    if (ok && !same_cell(other, sigma))
                        ok = !member_tube(z, other, TubeMode::open);
                auto X = tube_coordinates(z, sigma);
                FieldElem prod = L.one();
                for (int j : sigma.jumps())
                    prod *= X[static_cast<std::size_t>(j)];
                ok = ok && prod.congruent(L.from_int(static_cast<std::int64_t>(cfg.desc.p)));
                for (const auto& x : X)
                    ok = ok && x.valuation().pi_units >= 0;
                run.check(ok, [&] {
                    return Json{{"field", to_json(cfg.desc)}, {"sigma", to_json(sigma)}, {"z", to_json(z)}};
                });
            } catch (const Error& ex) {
                run.error(ex, Json{{"field", to_json(cfg.desc)}, {"sigma", to_json(sigma)}});
            }
        }
    }
    return run.finish();
}

CriterionResult equivariance(const CertifyOptions& o) {
    Run run(o, 11, "G-equivariance", 120);
    MarginTracker margins;
    std::int64_t tau_checks = 0;
    for (Grid g : {Grid{1, 2}, Grid{1, 3}, Grid{2, 2}}) {
        if (!run.wants(g.d, g.p))
            continue;
        auto rng = stream(o.seed, 11, g.p * 10 + static_cast<std::uint64_t>(g.d));
        Field L = cover_field(g.p, g.d);
        for (int t = 0; t < 50; ++t) {
            IntMatrix m = ModMatrix::random_invertible(g.p, 4, g.d + 1, rng).to_int();
            auto fam = random_family(g.d, g.p, 2, rng(), 1 + static_cast<int>(rng() % 4));
            auto z1 = random_level_one_point(L, g.d, rng);
            auto z2 = random_level_one_point(L, g.d, rng);
            Json where{{"d", g.d}, {"p", g.p}, {"g", m}};
            try {
                auto c = equivariance_certificate(m, fam.at(2), z1, z2);
                margins.add(c.margin);
                // tau(g z) = g tau(z), on simplices and weights.
                auto moved = tau(act_point(m, z1.coords()));
                auto here = tau(z1.coords());
                BuildingPoint expect{act(m, here.simplex), here.weights};
                bool tau_ok = moved.vertex_weights() == expect.vertex_weights();
                ++tau_checks;
                run.check(c.pass && tau_ok, [&] {
                    return Json{{"where", where}, {"certificate", to_json(c)}, {"tau_equivariant", tau_ok}};
                });
            } catch (const Error& ex) {
                run.error(ex, where);
            }
        }
    }
    run.summary() = margins.to_json();
    run.summary()["tau_checks"] = tau_checks;
    return run.finish();
}

template <class F>
void timed(std::vector<CriterionResult>& out, const CertifyOptions& o, int id, F&& f) {
    if (!o.only.empty() && std::find(o.only.begin(), o.only.end(), id) == o.only.end())
        return;
    auto t0 = std::chrono::steady_clock::now();
    CriterionResult r = f();
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.on_result)
        o.on_result(r);
    out.push_back(std::move(r));
}

std::vector<CriterionResult> run_core(const CertifyOptions& o) {
    std::vector<CriterionResult> out;
    timed(out, o, 1, [&] { return point_counts(o); });
    timed(out, o, 2, [&] { return transitions(o); });
    timed(out, o, 3, [&] { return tree_geometry(o); });
    timed(out, o, 4, [&] { return lambda_values(o); });
    timed(out, o, 5, [&] { return harmonicity(o); });
    timed(out, o, 6, [&] { return congruences(o, false); });
    timed(out, o, 7, [&] { return congruences(o, true); });
    timed(out, o, 8, [&] { return round_trip(o); });
    timed(out, o, 9, [&] { return injectivity(o); });
    timed(out, o, 10, [&] { return tau_cross(o); });
    timed(out, o, 11, [&] { return equivariance(o); });
    return out;
}

Json results_json(const std::vector<CriterionResult>& rs) {
    Json arr = Json::array();
    for (const auto& r : rs)
        arr.push_back(Json{{"id", r.id},
                           {"name", r.name},
                           {"status", to_string(r.status)},
                           {"instances", r.instances},
                           {"summary", r.summary},
                           {"failures", r.failures}});
    return arr;
}

CriterionResult reproducibility(const CertifyOptions& o) {
    Run run(o, 12, "reproducibility", 60);
    // Two in-process runs on the smallest grid that exercises every criterion.
    CertifyOptions small;
    small.seed = o.seed;
    small.d = 1;
    small.p = 2;
    if (run.wants(1, 2)) {
        std::string a = results_json(run_core(small)).dump();
        std::string b = results_json(run_core(small)).dump();
        run.summary()["bytes"] = a.size();
        run.check(a == b, [] { return Json{{"reason", "bundles differ"}}; });
    }
    return run.finish();
}

}  // namespace

std::string to_string(Status s) {
    switch (s) {
    case Status::pass:
        return "pass";
    case Status::fail:
        return "fail";
    case Status::not_applicable:
        return "not_applicable";
    }
    return "?";
}

SymmetricSpacePoint random_level_one_point(const Field& L, int d, std::mt19937_64& rng) {
    const std::uint64_t p = L.p();
    Lattice M0 = Lattice::standard(p, d + 1);
    std::vector<PointedSimplex> cells;
    if (L.f() >= d + 1)
        cells.push_back(standard_simplex(p, d, {d + 1}));
    if (L.e() >= 2)
        for (const auto& w : neighbors(M0))
            if (auto e = edge_between(M0, w); e && *std::max_element(e->type().begin(), e->type().end()) <= L.f())
                cells.push_back(*e);
    if (cells.empty())
        throw DomainError("field too small for points over the standard star");
    for (int attempt = 0; attempt < 100; ++attempt) {
        const auto& sigma = cells[rng() % cells.size()];
        auto h = random_heights(sigma.k(), L.e(), rng);
        SymmetricSpacePoint z(tube_point(sigma, L, h, &rng));
        if (z.certified_level() == 1)
            return z;
    }
    throw Error("could not draw a point of the level-1 cover");
}

bool Bundle::all_pass() const {
    return std::none_of(results.begin(), results.end(), [](const auto& r) { return r.status == Status::fail; });
}

Json Bundle::to_json() const {
    Json filter = Json::object();
    filter["d"] = d ? Json(*d) : Json(nullptr);
    filter["p"] = p ? Json(*p) : Json(nullptr);
    return Json{{"seed", seed},
                {"filter", filter},
                {"all_pass", all_pass()},
                {"criteria", results_json(results)}};
}

Bundle certify_all(const CertifyOptions& opts) {
    Bundle b{opts.seed, opts.d, opts.p, run_core(opts)};
    timed(b.results, opts, 12, [&] { return reproducibility(opts); });
    return b;
}

}  // namespace drinfeld
