// Command-line front end. Every command writes JSON lines to --out (default
// stdout); usage errors exit with 2, failed certificates with 1.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"

#include "drinfeld/certify.hpp"

using namespace drinfeld;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Single sink for all records.
class Sink {
public:
    void open(const std::string& path) {
        if (path.empty() || path == "-")
            return;
        file_ = std::make_unique<std::ofstream>(path);
        if (!*file_)
            throw UsageError("cannot open output file " + path);
    }
    void write(const Json& j) { out() << j.dump() << '\n'; }
    void pretty(const Json& j) { out() << j.dump(2) << '\n'; }

private:
    std::ostream& out() { return file_ ? static_cast<std::ostream&>(*file_) : std::cout; }
    std::unique_ptr<std::ofstream> file_;
};

// Literal JSON, or @path to read it from a file.
Json read_json(const std::string& arg) {
    std::string text = arg;
    if (!arg.empty() && arg[0] == '@') {
        std::ifstream in(arg.substr(1));
        if (!in)
            throw UsageError("cannot read " + arg.substr(1));
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw UsageError(std::string("invalid JSON: ") + e.what());
    }
}

std::uint64_t point_cap() {
    if (const char* s = std::getenv("DRINFELD_POINT_CAP")) {
        try {
            return std::stoull(s);
        } catch (const std::exception&) {
            throw UsageError("DRINFELD_POINT_CAP is not a number");
        }
    }
    return kDefaultPointCap;
}

void require_prime(std::uint64_t p) {
    if (!is_prime(p))
        throw UsageError("p = " + std::to_string(p) + " is not prime");
}

// Terms like 3*pi^2*omega joined by '+' or '-'.
FieldElem parse_expr(const Field& L, const std::string& src) {
    std::string s;
    for (char c : src)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s += c;
    if (s.empty())
        throw UsageError("empty coordinate");
    FieldElem acc = L.zero();
    std::size_t i = 0;
    auto number = [&](std::int64_t& out) {
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
            ++j;
        if (j == i)
            return false;
        out = std::stoll(s.substr(i, j - i));
        i = j;
        return true;
    };
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        }
        FieldElem term = L.one();
        bool any = false;
        while (i < s.size() && s[i] != '+' && s[i] != '-') {
            if (any) {
                if (s[i] != '*')
                    throw UsageError("cannot parse coordinate '" + src + "'");
                ++i;
            }
            std::int64_t k;
            if (number(k)) {
                term *= L.from_int(k);
            } else {
                FieldElem base;
                if (s.compare(i, 2, "pi") == 0) {
                    base = L.pi();
                    i += 2;
                } else if (s.compare(i, 5, "omega") == 0) {
                    base = L.omega();
                    i += 5;
                } else {
                    throw UsageError("cannot parse coordinate '" + src + "'");
                }
                std::int64_t ex = 1;
                if (i < s.size() && s[i] == '^') {
                    ++i;
                    if (!number(ex))
                        throw UsageError("bad exponent in '" + src + "'");
                }
                term *= base.pow(ex);
            }
            any = true;
        }
        if (!any)
            throw UsageError("cannot parse coordinate '" + src + "'");
        acc += sign > 0 ? term : -term;
    }
    return acc;
}

// "1, pi" or a JSON array of coefficient arrays.
std::vector<FieldElem> parse_point(const Field& L, const std::string& arg) {
    std::vector<FieldElem> z;
    if (!arg.empty() && (arg[0] == '[' || arg[0] == '@')) {
        for (const auto& c : read_json(arg))
            z.push_back(field_elem_from_json(L, c));
    } else {
        std::stringstream ss(arg);
        std::string item;
        while (std::getline(ss, item, ','))
            z.push_back(parse_expr(L, item));
    }
    if (z.size() < 2)
        throw UsageError("a point needs at least two coordinates");
    return z;
}

struct FieldOpts {
    std::uint64_t p = 2;
    int e = 2, f = 1, N = 40;

    void add(CLI::App* app) {
        app->add_option("--p", p, "prime");
        app->add_option("--e", e, "ramification index");
        app->add_option("--f", f, "residue degree");
        app->add_option("--N", N, "precision in powers of pi");
    }
    Field field() const {
        require_prime(p);
        return Field(FieldDesc{p, e, f, N});
    }
};

ProjPoint parse_proj(const Json& j, std::uint64_t p, int level) {
    if (j.is_array())
        return ProjPoint(p, level, j.get<std::vector<std::uint64_t>>());
    return proj_point_from_json(j);
}

Lattice parse_vertex(const Json& j, std::uint64_t p) {
    if (j.is_array())
        return Lattice::from_generators(p, j.get<IntMatrix>());
    return lattice_from_json(j);
}

PointedSimplex parse_edge(const Json& j, std::uint64_t p) {
    if (j.is_array()) {
        std::vector<Lattice> chain;
        for (const auto& m : j)
            chain.push_back(Lattice::from_generators(p, m.get<IntMatrix>()));
        return PointedSimplex(std::move(chain));
    }
    return simplex_from_json(j);
}

Json certificate_record(const Certificate& c, const Json& provenance) {
    Json j = to_json(c);
    j["provenance"] = provenance;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-level computations on the Drinfeld symmetric space"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "TOML/INI file mirroring the flags");
    std::string out_path;
    app.add_option("--out", out_path, "output file (JSON lines)");
    Sink sink;
    int status = 0;

    // points
    int d = 1, n = 1;
    std::uint64_t p = 2;
    std::string reps = "standard";
    auto* points = app.add_subcommand("points", "enumerate P^d(Z/p^n)");
    points->add_option("--d", d)->required();
    points->add_option("--p", p)->required();
    points->add_option("--n", n)->required();
    points->add_option("--reps", reps, "standard|mirrored lifts to report");
    points->callback([&] {
        require_prime(p);
        RepSystem r = rep_system_from_string(reps);
        for (const auto& x : enumerate_points(d, p, n, point_cap())) {
            Json j = to_json(x);
            j["lift"] = x.lift(r);
            sink.write(j);
        }
    });

    // building
    int radius = 1;
    std::string vertex_arg, chain_arg;
    bool dot = false;
    auto* building = app.add_subcommand("building", "the Bruhat-Tits building");
    building->require_subcommand(1);
    auto* bball = building->add_subcommand("ball", "vertices within a radius of the standard vertex");
    bball->add_option("--d", d)->required();
    bball->add_option("--p", p)->required();
    bball->add_option("--r", radius)->required();
    bball->add_flag("--dot", dot, "emit Graphviz instead of JSON lines");
    bball->callback([&] {
        require_prime(p);
        auto b = ball(Lattice::standard(p, d + 1), radius);
        if (dot) {
            std::ostringstream os;
            os << "graph ball {\n";
            for (const auto& [u, v] : b.edges)
                os << "  " << u << " -- " << v << ";\n";
            os << "}";
            sink.write(Json(os.str()));
            return;
        }
        for (std::size_t i = 0; i < b.vertices.size(); ++i)
            sink.write(vertex_record(b, i));
    });
    auto* bnb = building->add_subcommand("neighbors", "vertices adjacent to a vertex");
    bnb->add_option("--p", p)->required();
    bnb->add_option("--vertex", vertex_arg, "HNF basis as JSON")->required();
    bnb->callback([&] {
        require_prime(p);
        auto v = parse_vertex(read_json(vertex_arg), p);
        Json nb = Json::array();
        for (const auto& w : neighbors(v))
            nb.push_back(to_json(w));
        sink.write(Json{{"vertex", to_json(v)}, {"neighbors", nb}});
    });
    auto* btype = building->add_subcommand("type", "type of a lattice chain");
    btype->add_option("--p", p)->required();
    btype->add_option("--chain", chain_arg, "JSON list of lattice bases")->required();
    btype->callback([&] {
        require_prime(p);
        auto s = parse_edge(read_json(chain_arg), p);
        sink.write(Json{{"simplex", to_json(s)}, {"type", s.type()}, {"locality_depth", s.k() == 1 ? locality_depth(s) : -1}});
    });

    // tau / cover
    FieldOpts fo;
    std::string point_arg;
    auto* tau_cmd = app.add_subcommand("tau", "reduction of a point to the building");
    fo.add(tau_cmd);
    tau_cmd->add_option("--point", point_arg, "coordinates, e.g. \"1, pi\"")->required();
    tau_cmd->callback([&] {
        auto z = parse_point(fo.field(), point_arg);
        SymmetricSpacePoint sp(z);
        Json j = to_json(tau(z), sp.certified_level());
        j["field"] = to_json(fo.field().desc());
        j["point"] = to_json(std::span<const FieldElem>(z));
        sink.write(j);
    });
    auto* cover = app.add_subcommand("cover", "membership in the covers of level n");
    fo.add(cover);
    cover->add_option("--n", n)->required();
    cover->add_option("--point", point_arg)->required();
    cover->callback([&] {
        auto z = parse_point(fo.field(), point_arg);
        sink.write(Json{{"n", n},
                        {"open", member_open_cover(z, n)},
                        {"closed", member_closed_cover(z, n)},
                        {"certified_level", certify_level(z, std::max(n, kDefaultCertifyLevel))},
                        {"field", to_json(fo.field().desc())}});
    });

    // dist
    int n_max = 3, sparsity = 3;
    std::uint64_t seed = kDefaultSeed;
    std::string in_arg;
    auto* dist = app.add_subcommand("dist", "mass-zero distributions");
    dist->require_subcommand(1);
    auto* drand = dist->add_subcommand("random", "random compatible family");
    drand->add_option("--d", d)->required();
    drand->add_option("--p", p)->required();
    drand->add_option("--n-max", n_max);
    drand->add_option("--seed", seed);
    drand->add_option("--sparsity", sparsity);
    drand->callback([&] {
        require_prime(p);
        sink.write(Json{{"seed", seed}, {"family", to_json(random_family(d, p, n_max, seed, sparsity))}});
    });
    auto* dpush = dist->add_subcommand("push", "pushforward one level down");
    dpush->add_option("--in", in_arg, "vector as JSON or @file")->required();
    dpush->callback([&] { sink.write(to_json(pushforward(mass_zero_from_json(read_json(in_arg))))); });
    auto* dcheck = dist->add_subcommand("check", "validate a family");
    dcheck->add_option("--in", in_arg, "family as JSON or @file")->required();
    dcheck->callback([&] {
        Json j = read_json(in_arg);
        if (j.is_object() && j.contains("family"))
            j = j["family"];
        std::vector<MassZeroVector> levels;
        for (const auto& v : j)
            levels.push_back(mass_zero_from_json(v));
        bool ok = check_family(levels);
        sink.write(Json{{"levels", levels.size()}, {"compatible", ok}});
        if (!ok)
            status = 1;
    });

    // lambda / sweep-lambda
    std::string edge_arg, pair_arg;
    auto* lam = app.add_subcommand("lambda", "lambda_sigma on one edge and pair");
    lam->add_option("--p", p)->required();
    lam->add_option("--n", n, "level of the pair");
    lam->add_option("--edge", edge_arg, "JSON: list of two lattice bases or a simplex record")->required();
    lam->add_option("--pair", pair_arg, "JSON: [[a...],[b...]]")->required();
    lam->callback([&] {
        require_prime(p);
        auto e = parse_edge(read_json(edge_arg), p);
        Json pj = read_json(pair_arg);
        if (!pj.is_array() || pj.size() != 2)
            throw UsageError("--pair needs two points");
        auto a = parse_proj(pj[0], p, n), b = parse_proj(pj[1], p, n);
        sink.write(Json{{"edge", to_json(e)},
                        {"pair", Json::array({a.rep(), b.rep()})},
                        {"value", lambda_sigma(e, a, b)},
                        {"oracle", lambda_oracle(e, a.lift(), b.lift())}});
    });
    auto* sweep = app.add_subcommand("sweep-lambda", "cochain table over a ball");
    sweep->add_option("--d", d)->required();
    sweep->add_option("--p", p)->required();
    sweep->add_option("--r", radius);
    sweep->add_option("--n", n);
    sweep->callback([&] {
        require_prime(p);
        auto t = cochain_table(ball(Lattice::standard(p, d + 1), radius).pointed_edges(),
                               enumerate_points(d, p, n, point_cap()));
        for (const auto& c : t.entries)
            sink.write(to_json(c, t));
        if (!t.well_formed())
            status = 1;
    });

    // alpha
    int level_i = 1, n_prime = 3, count = 1, alpha_n = 2;
    std::string mu_arg, second_point;
    auto* alpha = app.add_subcommand("alpha", "the integration map at finite level");
    alpha->require_subcommand(1);
    auto* aeval = alpha->add_subcommand("eval", "evaluate alpha_n(mu) at a point");
    fo.add(aeval);
    aeval->add_option("--mu", mu_arg, "mass-zero vector as JSON or @file")->required();
    aeval->add_option("--point", point_arg)->required();
    aeval->callback([&] {
        auto mu = mass_zero_from_json(read_json(mu_arg));
        SymmetricSpacePoint z(parse_point(fo.field(), point_arg));
        auto u = alpha_level(mu);
        sink.write(Json{{"product", to_json(u)},
                        {"certified_level", z.certified_level()},
                        {"value", to_json(evaluate_product(u, z))},
                        {"field", to_json(fo.field().desc())}});
    });
    auto* aconv = alpha->add_subcommand("converge", "convergence and swap certificates on random families");
    fo.add(aconv);
    aconv->add_option("--d", d);
    aconv->add_option("--i", level_i);
    aconv->add_option("--n", alpha_n);
    aconv->add_option("--n-prime", n_prime);
    aconv->add_option("--seed", seed);
    aconv->add_option("--count", count);
    aconv->callback([&] {
        Field L = fo.field();
        std::mt19937_64 rng(seed);
        for (int t = 0; t < count; ++t) {
            auto fam = random_family(d, fo.p, n_prime, rng(), 1 + static_cast<int>(rng() % 5));
            auto z1 = random_level_one_point(L, d, rng), z2 = random_level_one_point(L, d, rng);
            Json prov{{"seed", seed}, {"index", t}, {"field", to_json(L.desc())}, {"family", to_json(fam)}};
            for (RepSystem r : {RepSystem::standard, RepSystem::mirrored}) {
                auto c = convergence_certificate(fam, z1, z2, level_i, alpha_n, n_prime, r);
                sink.write(certificate_record(c, prov));
                status |= c.pass ? 0 : 1;
            }
            auto c = restriction_certificate(fam, z1, z2, level_i, alpha_n);
            sink.write(certificate_record(c, prov));
            status |= c.pass ? 0 : 1;
        }
    });
    auto* ares = alpha->add_subcommand("residue", "dlog residue of alpha_n(mu) along an edge");
    ares->add_option("--mu", mu_arg)->required();
    ares->add_option("--edge", edge_arg)->required();
    ares->callback([&] {
        auto mu = mass_zero_from_json(read_json(mu_arg));
        auto e = parse_edge(read_json(edge_arg), mu.p());
        auto u = alpha_level(mu);
        Integer res = dlog_residue(u, e);
        int oracle = dlog_residue_oracle(u, EdgeSampler(e));
        Integer pairing = pair_distribution(mu, e);
        bool ok = res == oracle && res == kResidueSign * pairing;
        sink.write(Json{{"edge", to_json(e)},
                        {"mu", to_json(mu)},
                        {"residue", integer_string(res)},
                        {"oracle", oracle},
                        {"pairing", integer_string(pairing)},
                        {"epsilon", kResidueSign},
                        {"pass", ok}});
        status |= ok ? 0 : 1;
    });
    auto* aeq = alpha->add_subcommand("equivariance", "random GL_{d+1}(Z_p) translates");
    fo.add(aeq);
    aeq->add_option("--d", d);
    aeq->add_option("--n", alpha_n);
    aeq->add_option("--seed", seed);
    aeq->add_option("--count", count);
    aeq->callback([&] {
        Field L = fo.field();
        std::mt19937_64 rng(seed);
        for (int t = 0; t < count; ++t) {
            IntMatrix g = ModMatrix::random_invertible(fo.p, alpha_n + 2, d + 1, rng).to_int();
            auto fam = random_family(d, fo.p, alpha_n, rng(), 1 + static_cast<int>(rng() % 4));
            auto z1 = random_level_one_point(L, d, rng), z2 = random_level_one_point(L, d, rng);
            auto c = equivariance_certificate(g, fam.at(alpha_n), z1, z2);
            sink.write(certificate_record(c, Json{{"seed", seed}, {"index", t}, {"mu", to_json(fam.at(alpha_n))}}));
            status |= c.pass ? 0 : 1;
        }
    });

    // certify-all
    std::optional<int> fd;
    std::optional<std::uint64_t> fp;
    std::vector<int> only;
    bool quiet = false;
    auto* cert = app.add_subcommand("certify-all", "run the acceptance suite and emit one bundle");
    cert->add_option("--d", fd, "restrict to this dimension");
    cert->add_option("--p", fp, "restrict to this prime");
    cert->add_option("--seed", seed);
    cert->add_option("--only", only, "criterion ids");
    cert->add_flag("--quiet", quiet, "no progress on stderr");
    cert->callback([&] {
        if (fp)
            require_prime(*fp);
        CertifyOptions o;
        o.seed = seed;
        o.d = fd;
        o.p = fp;
        o.only = only;
        if (!quiet)
            o.on_result = [](const CriterionResult& r) {
                std::cerr << to_string(r.status) << " criterion " << r.id << " (" << r.name << "), "
                          << r.instances << " instances, " << r.seconds << " s\n";
            };
        Bundle b = certify_all(o);
        sink.pretty(b.to_json());
        if (!b.all_pass())
            status = 1;
    });

    // Open the sink before any subcommand callback runs.
    app.parse_complete_callback([&] { sink.open(out_path); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        sink.write(Json{{"error", e.what()}});
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return status;
}
