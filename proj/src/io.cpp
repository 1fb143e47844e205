#include "drinfeld/io.hpp"

namespace drinfeld {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw DomainError(std::string("missing JSON field '") + key + "'");
    return j.at(key);
}

Json int_matrix(const IntMatrix& m) {
    Json out = Json::array();
    for (const auto& row : m)
        out.push_back(row);
    return out;
}

}  // namespace

std::string integer_string(const Integer& x) { return x.str(); }

Integer parse_integer(const std::string& s) {
    if (s.empty())
        throw DomainError("empty integer string");
    try {
        return Integer(s);
    } catch (const std::exception&) {
        throw DomainError("not an integer: '" + s + "'");
    }
}

std::string rational_string(const Rational& r) {
    std::string s = std::to_string(r.numerator());
    if (r.denominator() != 1)
        s += "/" + std::to_string(r.denominator());
    return s;
}

Json to_json(const FieldDesc& d) { return Json{{"p", d.p}, {"e", d.e}, {"f", d.f}, {"N", d.N}}; }

FieldDesc field_desc_from_json(const Json& j) {
    return FieldDesc{field(j, "p").get<std::uint64_t>(), field(j, "e").get<int>(), field(j, "f").get<int>(),
                     field(j, "N").get<int>()};
}

Json to_json(const FieldElem& x) {
    auto coeffs = [](const FieldElem& y) {
        Json a = Json::array();
        for (const auto& c : y.coefficients())
            a.push_back(integer_string(c));
        return a;
    };
    if (x.is_zero_at_precision() || x.valuation().pi_units >= 0)
        return coeffs(x);
    std::int64_t s = x.valuation().pi_units;
    return Json{{"shift", s}, {"coeffs", coeffs(x.shifted(-s))}};
}

FieldElem field_elem_from_json(const Field& L, const Json& j) {
    const Json& arr = j.is_object() ? field(j, "coeffs") : j;
    std::vector<Integer> c;
    for (const auto& s : arr)
        c.push_back(parse_integer(s.get<std::string>()));
    FieldElem x = L.from_coefficients(c);
    return j.is_object() ? x.shifted(field(j, "shift").get<std::int64_t>()) : x;
}

Json to_json(std::span<const FieldElem> z) {
    Json out = Json::array();
    for (const auto& x : z)
        out.push_back(to_json(x));
    return out;
}

Json to_json(const ProjPoint& P) { return Json{{"p", P.p()}, {"level", P.level()}, {"rep", P.rep()}}; }

ProjPoint proj_point_from_json(const Json& j) {
    return ProjPoint(field(j, "p").get<std::uint64_t>(), field(j, "level").get<int>(),
                     field(j, "rep").get<std::vector<std::uint64_t>>());
}

Json to_json(const MassZeroVector& v) {
    Json entries = Json::array();
    for (const auto& [x, c] : v.entries())
        entries.push_back(Json{{"point", x.rep()}, {"coeff", integer_string(c)}});
    return Json{{"d", v.dim()}, {"p", v.p()}, {"level", v.level()}, {"entries", entries}};
}

MassZeroVector mass_zero_from_json(const Json& j) {
    int d = field(j, "d").get<int>(), level = field(j, "level").get<int>();
    auto p = field(j, "p").get<std::uint64_t>();
    MassZeroVector::Entries e;
    for (const auto& r : field(j, "entries")) {
        ProjPoint x(p, level, field(r, "point").get<std::vector<std::uint64_t>>());
        if (x.dim() != d)
            throw DomainError("point dimension does not match d");
        e[x] += parse_integer(field(r, "coeff").get<std::string>());
    }
    return MassZeroVector(d, p, level, e);
}

Json to_json(const DistributionFamily& fam) {
    Json out = Json::array();
    for (const auto& v : fam.levels())
        out.push_back(to_json(v));
    return out;
}

DistributionFamily family_from_json(const Json& j) {
    std::vector<MassZeroVector> levels;
    for (const auto& v : j)
        levels.push_back(mass_zero_from_json(v));
    return DistributionFamily(std::move(levels));
}

Json to_json(const Lattice& M) {
    return Json{{"p", M.p()}, {"scale", M.scale()}, {"hnf", int_matrix(M.basis())}};
}

Lattice lattice_from_json(const Json& j) {
    return Lattice::from_generators(field(j, "p").get<std::uint64_t>(), field(j, "hnf").get<IntMatrix>(),
                                    field(j, "scale").get<int>());
}

Json to_json(const PointedSimplex& s) {
    Json chain = Json::array();
    for (const auto& M : s.chain())
        chain.push_back(to_json(M));
    return Json{{"type", s.type()}, {"chain", chain}};
}

PointedSimplex simplex_from_json(const Json& j) {
    std::vector<Lattice> chain;
    for (const auto& M : field(j, "chain"))
        chain.push_back(lattice_from_json(M));
    return PointedSimplex(std::move(chain));
}

Json vertex_record(const Ball& b, std::size_t index) {
    Json nb = Json::array();
    for (const auto& [u, v] : b.edges) {
        if (static_cast<std::size_t>(u) == index)
            nb.push_back(int_matrix(b.vertices[static_cast<std::size_t>(v)].basis()));
        else if (static_cast<std::size_t>(v) == index)
            nb.push_back(int_matrix(b.vertices[static_cast<std::size_t>(u)].basis()));
    }
    return Json{{"vertex_hnf", int_matrix(b.vertices[index].basis())},
                {"distance", b.distance[index]},
                {"neighbors", nb}};
}

Json to_json(const BuildingPoint& bp, int certified_level) {
    Json w = Json::array();
    for (const auto& t : bp.weights)
        w.push_back(rational_string(t));
    return Json{{"simplex", to_json(bp.simplex)}, {"weights", w}, {"certified_level", certified_level}};
}

Json to_json(const CochainEntry& c, const CochainTable& t) {
    return Json{{"edge", to_json(t.edges.at(c.edge))},
                {"pair", Json::array({c.a.rep(), c.b.rep()})},
                {"value", c.value}};
}

Json to_json(const FormalProduct& u) {
    Json f = Json::array();
    for (const auto& [a, m] : u.exponents())
        f.push_back(Json{{"point", a.rep()}, {"exponent", integer_string(m)}});
    return Json{{"level", u.level()},
                {"basepoint", u.basepoint().rep()},
                {"reps", to_string(u.reps())},
                {"factors", f}};
}

Json to_json(const Margin& m) {
    Json j{{"infinite", m.infinite}, {"lower_bound", m.lower_bound}};
    if (!m.infinite) {
        j["p_units"] = rational_string(m.p_units());
        j["pi_units"] = m.pi_units;
        j["e"] = m.e;
    }
    return j;
}

Json to_json(const Certificate& c) {
    Json inputs = Json::object();
    for (const auto& [k, v] : c.inputs)
        inputs[k] = v;
    return Json{{"kind", c.kind},
                {"inputs", inputs},
                {"threshold", c.threshold},
                {"measured_margin", to_json(c.margin)},
                {"pass", c.pass}};
}

}  // namespace drinfeld
