#include "drinfeld/alpha.hpp"

#include <algorithm>

namespace drinfeld {

namespace {

ProjPoint default_basepoint(int d, std::uint64_t p, int level) {
    std::vector<std::uint64_t> v(static_cast<std::size_t>(d + 1), 0);
    v[0] = 1;
    return ProjPoint(p, level, v);
}

std::int64_t small_exponent(const Integer& m) {
    if (m > Integer(std::numeric_limits<std::int32_t>::max()) || m < Integer(std::numeric_limits<std::int32_t>::min()))
        throw CapExceeded("exponent too large to evaluate");
    return static_cast<std::int64_t>(m);
}

void add_into(std::map<IntVector, Integer>& out, const std::map<IntVector, Integer>& in, int sign) {
    for (const auto& [a, m] : in) {
        Integer& slot = out[a];
        slot += sign > 0 ? m : Integer(-m);
        if (slot == 0)
            out.erase(a);
    }
}

void require_certified(const SymmetricSpacePoint& z, int i, const char* what) {
    if (z.certified_level() < 1 || z.certified_level() > i)
        throw DomainError(std::string(what) + " is not certified in the level-" + std::to_string(i) + " cover");
}

std::string show(const SymmetricSpacePoint& z) {
    std::string s = "[";
    for (std::size_t j = 0; j < z.coords().size(); ++j)
        s += (j ? ", " : "") + z.coords()[j].to_string();
    return s + "]";
}

Certificate finish(std::string kind, std::vector<std::pair<std::string, std::string>> inputs, std::int64_t threshold,
                   const Margin& m) {
    Certificate c{std::move(kind), std::move(inputs), threshold, m, false};
    c.pass = m.at_least(threshold);
    return c;
}

}  // namespace

FormalProduct::FormalProduct(int d, std::uint64_t p, int level, Exponents exponents, RepSystem reps,
                             std::optional<ProjPoint> basepoint)
    : d_(d), p_(p), level_(level), exponents_(std::move(exponents)), reps_(reps),
      basepoint_(basepoint ? *basepoint : default_basepoint(d, p, level)) {
    if (basepoint_.dim() != d || basepoint_.p() != p || basepoint_.level() != level)
        throw DomainError("basepoint does not match the product's level");
    Integer total = 0;
    for (auto it = exponents_.begin(); it != exponents_.end();) {
        if (it->first.dim() != d || it->first.p() != p || it->first.level() != level)
            throw DomainError("factor " + it->first.to_string() + " does not match the product's level");
        total += it->second;
        it = it->second == 0 ? exponents_.erase(it) : std::next(it);
    }
    if (total != 0)
        throw DomainError("exponents must sum to zero (homogeneity degree 0)");
}

std::map<IntVector, Integer> FormalProduct::lifted() const {
    std::map<IntVector, Integer> out;
    Integer total = 0;
    for (const auto& [a, m] : exponents_) {
        out[a.lift(reps_)] += m;
        total += m;
    }
    if (total != 0)
        out[basepoint_.lift(reps_)] -= total;
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

FormalProduct FormalProduct::operator*(const FormalProduct& o) const {
    if (o.d_ != d_ || o.p_ != p_ || o.level_ != level_ || o.reps_ != reps_)
        throw DomainError("products live at different levels or use different representatives");
    Exponents e = exponents_;
    for (const auto& [a, m] : o.exponents_)
        e[a] += m;
    return FormalProduct(d_, p_, level_, std::move(e), reps_, basepoint_);
}

FormalProduct FormalProduct::with_basepoint(const ProjPoint& h0) const {
    return FormalProduct(d_, p_, level_, exponents_, reps_, h0);
}

FormalProduct alpha_level(const MassZeroVector& mu, RepSystem reps) {
    return FormalProduct(mu.dim(), mu.p(), mu.level(), mu.entries(), reps);
}

FieldElem evaluate_lifted(const std::map<IntVector, Integer>& factors, std::span<const FieldElem> z) {
    if (z.empty())
        throw DomainError("empty point");
    FieldElem num = z[0].field().one(), den = num;
    for (const auto& [a, m] : factors) {
        if (a.size() != z.size())
            throw DomainError("factor and point have different dimensions");
        FieldElem l = linear_form(a, z);
        if (l.is_zero_at_precision())
            throw PrecisionError("a linear form vanishes at working precision");
        std::int64_t k = small_exponent(m);
        if (k > 0)
            num *= l.pow(k);
        else
            den *= l.pow(-k);
    }
    return num / den;
}

FieldElem evaluate_raw(const FormalProduct& u, std::span<const FieldElem> z) {
    if (static_cast<int>(z.size()) != u.dim() + 1)
        throw DomainError("point and product have different dimensions");
    return evaluate_lifted(u.lifted(), z);
}

FieldElem evaluate_product(const FormalProduct& u, const SymmetricSpacePoint& z) {
    if (z.certified_level() < 1 || z.certified_level() >= u.level())
        throw DomainError("point is not certified below the product's level " + std::to_string(u.level()));
    return evaluate_raw(u, z.coords());
}

Integer dlog_residue(const FormalProduct& u, const PointedSimplex& edge) {
    if (edge.k() != 1)
        throw DomainError("expected a pointed edge (k = 1)");
    if (edge.dim() != u.dim() || edge.p() != u.p())
        throw DomainError("edge and product live in different spaces");
    int depth = locality_depth(edge);
    if (u.level() < depth)
        throw DomainError("product level " + std::to_string(u.level()) + " is below the edge's locality depth " +
                          std::to_string(depth));
    Integer s = 0;
    for (const auto& [a, m] : u.lifted())
        s += m * slope(a, edge);
    return s;
}

int dlog_residue_oracle(const FormalProduct& u, const EdgeSampler& sampler) {
    return sampler.slope_of(evaluate_raw(u, sampler.z1()), evaluate_raw(u, sampler.z2()));
}

bool Margin::at_least(std::int64_t threshold_p_units) const {
    if (infinite)
        return true;
    if (pi_units >= threshold_p_units * e)
        return true;
    if (lower_bound)
        throw PrecisionError("working precision too small to decide the margin");
    return false;
}

std::string Margin::to_string() const {
    if (infinite)
        return "inf";
    Rational r = p_units();
    std::string s = std::to_string(r.numerator());
    if (r.denominator() != 1)
        s += "/" + std::to_string(r.denominator());
    return lower_bound ? ">=" + s : s;
}

Margin two_point_margin(const std::map<IntVector, Integer>& num, const std::map<IntVector, Integer>& den,
                        const SymmetricSpacePoint& z1, const SymmetricSpacePoint& z2) {
    std::map<IntVector, Integer> ratio = num;
    add_into(ratio, den, -1);
    Margin m;
    m.e = z1.field().e();
    if (ratio.empty()) {
        m.infinite = true;
        return m;
    }
    FieldElem q = evaluate_lifted(ratio, z1.coords()) / evaluate_lifted(ratio, z2.coords()) - z1.field().one();
    if (q.is_exact_zero()) {
        m.lower_bound = true;
        m.pi_units = std::numeric_limits<std::int32_t>::max();
        return m;
    }
    Valuation v = q.valuation();
    m.pi_units = v.pi_units;
    m.lower_bound = v.bounded_below;
    return m;
}

Certificate convergence_certificate(const DistributionFamily& fam, const SymmetricSpacePoint& z1,
                                    const SymmetricSpacePoint& z2, int i, int n, int n_prime, RepSystem compare) {
    if (!(1 <= i && i < n && n < n_prime && n_prime <= fam.n_max()))
        throw DomainError("need 1 <= i < n < n' <= n_max");
    require_certified(z1, i, "z1");
    require_certified(z2, i, "z2");
    auto hi = alpha_level(fam.at(n_prime)).lifted();
    auto lo = alpha_level(fam.at(n), compare).lifted();
    std::string kind = compare == RepSystem::standard ? "convergence" : "representative-swap";
    return finish(kind,
                  {{"i", std::to_string(i)},
                   {"n", std::to_string(n)},
                   {"n_prime", std::to_string(n_prime)},
                   {"reps", to_string(compare)},
                   {"z1", show(z1)},
                   {"z2", show(z2)}},
                  n - i, two_point_margin(hi, lo, z1, z2));
}

Certificate restriction_certificate(const DistributionFamily& fam, const SymmetricSpacePoint& z1,
                                    const SymmetricSpacePoint& z2, int i, int n) {
    if (!(1 <= i && i < n && n + 1 <= fam.n_max()))
        throw DomainError("need 1 <= i < n < n_max");
    require_certified(z1, i, "z1");
    require_certified(z2, i, "z2");
    auto upper = alpha_level(fam.at(n + 1)).lifted();
    auto lower = alpha_level(fam.at(n)).lifted();
    return finish("restriction",
                  {{"i", std::to_string(i)},
                   {"n", std::to_string(n)},
                   {"z1", show(z1)},
                   {"z2", show(z2)}},
                  n - i, two_point_margin(upper, lower, z1, z2));
}

std::vector<FieldElem> act_point_inverse(const IntMatrix& g, std::span<const FieldElem> z) {
    return act_point(adjugate(g), z);
}

Certificate equivariance_certificate(const IntMatrix& g, const MassZeroVector& mu, const SymmetricSpacePoint& z1,
                                     const SymmetricSpacePoint& z2) {
    const int n = mu.level();
    if (vp(determinant(g), mu.p()) != 0)
        throw DomainError("g is not invertible over Z_p");
    SymmetricSpacePoint w1(act_point_inverse(g, z1.coords()), n), w2(act_point_inverse(g, z2.coords()), n);
    int i = std::max({z1.certified_level(), z2.certified_level(), w1.certified_level(), w2.certified_level()});
    if (std::min({z1.certified_level(), z2.certified_level(), w1.certified_level(), w2.certified_level()}) < 1 ||
        i >= n)
        throw DomainError("points are not certified below the distribution's level");

    ModMatrix gm(mu.p(), n, g);
    auto moved = alpha_level(act_distribution(gm, mu)).lifted();
    // alpha(mu)(g^{-1} z) = prod l_{a adj(g)}(z)^{m_a} up to a constant.
    std::map<IntVector, Integer> pulled;
    for (const auto& [a, m] : alpha_level(mu).lifted()) {
        Integer& slot = pulled[row_times(a, adjugate(g))];
        slot += m;
    }
    std::erase_if(pulled, [](const auto& kv) { return kv.second == 0; });

    std::string gs;
    for (const auto& row : g) {
        gs += gs.empty() ? "[" : ", [";
        for (std::size_t j = 0; j < row.size(); ++j)
            gs += (j ? ", " : "") + std::to_string(row[j]);
        gs += "]";
    }
    return finish("equivariance",
                  {{"g", "[" + gs + "]"},
                   {"level", std::to_string(n)},
                   {"i", std::to_string(i)},
                   {"z1", show(z1)},
                   {"z2", show(z2)}},
                  n - i, two_point_margin(moved, pulled, z1, z2));
}

}  // namespace drinfeld
