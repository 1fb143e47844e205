#include "drinfeld/distributions.hpp"

namespace drinfeld {

MassZeroVector::MassZeroVector(int d, std::uint64_t p, int level) : d_(d), p_(p), level_(level) {
    if (d < 1 || level < 1)
        throw DomainError("mass-zero vectors need d >= 1 and level >= 1");
}

MassZeroVector::MassZeroVector(int d, std::uint64_t p, int level, const Entries& entries)
    : MassZeroVector(d, p, level) {
    for (const auto& [x, c] : entries) {
        if (x.dim() != d || x.p() != p || x.level() != level)
            throw DomainError("point " + x.to_string() + " does not belong to this level");
        add(x, c);
    }
    if (total_mass() != 0)
        throw DomainError("coefficients do not sum to zero");
}

Integer MassZeroVector::coefficient(const ProjPoint& x) const {
    auto it = entries_.find(x);
    return it == entries_.end() ? Integer(0) : it->second;
}

Integer MassZeroVector::total_mass() const {
    Integer s = 0;
    for (const auto& [x, c] : entries_)
        s += c;
    return s;
}

void MassZeroVector::add(const ProjPoint& x, const Integer& c) {
    if (c == 0)
        return;
    auto [it, fresh] = entries_.try_emplace(x, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0)
            entries_.erase(it);
    }
}

void MassZeroVector::require_compatible(const MassZeroVector& o) const {
    if (d_ != o.d_ || p_ != o.p_ || level_ != o.level_)
        throw DomainError("mass-zero vectors live at different levels");
}

MassZeroVector& MassZeroVector::operator+=(const MassZeroVector& o) {
    require_compatible(o);
    for (const auto& [x, c] : o.entries_)
        add(x, c);
    return *this;
}

MassZeroVector& MassZeroVector::operator-=(const MassZeroVector& o) {
    require_compatible(o);
    for (const auto& [x, c] : o.entries_)
        add(x, -c);
    return *this;
}

MassZeroVector& MassZeroVector::operator*=(const Integer& c) {
    if (c == 0) {
        entries_.clear();
        return *this;
    }
    for (auto& [x, v] : entries_)
        v *= c;
    return *this;
}

MassZeroVector dirac_pair(const ProjPoint& a, const ProjPoint& b) {
    if (a.level() != b.level() || a.p() != b.p() || a.dim() != b.dim())
        throw DomainError("dirac_pair needs two points of the same level");
    MassZeroVector::Entries e;
    if (!(a == b)) {
        e.emplace(a, 1);
        e.emplace(b, -1);
    }
    return MassZeroVector(a.dim(), a.p(), a.level(), e);
}

MassZeroVector pushforward(const MassZeroVector& v) {
    if (v.level() < 2)
        throw DomainError("pushforward needs a vector of level >= 2");
    MassZeroVector::Entries e;
    for (const auto& [x, c] : v.entries())
        e[reduce_point(x)] += c;
    std::erase_if(e, [](const auto& kv) { return kv.second == 0; });
    return MassZeroVector(v.dim(), v.p(), v.level() - 1, e);
}

MassZeroVector act_distribution(const ModMatrix& g, const MassZeroVector& v) {
    if (g.level() != v.level() || g.p() != v.p())
        throw DomainError("matrix and distribution live at different levels");
    ModMatrix g_inv = g.inverse();
    MassZeroVector::Entries e;
    for (const auto& [x, c] : v.entries())
        e[act_with_inverse(g_inv, x)] += c;
    return MassZeroVector(v.dim(), v.p(), v.level(), e);
}

MassZeroVector::Entries dirac_decomposition(const MassZeroVector& v, const ProjPoint& x0) {
    MassZeroVector::Entries c;
    for (const auto& [x, m] : v.entries())
        if (!(x == x0))
            c.emplace(x, m);
    return c;
}

bool check_family(const std::vector<MassZeroVector>& levels) {
    for (std::size_t m = 0; m < levels.size(); ++m) {
        if (levels[m].level() != static_cast<int>(m) + 1)
            return false;
        if (m + 1 < levels.size() && !(pushforward(levels[m + 1]) == levels[m]))
            return false;
    }
    return !levels.empty();
}

DistributionFamily::DistributionFamily(std::vector<MassZeroVector> levels) : levels_(std::move(levels)) {
    if (!check_family(levels_))
        throw DomainError("levels do not form a compatible family");
}

DistributionFamily DistributionFamily::from_top(const MassZeroVector& top) {
    std::vector<MassZeroVector> lv(static_cast<std::size_t>(top.level()), top);
    for (int m = top.level() - 1; m >= 1; --m)
        lv[static_cast<std::size_t>(m - 1)] = pushforward(lv[static_cast<std::size_t>(m)]);
    return DistributionFamily(std::move(lv));
}

const MassZeroVector& DistributionFamily::at(int level) const {
    if (level < 1 || level > n_max())
        throw DomainError("family has no level " + std::to_string(level));
    return levels_[static_cast<std::size_t>(level - 1)];
}

ProjPoint random_point(int d, std::uint64_t p, int level, std::mt19937_64& rng) {
    const std::uint64_t m = checked_pow(p, static_cast<unsigned>(level));
    std::vector<std::uint64_t> v(static_cast<std::size_t>(d + 1));
    while (true) {
        bool primitive = false;
        for (auto& x : v) {
            x = rng() % m;
            primitive = primitive || x % p != 0;
        }
        if (primitive)
            return ProjPoint(p, level, v);
    }
}

DistributionFamily random_family(int d, std::uint64_t p, int n_max, std::uint64_t seed, int sparsity,
                                 int coeff_bound) {
    if (n_max < 1)
        throw DomainError("n_max must be >= 1");
    if (!is_prime(p))
        throw DomainError("p = " + std::to_string(p) + " is not prime");
    std::mt19937_64 rng(seed);
    MassZeroVector top(d, p, n_max);
    const auto span = static_cast<std::uint64_t>(2 * coeff_bound + 1);
    for (int t = 0; t < sparsity; ++t) {
        ProjPoint a = random_point(d, p, n_max, rng);
        ProjPoint b = random_point(d, p, n_max, rng);
        auto c = static_cast<std::int64_t>(rng() % span) - coeff_bound;
        top += Integer(c) * dirac_pair(a, b);
    }
    return DistributionFamily::from_top(top);
}

}  // namespace drinfeld
