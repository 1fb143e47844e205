#include "drinfeld/projective.hpp"

#include <algorithm>
#include <sstream>

namespace drinfeld {

IntMatrix identity_matrix(int size) {
    IntMatrix m(static_cast<std::size_t>(size), IntVector(static_cast<std::size_t>(size), 0));
    for (int i = 0; i < size; ++i)
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    return m;
}

IntMatrix matmul(const IntMatrix& a, const IntMatrix& b) {
    const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    IntMatrix c(n, IntVector(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < k; ++t)
            if (a[i][t])
                for (std::size_t j = 0; j < m; ++j)
                    c[i][j] += a[i][t] * b[t][j];
    return c;
}

IntVector row_times(std::span<const std::int64_t> a, const IntMatrix& g) {
    IntVector out(g.empty() ? 0 : g[0].size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i])
            for (std::size_t j = 0; j < out.size(); ++j)
                out[j] += a[i] * g[i][j];
    return out;
}

Integer determinant(const IntMatrix& g) {
    // Bareiss fraction-free elimination.
    const std::size_t n = g.size();
    if (n == 0)
        return 1;
    std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m[i][j] = g[i][j];
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && m[r][k] == 0)
                ++r;
            if (r == n)
                return 0;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

IntMatrix adjugate(const IntMatrix& g) {
    const std::size_t n = g.size();
    IntMatrix adj(n, IntVector(n, 0));
    if (n == 1) {
        adj[0][0] = 1;
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            IntMatrix minor;
            for (std::size_t r = 0; r < n; ++r) {
                if (r == i)
                    continue;
                IntVector row;
                for (std::size_t c = 0; c < n; ++c)
                    if (c != j)
                        row.push_back(g[r][c]);
                minor.push_back(std::move(row));
            }
            Integer d = determinant(minor);
            if ((i + j) % 2)
                d = -d;
            adj[j][i] = static_cast<std::int64_t>(d);
        }
    return adj;
}

std::string to_string(RepSystem r) { return r == RepSystem::standard ? "standard" : "mirrored"; }

RepSystem rep_system_from_string(const std::string& s) {
    if (s == "standard")
        return RepSystem::standard;
    if (s == "mirrored")
        return RepSystem::mirrored;
    throw DomainError("unknown representative system '" + s + "'");
}

ProjPoint::ProjPoint(std::uint64_t p, int level, std::span<const std::uint64_t> coords)
    : p_(p), level_(level) {
    if (!is_prime(p))
        throw DomainError("p = " + std::to_string(p) + " is not prime");
    if (level < 1)
        throw DomainError("level must be >= 1");
    if (coords.size() < 2)
        throw DomainError("projective points need at least two coordinates");
    modulus_ = checked_pow(p, static_cast<unsigned>(level));
    rep_.assign(coords.begin(), coords.end());
    std::size_t lead = rep_.size();
    for (std::size_t i = 0; i < rep_.size(); ++i) {
        rep_[i] %= modulus_;
        if (lead == rep_.size() && rep_[i] % p != 0)
            lead = i;
    }
    if (lead == rep_.size())
        throw DomainError("vector is not primitive mod p");
    std::uint64_t s = invmod(rep_[lead], modulus_);
    for (auto& c : rep_)
        c = mulmod(c, s, modulus_);
}

IntVector ProjPoint::lift(RepSystem system) const {
    IntVector v(rep_.size());
    bool seen_lead = false;
    for (std::size_t i = 0; i < rep_.size(); ++i) {
        auto c = static_cast<std::int64_t>(rep_[i]);
        bool is_lead = !seen_lead && rep_[i] == 1;
        seen_lead = seen_lead || is_lead;
        if (system == RepSystem::mirrored && !is_lead && c != 0)
            c -= static_cast<std::int64_t>(modulus_);
        v[i] = c;
    }
    return v;
}

std::string ProjPoint::to_string() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < rep_.size(); ++i)
        os << (i ? "," : "") << rep_[i];
    os << ")@" << level_;
    return os.str();
}

ProjPoint canonical_point(std::span<const std::int64_t> v, std::uint64_t p, int level) {
    int k = -1;
    for (auto x : v)
        if (x != 0) {
            int w = vp(x, p);
            k = k < 0 ? w : std::min(k, w);
        }
    if (k < 0)
        throw DomainError("cannot normalize the zero vector");
    std::uint64_t pk = checked_pow(p, static_cast<unsigned>(k));
    std::uint64_t m = checked_pow(p, static_cast<unsigned>(level));
    std::vector<std::uint64_t> c;
    c.reserve(v.size());
    for (auto x : v)
        c.push_back(reduce(x / static_cast<std::int64_t>(pk), m));
    return ProjPoint(p, level, c);
}

std::uint64_t point_count(int d, std::uint64_t p, int level) {
    std::uint64_t q = checked_pow(p, static_cast<unsigned>(d + 1));
    std::uint64_t proj = (q - 1) / (p - 1);
    std::uint64_t fib = checked_pow(p, static_cast<unsigned>((level - 1) * d));
    if (fib != 0 && proj > (std::uint64_t{1} << 62) / fib)
        throw CapExceeded("point count overflows");
    return proj * fib;
}

std::vector<ProjPoint> enumerate_points(int d, std::uint64_t p, int level, std::uint64_t cap) {
    if (d < 1)
        throw DomainError("dimension d must be >= 1");
    if (!is_prime(p))
        throw DomainError("p = " + std::to_string(p) + " is not prime");
    if (level < 1)
        throw DomainError("level must be >= 1");
    std::uint64_t count = point_count(d, p, level);
    if (count > cap)
        throw CapExceeded("|P^" + std::to_string(d) + "(Z/" + std::to_string(p) + "^" +
                          std::to_string(level) + ")| = " + std::to_string(count) + " exceeds cap " +
                          std::to_string(cap));
    const std::uint64_t m = checked_pow(p, static_cast<unsigned>(level));
    const std::size_t len = static_cast<std::size_t>(d + 1);
    std::vector<ProjPoint> out;
    out.reserve(count);
    std::vector<std::uint64_t> v(len);
    for (std::size_t lead = 0; lead < len; ++lead) {
        // coordinates before lead: multiples of p; lead = 1; after: anything.
        std::vector<std::uint64_t> digit(len, 0);
        while (true) {
            for (std::size_t i = 0; i < len; ++i)
                v[i] = i < lead ? digit[i] * p : (i == lead ? 1 : digit[i]);
            out.emplace_back(p, level, v);
            std::size_t k = 0;
            for (; k < len; ++k) {
                if (k == lead)
                    continue;
                std::uint64_t bound = k < lead ? m / p : m;
                if (++digit[k] < bound)
                    break;
                digit[k] = 0;
            }
            if (k == len)
                break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

ProjPoint reduce_to(const ProjPoint& P, int level) {
    if (level < 1 || level > P.level())
        throw DomainError("cannot reduce a level-" + std::to_string(P.level()) + " point to level " +
                          std::to_string(level));
    return ProjPoint(P.p(), level, P.rep());
}

ProjPoint reduce_point(const ProjPoint& P) {
    if (P.level() < 2)
        throw DomainError("reduce_point needs a point of level >= 2");
    return reduce_to(P, P.level() - 1);
}

ProjPoint lift_to(const ProjPoint& P, int level) {
    if (level < P.level())
        throw DomainError("lift_to needs a higher level");
    return ProjPoint(P.p(), level, P.rep());
}

// ---- ModMatrix ---------------------------------------------------------------------

ModMatrix::ModMatrix(std::uint64_t p, int level, IntMatrix entries) : p_(p), level_(level) {
    modulus_ = checked_pow(p, static_cast<unsigned>(level));
    const std::size_t n = entries.size();
    a_.assign(n, std::vector<std::uint64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        if (entries[i].size() != n)
            throw DomainError("matrix must be square");
        for (std::size_t j = 0; j < n; ++j)
            a_[i][j] = reduce(entries[i][j], modulus_);
    }
}

ModMatrix ModMatrix::identity(std::uint64_t p, int level, int size) {
    return ModMatrix(p, level, identity_matrix(size));
}

ModMatrix ModMatrix::random_invertible(std::uint64_t p, int level, int size, std::mt19937_64& rng) {
    const std::uint64_t m = checked_pow(p, static_cast<unsigned>(level));
    while (true) {
        IntMatrix e(static_cast<std::size_t>(size), IntVector(static_cast<std::size_t>(size)));
        for (auto& row : e)
            for (auto& x : row)
                x = static_cast<std::int64_t>(rng() % m);
        ModMatrix g(p, level, e);
        if (g.invertible())
            return g;
    }
}

bool ModMatrix::invertible() const {
    return reduce(determinant(to_int()), p_) != 0;
}

ModMatrix ModMatrix::inverse() const {
    const std::size_t n = a_.size();
    const std::uint64_t m = modulus_;
    std::vector<std::vector<std::uint64_t>> w(n, std::vector<std::uint64_t>(2 * n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            w[i][j] = a_[i][j];
        w[i][n + i] = 1 % m;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && w[piv][col] % p_ == 0)
            ++piv;
        if (piv == n)
            throw DomainError("matrix is not invertible mod p");
        std::swap(w[col], w[piv]);
        std::uint64_t s = invmod(w[col][col], m);
        for (auto& x : w[col])
            x = mulmod(x, s, m);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || w[r][col] == 0)
                continue;
            std::uint64_t t = w[r][col];
            for (std::size_t j = 0; j < 2 * n; ++j)
                w[r][j] = submod(w[r][j], mulmod(t, w[col][j], m), m);
        }
    }
    IntMatrix inv(n, IntVector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv[i][j] = static_cast<std::int64_t>(w[i][n + j]);
    return ModMatrix(p_, level_, inv);
}

ModMatrix ModMatrix::reduced(int level) const {
    if (level > level_)
        throw DomainError("cannot raise the level of a matrix");
    return ModMatrix(p_, level, to_int());
}

IntMatrix ModMatrix::to_int() const {
    IntMatrix out(a_.size(), IntVector(a_.size()));
    for (std::size_t i = 0; i < a_.size(); ++i)
        for (std::size_t j = 0; j < a_.size(); ++j)
            out[i][j] = static_cast<std::int64_t>(a_[i][j]);
    return out;
}

ModMatrix operator*(const ModMatrix& a, const ModMatrix& b) {
    if (a.p_ != b.p_ || a.level_ != b.level_ || a.size() != b.size())
        throw DomainError("incompatible matrices");
    const std::size_t n = a.a_.size();
    const std::uint64_t m = a.modulus_;
    IntMatrix c(n, IntVector(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::uint64_t s = 0;
            for (std::size_t k = 0; k < n; ++k)
                s = addmod(s, mulmod(a.a_[i][k], b.a_[k][j], m), m);
            c[i][j] = static_cast<std::int64_t>(s);
        }
    return ModMatrix(a.p_, a.level_, c);
}

ProjPoint act_with_inverse(const ModMatrix& g_inverse, const ProjPoint& P) {
    if (g_inverse.p() != P.p() || g_inverse.level() != P.level() || g_inverse.size() != P.dim() + 1)
        throw DomainError("matrix and point are incompatible");
    const std::uint64_t m = P.modulus();
    const auto& a = P.rep();
    std::vector<std::uint64_t> out(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            out[j] = addmod(out[j], mulmod(a[i], g_inverse(static_cast<int>(i), static_cast<int>(j)), m), m);
    return ProjPoint(P.p(), P.level(), out);
}

ProjPoint act(const ModMatrix& g, const ProjPoint& P) { return act_with_inverse(g.inverse(), P); }

}  // namespace drinfeld
