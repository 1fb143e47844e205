#include "drinfeld/building.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace drinfeld {

namespace {

Integer ipow(std::uint64_t p, int k) {
    Integer r = 1;
    for (int i = 0; i < k; ++i)
        r *= p;
    return r;
}

Integer mod_floor(const Integer& a, const Integer& m) {
    Integer r = a % m;
    return r < 0 ? r + m : r;
}

// ---- small F_p linear algebra ------------------------------------------------

using ModVec = std::vector<std::uint64_t>;

// Reduced row echelon basis of the span of `rows`.
std::vector<ModVec> rref(std::vector<ModVec> rows, std::uint64_t p) {
    if (rows.empty())
        return rows;
    const std::size_t n = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0)
            ++piv;
        if (piv == rows.size())
            continue;
        std::swap(rows[r], rows[piv]);
        std::uint64_t s = invmod(rows[r][c], p);
        for (auto& x : rows[r])
            x = mulmod(x, s, p);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0)
                continue;
            std::uint64_t t = rows[i][c];
            for (std::size_t j = 0; j < n; ++j)
                rows[i][j] = submod(rows[i][j], mulmod(t, rows[r][j], p), p);
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

bool in_span(const std::vector<ModVec>& basis, const ModVec& v, std::uint64_t p) {
    auto a = rref(basis, p);
    auto b = basis;
    b.push_back(v);
    return rref(b, p).size() == a.size();
}

BigMatrix to_big(const IntMatrix& m) {
    BigMatrix out;
    out.reserve(m.size());
    for (const auto& r : m)
        out.emplace_back(r.begin(), r.end());
    return out;
}

BigVector combine(const ModVec& c, const IntMatrix& B) {
    BigVector out(B[0].size(), 0);
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i])
            for (std::size_t j = 0; j < out.size(); ++j)
                out[j] += Integer(c[i]) * B[i][j];
    return out;
}

// All RREF bases of j-dimensional subspaces of F_p^n.
void subspaces(int n, int j, std::uint64_t p, std::vector<std::vector<ModVec>>& out) {
    std::vector<int> pivots(static_cast<std::size_t>(j));
    for (int i = 0; i < j; ++i)
        pivots[static_cast<std::size_t>(i)] = i;
    while (true) {
        // Free slots: (row r, column c) with c > pivot r and c not a pivot.
        std::vector<std::pair<int, int>> free;
        for (int r = 0; r < j; ++r)
            for (int c = pivots[static_cast<std::size_t>(r)] + 1; c < n; ++c)
                if (std::find(pivots.begin(), pivots.end(), c) == pivots.end())
                    free.emplace_back(r, c);
        std::vector<std::uint64_t> digit(free.size(), 0);
        while (true) {
            std::vector<ModVec> m(static_cast<std::size_t>(j), ModVec(static_cast<std::size_t>(n), 0));
            for (int r = 0; r < j; ++r)
                m[static_cast<std::size_t>(r)][static_cast<std::size_t>(pivots[static_cast<std::size_t>(r)])] = 1;
            for (std::size_t t = 0; t < free.size(); ++t)
                m[static_cast<std::size_t>(free[t].first)][static_cast<std::size_t>(free[t].second)] = digit[t];
            out.push_back(std::move(m));
            std::size_t t = 0;
            for (; t < digit.size(); ++t) {
                if (++digit[t] < p)
                    break;
                digit[t] = 0;
            }
            if (t == digit.size())
                break;
        }
        // Next pivot combination.
        int i = j - 1;
        while (i >= 0 && pivots[static_cast<std::size_t>(i)] == n - j + i)
            --i;
        if (i < 0)
            break;
        ++pivots[static_cast<std::size_t>(i)];
        for (int t = i + 1; t < j; ++t)
            pivots[static_cast<std::size_t>(t)] = pivots[static_cast<std::size_t>(t - 1)] + 1;
    }
}

Lattice span_over(const Lattice& M0, const std::vector<ModVec>& w) {
    // p M_0 + lift(W)
    BigMatrix gens;
    for (const auto& r : M0.basis()) {
        BigVector v(r.begin(), r.end());
        for (auto& x : v)
            x *= M0.p();
        gens.push_back(std::move(v));
    }
    for (const auto& c : w)
        gens.push_back(combine(c, M0.basis()));
    return Lattice::from_generators(M0.p(), gens, M0.scale());
}

}  // namespace

// ---- Lattice -------------------------------------------------------------------

Lattice Lattice::from_generators(std::uint64_t p, const BigMatrix& rows, int scale) {
    if (!is_prime(p))
        throw DomainError("p = " + std::to_string(p) + " is not prime");
    if (rows.empty())
        throw DomainError("a lattice needs generators");
    const std::size_t n = rows[0].size();
    BigMatrix m;
    for (const auto& r : rows) {
        if (r.size() != n)
            throw DomainError("generators have different lengths");
        if (std::any_of(r.begin(), r.end(), [](const Integer& x) { return x != 0; }))
            m.push_back(r);
    }
    // Triangularize over Z_(p): only swaps, unit scalings and additions.
    std::vector<int> k(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t best = m.size();
        int bv = 0;
        for (std::size_t r = c; r < m.size(); ++r)
            if (m[r][c] != 0) {
                int v = vp(m[r][c], p);
                if (best == m.size() || v < bv) {
                    best = r;
                    bv = v;
                }
            }
        if (best == m.size())
            throw DomainError("generators do not span a full-rank lattice");
        std::swap(m[c], m[best]);
        k[c] = bv;
        Integer pk = ipow(p, bv);
        Integer u = m[c][c] / pk;
        for (std::size_t i = c + 1; i < m.size(); ++i) {
            if (m[i][c] == 0)
                continue;
            Integer q = m[i][c] / pk;
            for (std::size_t j = c; j < n; ++j)
                m[i][j] = u * m[i][j] - q * m[c][j];
        }
    }
    m.resize(n);
    int K = 0;
    for (int x : k)
        K += x;
    // p^K Z^n lies in the lattice, so entries may be reduced mod p^K.
    const std::uint64_t mod1 = checked_pow(p, static_cast<unsigned>(K + 1));
    const Integer modK = ipow(p, K);
    for (std::size_t c = 0; c < n; ++c) {
        Integer pk = ipow(p, k[c]);
        std::uint64_t uinv = invmod(reduce(Integer(m[c][c] / pk), mod1), mod1);
        for (std::size_t j = c + 1; j < n; ++j)
            m[c][j] = mod_floor(m[c][j] * uinv, modK);
        m[c][c] = pk;
    }
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t j = 0; j < c; ++j) {
            Integer q = m[j][c] / m[c][c];
            if (m[j][c] < 0 && q * m[c][c] != m[j][c])
                --q;
            if (q != 0)
                for (std::size_t t = c; t < n; ++t)
                    m[j][t] -= q * m[c][t];
            for (std::size_t t = c + 1; t < n; ++t)
                m[j][t] = mod_floor(m[j][t], modK);
        }
    // Pull out the largest power of p dividing everything.
    int t = -1;
    for (const auto& r : m)
        for (const auto& x : r)
            if (x != 0) {
                int v = vp(x, p);
                t = t < 0 ? v : std::min(t, v);
            }
    Integer pt = ipow(p, t);
    IntMatrix basis(n, IntVector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            basis[i][j] = static_cast<std::int64_t>(m[i][j] / pt);
    return Lattice(p, scale + t, std::move(basis));
}

Lattice Lattice::from_generators(std::uint64_t p, const IntMatrix& rows, int scale) {
    return from_generators(p, to_big(rows), scale);
}

Lattice Lattice::standard(std::uint64_t p, int size) { return from_generators(p, identity_matrix(size)); }

std::vector<int> Lattice::exponents() const {
    std::vector<int> k;
    for (std::size_t i = 0; i < basis_.size(); ++i)
        k.push_back(vp(basis_[i][i], p_));
    return k;
}

int Lattice::volume() const {
    int v = size() * scale_;
    for (int x : exponents())
        v += x;
    return v;
}

std::optional<BigVector> Lattice::coordinates(const ScaledVector& v) const {
    const std::size_t n = basis_.size();
    if (v.row.size() != n)
        throw DomainError("vector and lattice have different dimensions");
    BigVector w(v.row.begin(), v.row.end());
    int shift = v.scale - scale_;
    if (shift >= 0) {
        Integer f = ipow(p_, shift);
        for (auto& x : w)
            x *= f;
    } else {
        Integer f = ipow(p_, -shift);
        for (auto& x : w) {
            if (x % f != 0)
                return std::nullopt;
            x /= f;
        }
    }
    BigVector c(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (w[i] % basis_[i][i] != 0)
            return std::nullopt;
        c[i] = w[i] / basis_[i][i];
        for (std::size_t j = i; j < n; ++j)
            w[j] -= c[i] * basis_[i][j];
    }
    return c;
}

bool Lattice::contains(const ScaledVector& v) const { return coordinates(v).has_value(); }

bool Lattice::contains(const Lattice& other) const {
    if (other.p_ != p_ || other.size() != size())
        throw DomainError("lattices live in different spaces");
    for (const auto& g : other.generators())
        if (!contains(g))
            return false;
    return true;
}

Lattice Lattice::scaled(int m) const { return Lattice(p_, scale_ + m, basis_); }

Lattice Lattice::times(const IntMatrix& F) const {
    BigMatrix b = to_big(basis_), f = to_big(F), out(b.size(), BigVector(f[0].size(), 0));
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t t = 0; t < f.size(); ++t)
            if (b[i][t] != 0)
                for (std::size_t j = 0; j < f[0].size(); ++j)
                    out[i][j] += b[i][t] * f[t][j];
    return from_generators(p_, out, scale_);
}

Lattice Lattice::operator+(const Lattice& o) const {
    if (o.p_ != p_ || o.size() != size())
        throw DomainError("lattices live in different spaces");
    int s = std::min(scale_, o.scale_);
    BigMatrix gens;
    for (const Lattice* L : {this, &o}) {
        Integer f = ipow(p_, L->scale_ - s);
        for (const auto& r : L->basis_) {
            BigVector v(r.begin(), r.end());
            for (auto& x : v)
                x *= f;
            gens.push_back(std::move(v));
        }
    }
    return from_generators(p_, gens, s);
}

std::vector<ScaledVector> Lattice::generators() const {
    std::vector<ScaledVector> g;
    for (const auto& r : basis_)
        g.push_back({r, scale_});
    return g;
}

std::string Lattice::class_key() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        os << (i ? ";" : "");
        for (std::size_t j = 0; j < basis_[i].size(); ++j)
            os << (j ? "," : "") << basis_[i][j];
    }
    return os.str();
}

std::string Lattice::to_string() const {
    std::ostringstream os;
    os << "p^" << scale_ << "<";
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        os << (i ? "," : "") << "(";
        for (std::size_t j = 0; j < basis_[i].size(); ++j)
            os << (j ? "," : "") << basis_[i][j];
        os << ")";
    }
    os << ">";
    return os.str();
}

bool homothety_equal(const Lattice& a, const Lattice& b) { return a.p() == b.p() && a.basis() == b.basis(); }

Lattice act(const IntMatrix& g, const Lattice& M) {
    Integer det = determinant(g);
    if (det == 0)
        throw DomainError("singular matrix");
    return M.times(adjugate(g)).scaled(-vp(det, M.p()));
}

// ---- simplices -------------------------------------------------------------------

SimplexType simplex_type(const std::vector<Lattice>& chain) {
    if (chain.empty())
        throw DomainError("empty lattice chain");
    const Lattice pM0 = chain[0].scaled(1);
    const int n = chain[0].size();
    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (chain[i].p() != chain[0].p() || chain[i].size() != n)
            throw DomainError("chain members live in different spaces");
        const Lattice& nxt = i + 1 < chain.size() ? chain[i + 1] : pM0;
        std::string what = "M_" + std::to_string(i + 1 < chain.size() ? i + 1 : 0) +
                           (i + 1 < chain.size() ? "" : " scaled by p");
        if (!chain[i].contains(nxt) || chain[i] == nxt)
            throw DomainError("chain is not strictly decreasing: " + what + " is not a proper sublattice of M_" +
                              std::to_string(i));
    }
    std::vector<int> d;
    for (const auto& M : chain)
        d.push_back(n - (pM0.volume() - M.volume()));
    d.push_back(n);
    SimplexType e;
    for (std::size_t i = 0; i + 1 < d.size(); ++i)
        e.push_back(d[i + 1] - d[i]);
    return e;
}

PointedSimplex::PointedSimplex(std::vector<Lattice> chain) : chain_(std::move(chain)) {
    type_ = simplex_type(chain_);
}

Lattice PointedSimplex::next(int i) const {
    return i + 1 <= k() ? chain_[static_cast<std::size_t>(i + 1)] : chain_[0].scaled(1);
}

std::vector<int> PointedSimplex::jumps() const {
    std::vector<int> d{0};
    for (std::size_t i = 0; i + 1 < type_.size(); ++i)
        d.push_back(d.back() + type_[i]);
    return d;
}

std::string PointedSimplex::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < chain_.size(); ++i)
        os << (i ? " > " : "") << chain_[i].to_string();
    os << "] type (";
    for (std::size_t i = 0; i < type_.size(); ++i)
        os << (i ? "," : "") << type_[i];
    os << ")";
    return os.str();
}

PointedSimplex standard_simplex(std::uint64_t p, int d, const SimplexType& type) {
    int sum = 0;
    for (int e : type) {
        if (e < 1)
            throw DomainError("type entries must be >= 1");
        sum += e;
    }
    if (sum != d + 1 || type.empty())
        throw DomainError("type entries must sum to d + 1");
    std::vector<Lattice> chain;
    int di = 0;
    for (int e : type) {
        IntMatrix m = identity_matrix(d + 1);
        for (int j = 0; j < di; ++j)
            m[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] = static_cast<std::int64_t>(p);
        chain.push_back(Lattice::from_generators(p, m));
        di += e;
    }
    return PointedSimplex(std::move(chain));
}

AdaptedBasis adapted_basis(const PointedSimplex& sigma) {
    const Lattice& M0 = sigma.lattice(0);
    const std::uint64_t p = M0.p();
    const int n = M0.size();
    const int k = sigma.k();
    auto jumps = sigma.jumps();
    jumps.push_back(n);

    std::vector<std::vector<ModVec>> V(static_cast<std::size_t>(k + 1));
    for (int i = 0; i <= k; ++i) {
        std::vector<ModVec> rows;
        for (const auto& g : sigma.lattice(i).generators()) {
            auto c = M0.coordinates(g);
            if (!c)
                throw DomainError("chain member escapes M_0");
            ModVec r;
            for (const auto& x : *c)
                r.push_back(reduce(x, p));
            rows.push_back(std::move(r));
        }
        V[static_cast<std::size_t>(i)] = rref(rows, p);
    }

    std::vector<ModVec> coords(static_cast<std::size_t>(n));
    std::vector<ModVec> have;
    for (int i = k; i >= 0; --i) {
        int slot = jumps[static_cast<std::size_t>(i)];
        for (const auto& w : V[static_cast<std::size_t>(i)]) {
            if (!have.empty() && in_span(have, w, p))
                continue;
            have.push_back(w);
            if (slot >= jumps[static_cast<std::size_t>(i + 1)])
                throw Error("adapted basis: subspace dimensions disagree with the type");
            coords[static_cast<std::size_t>(slot++)] = w;
        }
        if (slot != jumps[static_cast<std::size_t>(i + 1)])
            throw Error("adapted basis: flag is not of the stated type");
    }
    AdaptedBasis f;
    f.scale = M0.scale();
    for (const auto& c : coords) {
        IntVector row;
        for (const auto& x : combine(c, M0.basis()))
            row.push_back(static_cast<std::int64_t>(x));
        f.rows.push_back(std::move(row));
    }
    return f;
}

bool is_adapted(const PointedSimplex& sigma, const AdaptedBasis& f) {
    const Lattice& M0 = sigma.lattice(0);
    const std::uint64_t p = M0.p();
    auto jumps = sigma.jumps();
    for (int i = 0; i <= sigma.k(); ++i) {
        BigMatrix gens;
        for (const auto& r : M0.basis()) {
            BigVector v(r.begin(), r.end());
            for (auto& x : v)
                x *= p;
            gens.push_back(std::move(v));
        }
        for (std::size_t j = static_cast<std::size_t>(jumps[static_cast<std::size_t>(i)]); j < f.rows.size(); ++j) {
            BigVector v(f.rows[j].begin(), f.rows[j].end());
            Integer sh = ipow(p, f.scale - M0.scale());
            if (f.scale < M0.scale())
                return false;
            for (auto& x : v)
                x *= sh;
            gens.push_back(std::move(v));
        }
        if (!(Lattice::from_generators(p, gens, M0.scale()) == sigma.lattice(i)))
            return false;
    }
    return true;
}

PointedSimplex rotate(const PointedSimplex& sigma) {
    std::vector<Lattice> c(sigma.chain().begin() + 1, sigma.chain().end());
    c.push_back(sigma.lattice(0).scaled(1));
    return PointedSimplex(std::move(c));
}

PointedSimplex act(const IntMatrix& g, const PointedSimplex& sigma) {
    std::vector<Lattice> c;
    for (const auto& M : sigma.chain())
        c.push_back(act(g, M));
    return PointedSimplex(std::move(c));
}

std::vector<std::string> vertex_keys(const PointedSimplex& sigma) {
    std::vector<std::string> keys;
    for (const auto& M : sigma.chain())
        keys.push_back(M.class_key());
    std::sort(keys.begin(), keys.end());
    return keys;
}

bool same_cell(const PointedSimplex& a, const PointedSimplex& b) { return vertex_keys(a) == vertex_keys(b); }

// ---- neighbors and balls ---------------------------------------------------------

std::vector<Lattice> neighbors(const Lattice& v) {
    const int n = v.size();
    std::vector<Lattice> out;
    for (int j = 1; j < n; ++j) {
        std::vector<std::vector<ModVec>> subs;
        subspaces(n, j, v.p(), subs);
        for (const auto& w : subs)
            out.push_back(span_over(v, w));
    }
    return out;
}

std::uint64_t neighbor_count(int d, std::uint64_t p) {
    // Gaussian binomials [d+1, j]_p summed over 1 <= j <= d.
    const int n = d + 1;
    std::uint64_t total = 0;
    for (int j = 1; j < n; ++j) {
        Integer num = 1, den = 1;
        for (int i = 0; i < j; ++i) {
            num *= ipow(p, n - i) - 1;
            den *= ipow(p, i + 1) - 1;
        }
        total += static_cast<std::uint64_t>(num / den);
    }
    return total;
}

std::optional<PointedSimplex> edge_between(const Lattice& u, const Lattice& v) {
    if (homothety_equal(u, v))
        return std::nullopt;
    int sum_k = 0;
    for (int x : u.exponents())
        sum_k += x;
    int m = u.scale() + sum_k - v.scale();
    while (u.contains(v.scaled(m - 1)))
        --m;
    Lattice w = v.scaled(m);
    Lattice pu = u.scaled(1);
    if (!w.contains(pu) || w == pu)
        return std::nullopt;
    return PointedSimplex({u, w});
}

int locality_depth(const PointedSimplex& sigma) {
    const Lattice M0 = sigma.lattice(0).scaled(-sigma.lattice(0).scale());
    const int n = M0.size();
    for (int j = 0;; ++j) {
        bool all = true;
        for (int i = 0; i < n && all; ++i) {
            IntVector e(static_cast<std::size_t>(n), 0);
            e[static_cast<std::size_t>(i)] = 1;
            all = M0.contains(ScaledVector{e, j});
        }
        if (all)
            return j + 1;
    }
}

Ball ball(const Lattice& center, int radius, const BallLimits& limits) {
    const int d = center.size() - 1;
    const int cap = d == 1 ? limits.max_radius_d1 : limits.max_radius_d2;
    if (radius < 0)
        throw DomainError("radius must be >= 0");
    if (radius > cap)
        throw CapExceeded("ball radius " + std::to_string(radius) + " exceeds the cap " + std::to_string(cap) +
                          " for d = " + std::to_string(d));
    Ball b;
    std::map<std::string, int> index;
    std::set<std::pair<int, int>> edges;
    b.vertices.push_back(center);
    b.distance.push_back(0);
    b.parent.push_back(-1);
    index.emplace(center.class_key(), 0);
    for (std::size_t cur = 0; cur < b.vertices.size(); ++cur) {
        const int dist = b.distance[cur];
        for (const auto& w : neighbors(b.vertices[cur])) {
            auto key = w.class_key();
            auto it = index.find(key);
            int j;
            if (it == index.end()) {
                if (dist == radius)
                    continue;
                j = static_cast<int>(b.vertices.size());
                if (static_cast<std::uint64_t>(j) >= limits.max_vertices)
                    throw CapExceeded("ball exceeds " + std::to_string(limits.max_vertices) + " vertices");
                b.vertices.push_back(w.scaled(-w.scale()));
                b.distance.push_back(dist + 1);
                b.parent.push_back(static_cast<int>(cur));
                index.emplace(std::move(key), j);
            } else {
                j = it->second;
            }
            const int i = static_cast<int>(cur);
            edges.emplace(std::min(i, j), std::max(i, j));
        }
    }
    b.edges.assign(edges.begin(), edges.end());
    return b;
}

std::vector<PointedSimplex> Ball::pointed_edges() const {
    std::vector<PointedSimplex> out;
    for (auto [i, j] : edges) {
        const auto& u = vertices[static_cast<std::size_t>(i)];
        const auto& v = vertices[static_cast<std::size_t>(j)];
        auto a = edge_between(u, v);
        auto c = edge_between(v, u);
        if (!a || !c)
            throw Error("ball edge between non-adjacent vertices");
        out.push_back(*a);
        out.push_back(*c);
    }
    return out;
}

bool bfs_parents_unique(const Ball& b) {
    std::vector<int> down(b.vertices.size(), 0), level(b.vertices.size(), 0);
    for (auto [i, j] : b.edges) {
        int di = b.distance[static_cast<std::size_t>(i)], dj = b.distance[static_cast<std::size_t>(j)];
        if (di == dj) {
            ++level[static_cast<std::size_t>(i)];
            ++level[static_cast<std::size_t>(j)];
        } else if (di + 1 == dj) {
            ++down[static_cast<std::size_t>(j)];
        } else if (dj + 1 == di) {
            ++down[static_cast<std::size_t>(i)];
        } else {
            return false;
        }
    }
    for (std::size_t v = 1; v < b.vertices.size(); ++v)
        if (down[v] != 1 || level[v] != 0)
            return false;
    return level[0] == 0;
}

}  // namespace drinfeld
