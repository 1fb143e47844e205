#include "drinfeld/padic.hpp"

#include <algorithm>
#include <sstream>

namespace drinfeld {

// ---- integers ----------------------------------------------------------------

bool is_prime(std::uint64_t n) {
    if (n < 2)
        return false;
    for (std::uint64_t q = 2; q * q <= n; ++q)
        if (n % q == 0)
            return false;
    return true;
}

std::uint64_t checked_pow(std::uint64_t b, unsigned k) {
    constexpr std::uint64_t limit = std::uint64_t{1} << 62;
    std::uint64_t r = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (b != 0 && r > limit / b)
            throw DomainError("integer power exceeds 62 bits: " + std::to_string(b) + "^" +
                              std::to_string(k));
        r *= b;
    }
    return r;
}

int vp(std::int64_t x, std::uint64_t p) {
    if (x == 0)
        throw DomainError("valuation of 0");
    int v = 0;
    auto y = static_cast<std::uint64_t>(x < 0 ? -(x + 1) + 1 : x);
    while (y % p == 0) {
        y /= p;
        ++v;
    }
    return v;
}

int vp(const Integer& x, std::uint64_t p) {
    if (x == 0)
        throw DomainError("valuation of 0");
    int v = 0;
    Integer y = abs(x);
    while (y % p == 0) {
        y /= p;
        ++v;
    }
    return v;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    std::uint64_t s = a + b;
    return s >= m ? s - m : s;
}

std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return a >= b ? a - b : a + (m - b);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t k, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (k) {
        if (k & 1)
            r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        k >>= 1;
    }
    return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
    std::int64_t old_r = static_cast<std::int64_t>(a % m), r = static_cast<std::int64_t>(m);
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1)
        throw DomainError(std::to_string(a) + " is not invertible modulo " + std::to_string(m));
    return reduce(old_s, m);
}

std::uint64_t reduce(std::int64_t x, std::uint64_t m) {
    auto mm = static_cast<std::int64_t>(m);
    std::int64_t r = x % mm;
    return static_cast<std::uint64_t>(r < 0 ? r + mm : r);
}

std::uint64_t reduce(const Integer& x, std::uint64_t m) {
    Integer r = x % m;
    if (r < 0)
        r += m;
    return static_cast<std::uint64_t>(r);
}

std::string to_string(const FieldDesc& d) {
    std::ostringstream os;
    os << "Q_" << d.p << "(pi,omega) e=" << d.e << " f=" << d.f << " N=" << d.N;
    return os.str();
}

// ---- the ring O_L / p^K --------------------------------------------------------

namespace detail {

struct FieldContext {
    FieldDesc desc;
    unsigned K = 1;        // unit parts live in (Z/p^K)[pi, omega]
    std::uint64_t pK = 1;
    std::vector<std::uint64_t> g;  // omega^f = -sum_k g[k] omega^k
    std::vector<std::uint64_t> g_residue;

    int n() const { return desc.e * desc.f; }
};

namespace {

using Coeffs = std::array<std::uint64_t, kMaxDegree>;

bool has_root_mod_p(const std::vector<std::uint64_t>& g, std::uint64_t p) {
    // g is monic of degree g.size(), lower coefficients listed.
    for (std::uint64_t x = 0; x < p; ++x) {
        std::uint64_t acc = 1;  // Horner from the leading 1
        for (std::size_t k = g.size(); k-- > 0;)
            acc = addmod(mulmod(acc, x, p), g[k], p);
        if (acc == 0)
            return true;
    }
    return false;
}

std::vector<std::uint64_t> first_irreducible(std::uint64_t p, int f) {
    if (f == 1)
        return {};
    std::vector<std::uint64_t> g(static_cast<std::size_t>(f), 0);
    // Lexicographic search; degree <= 3 so "no root" is equivalent to irreducible.
    while (true) {
        if (g[0] != 0 && !has_root_mod_p(g, p))
            return g;
        std::size_t k = 0;
        while (k < g.size() && ++g[k] == p) {
            g[k] = 0;
            ++k;
        }
        if (k == g.size())
            throw DomainError("no irreducible polynomial found");
    }
}

Coeffs ring_mul(const FieldContext& c, const Coeffs& a, const Coeffs& b) {
    const int e = c.desc.e, f = c.desc.f;
    const std::uint64_t m = c.pK;
    std::uint64_t tmp[2 * kMaxRamification][2 * kMaxResidueDegree] = {};
    for (int i1 = 0; i1 < e; ++i1)
        for (int j1 = 0; j1 < f; ++j1) {
            std::uint64_t x = a[static_cast<std::size_t>(i1 * f + j1)];
            if (!x)
                continue;
            for (int i2 = 0; i2 < e; ++i2)
                for (int j2 = 0; j2 < f; ++j2) {
                    std::uint64_t y = b[static_cast<std::size_t>(i2 * f + j2)];
                    if (y)
                        tmp[i1 + i2][j1 + j2] = addmod(tmp[i1 + i2][j1 + j2], mulmod(x, y, m), m);
                }
        }
    for (int i = 0; i < 2 * e - 1; ++i)
        for (int j = 2 * f - 2; j >= f; --j) {
            std::uint64_t t = tmp[i][j];
            if (!t)
                continue;
            tmp[i][j] = 0;
            for (int k = 0; k < f; ++k)
                tmp[i][j - f + k] = submod(tmp[i][j - f + k], mulmod(t, c.g[static_cast<std::size_t>(k)], m), m);
        }
    const std::uint64_t p = c.desc.p % m;
    for (int i = 2 * e - 2; i >= e; --i)
        for (int j = 0; j < f; ++j)
            if (tmp[i][j])
                tmp[i - e][j] = addmod(tmp[i - e][j], mulmod(p, tmp[i][j], m), m);
    Coeffs out{};
    for (int i = 0; i < e; ++i)
        for (int j = 0; j < f; ++j)
            out[static_cast<std::size_t>(i * f + j)] = tmp[i][j];
    return out;
}

Coeffs ring_add(const FieldContext& c, const Coeffs& a, const Coeffs& b) {
    Coeffs out{};
    for (int k = 0; k < c.n(); ++k)
        out[static_cast<std::size_t>(k)] = addmod(a[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(k)], c.pK);
    return out;
}

int digit_valuation(std::uint64_t x, const FieldContext& c) {
    if (x == 0)
        return static_cast<int>(c.K);
    int v = 0;
    while (x % c.desc.p == 0) {
        x /= c.desc.p;
        ++v;
    }
    return v;
}

// pi-adic valuation of a ring element, capped at e*K.
int ring_val(const FieldContext& c, const Coeffs& a) {
    const int e = c.desc.e, f = c.desc.f;
    int best = e * static_cast<int>(c.K);
    for (int i = 0; i < e; ++i) {
        int v = static_cast<int>(c.K);
        for (int j = 0; j < f; ++j)
            v = std::min(v, digit_valuation(a[static_cast<std::size_t>(i * f + j)], c));
        best = std::min(best, e * v + i);
    }
    return best;
}

// Multiply by pi^k, k >= 0.
Coeffs ring_mul_pi(const FieldContext& c, Coeffs a, std::int64_t k) {
    const int e = c.desc.e, f = c.desc.f;
    const std::int64_t q = k / e;
    const int r = static_cast<int>(k % e);
    if (q >= static_cast<std::int64_t>(c.K))
        return Coeffs{};
    if (q > 0) {
        std::uint64_t s = powmod(c.desc.p, static_cast<std::uint64_t>(q), c.pK);
        for (int t = 0; t < c.n(); ++t)
            a[static_cast<std::size_t>(t)] = mulmod(a[static_cast<std::size_t>(t)], s, c.pK);
    }
    for (int step = 0; step < r; ++step) {
        Coeffs b{};
        for (int j = 0; j < f; ++j) {
            for (int i = 0; i + 1 < e; ++i)
                b[static_cast<std::size_t>((i + 1) * f + j)] = a[static_cast<std::size_t>(i * f + j)];
            b[static_cast<std::size_t>(j)] = mulmod(c.desc.p % c.pK, a[static_cast<std::size_t>((e - 1) * f + j)], c.pK);
        }
        a = b;
    }
    return a;
}

// Divide by pi^w; the element must have valuation >= w.
Coeffs ring_div_pi(const FieldContext& c, Coeffs a, int w) {
    const int e = c.desc.e, f = c.desc.f;
    for (int step = 0; step < w; ++step) {
        Coeffs b{};
        for (int j = 0; j < f; ++j) {
            for (int i = 1; i < e; ++i)
                b[static_cast<std::size_t>((i - 1) * f + j)] = a[static_cast<std::size_t>(i * f + j)];
            b[static_cast<std::size_t>((e - 1) * f + j)] = a[static_cast<std::size_t>(j)] / c.desc.p;
        }
        a = b;
    }
    return a;
}

Coeffs residue_inverse(const FieldContext& c, const Coeffs& u) {
    // Brute force over F_q, q = p^f <= a few hundred at desk scale.
    const int f = c.desc.f;
    const std::uint64_t p = c.desc.p;
    std::uint64_t q = checked_pow(p, static_cast<unsigned>(f));
    Coeffs low{};
    for (int j = 0; j < f; ++j)
        low[static_cast<std::size_t>(j)] = u[static_cast<std::size_t>(j)] % p;
    for (std::uint64_t code = 1; code < q; ++code) {
        Coeffs y{};
        std::uint64_t t = code;
        for (int j = 0; j < f; ++j) {
            y[static_cast<std::size_t>(j)] = t % p;
            t /= p;
        }
        Coeffs prod = ring_mul(c, low, y);
        bool one = prod[0] % p == 1;
        for (int j = 1; j < f && one; ++j)
            one = prod[static_cast<std::size_t>(j)] % p == 0;
        if (one)
            return y;
    }
    throw DomainError("residue is not invertible");
}

}  // namespace
}  // namespace detail

using detail::FieldContext;

// ---- Field -------------------------------------------------------------------

Field::Field(std::shared_ptr<const detail::FieldContext> ctx) : ctx_(std::move(ctx)) {}

Field::Field(const FieldDesc& desc) {
    if (!is_prime(desc.p))
        throw DomainError("p = " + std::to_string(desc.p) + " is not prime");
    if (desc.e < 1 || desc.e > kMaxRamification)
        throw DomainError("ramification index must lie in [1, " + std::to_string(kMaxRamification) + "]");
    if (desc.f < 1 || desc.f > kMaxResidueDegree)
        throw DomainError("residue degree must lie in [1, " + std::to_string(kMaxResidueDegree) + "]");
    if (desc.N < 1)
        throw DomainError("precision N must be >= 1");
    auto ctx = std::make_shared<FieldContext>();
    ctx->desc = desc;
    ctx->K = static_cast<unsigned>((desc.N + desc.e - 1) / desc.e + 1);
    ctx->pK = checked_pow(desc.p, ctx->K);
    ctx->g_residue = detail::first_irreducible(desc.p, desc.f);
    if (desc.f == 1)
        ctx->g = {0};  // unused: omega^1 never overflows degree < 1
    else
        ctx->g = ctx->g_residue;
    ctx_ = std::move(ctx);
}

const FieldDesc& Field::desc() const { return ctx_->desc; }

std::vector<std::uint64_t> Field::residue_polynomial() const { return ctx_->g_residue; }

bool Field::same_as(const Field& other) const { return ctx_ == other.ctx_ || ctx_->desc == other.ctx_->desc; }

FieldElem Field::zero() const { return FieldElem(ctx_); }

FieldElem Field::one() const { return from_int(1); }

FieldElem Field::from_int(std::int64_t n) const { return from_integer(Integer(n)); }

FieldElem Field::from_integer(const Integer& n) const {
    FieldElem x(ctx_);
    if (n == 0)
        return x;
    int v = vp(n, p());
    Integer u = n;
    for (int i = 0; i < v; ++i)
        u /= p();
    x.exact_zero_ = false;
    x.val_ = static_cast<std::int64_t>(v) * e();
    x.relprec_ = precision();
    x.unit_[0] = reduce(u, ctx_->pK);
    return x;
}

FieldElem Field::pi() const {
    FieldElem x = one();
    return x.shifted(1);
}

FieldElem Field::omega() const {
    if (f() == 1)
        return one();
    FieldElem x(ctx_);
    x.exact_zero_ = false;
    x.val_ = 0;
    x.relprec_ = precision();
    x.unit_[1] = 1;
    return x;
}

FieldElem Field::from_coefficients(std::span<const Integer> coeffs) const {
    if (coeffs.size() != static_cast<std::size_t>(degree()))
        throw DomainError("expected " + std::to_string(degree()) + " coefficients");
    FieldElem acc = zero();
    FieldElem pi_pow = one();
    FieldElem w = omega();
    for (int i = 0; i < e(); ++i) {
        FieldElem w_pow = pi_pow;
        for (int j = 0; j < f(); ++j) {
            const Integer& c = coeffs[static_cast<std::size_t>(i * f() + j)];
            if (c != 0)
                acc += from_integer(c) * w_pow;
            w_pow *= w;
        }
        pi_pow = pi_pow.shifted(1);
    }
    return acc;
}

// ---- FieldElem -----------------------------------------------------------------

FieldElem::FieldElem(std::shared_ptr<const FieldContext> ctx) : ctx_(std::move(ctx)) {}

Field FieldElem::field() const {
    if (!ctx_)
        throw DomainError("field element without a field");
    return Field(ctx_);
}

const FieldDesc& FieldElem::desc() const {
    if (!ctx_)
        throw DomainError("field element without a field");
    return ctx_->desc;
}

void FieldElem::require_same(const FieldElem& o) const {
    if (ctx_ != o.ctx_ && !(ctx_->desc == o.ctx_->desc))
        throw DomainError("mismatched fields: " + drinfeld::to_string(ctx_->desc) + " vs " +
                          drinfeld::to_string(o.ctx_->desc));
}

Valuation FieldElem::valuation() const {
    const int e = ctx_ ? ctx_->desc.e : 1;
    if (exact_zero_)
        return {std::numeric_limits<std::int64_t>::max(), e, true};
    if (relprec_ == 0)
        return {val_, e, true};
    return {val_, e, false};
}

std::int64_t FieldElem::absolute_precision() const {
    if (exact_zero_)
        return std::numeric_limits<std::int64_t>::max();
    return val_ + relprec_;
}

bool FieldElem::is_unit() const { return !is_zero_at_precision() && val_ == 0; }

FieldElem FieldElem::operator-() const {
    FieldElem r = *this;
    if (!r.is_zero_at_precision())
        for (int k = 0; k < ctx_->n(); ++k)
            r.unit_[static_cast<std::size_t>(k)] = submod(0, r.unit_[static_cast<std::size_t>(k)], ctx_->pK);
    return r;
}

void FieldElem::normalize_after_sum(std::int64_t abs_prec) {
    // unit_ holds an arbitrary ring element sitting at valuation val_.
    const FieldContext& c = *ctx_;
    int w = detail::ring_val(c, unit_);
    if (val_ + w >= abs_prec) {
        val_ = abs_prec;
        relprec_ = 0;
        unit_ = Coeffs{};
        return;
    }
    unit_ = detail::ring_div_pi(c, unit_, w);
    val_ += w;
    relprec_ = static_cast<int>(std::min<std::int64_t>(abs_prec - val_, c.desc.N));
}

FieldElem& FieldElem::operator+=(const FieldElem& o) {
    if (o.exact_zero_)
        return *this;
    if (exact_zero_) {
        *this = o;
        return *this;
    }
    require_same(o);
    const std::int64_t A = std::min(absolute_precision(), o.absolute_precision());
    const bool live_a = relprec_ > 0, live_b = o.relprec_ > 0;
    if (!live_a && !live_b) {
        val_ = A;
        relprec_ = 0;
        unit_ = Coeffs{};
        return *this;
    }
    std::int64_t v0 = std::numeric_limits<std::int64_t>::max();
    if (live_a)
        v0 = std::min(v0, val_);
    if (live_b)
        v0 = std::min(v0, o.val_);
    if (v0 >= A) {
        val_ = A;
        relprec_ = 0;
        unit_ = Coeffs{};
        return *this;
    }
    Coeffs s{};
    if (live_a)
        s = detail::ring_add(*ctx_, s, detail::ring_mul_pi(*ctx_, unit_, val_ - v0));
    if (live_b)
        s = detail::ring_add(*ctx_, s, detail::ring_mul_pi(*ctx_, o.unit_, o.val_ - v0));
    unit_ = s;
    val_ = v0;
    normalize_after_sum(A);
    return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& o) { return *this += -o; }

FieldElem& FieldElem::operator*=(const FieldElem& o) {
    if (exact_zero_)
        return *this;
    if (o.exact_zero_) {
        *this = o;
        return *this;
    }
    require_same(o);
    val_ += o.val_;
    if (relprec_ == 0 || o.relprec_ == 0) {
        relprec_ = 0;
        unit_ = Coeffs{};
        return *this;
    }
    relprec_ = std::min(relprec_, o.relprec_);
    unit_ = detail::ring_mul(*ctx_, unit_, o.unit_);
    return *this;
}

FieldElem FieldElem::inverse() const {
    if (is_zero_at_precision())
        throw PrecisionError("division by an element that is zero at working precision");
    const FieldContext& c = *ctx_;
    Coeffs y = detail::residue_inverse(c, unit_);
    Coeffs two{};
    two[0] = 2 % c.pK;
    // Newton: y <- y (2 - u y); precision doubles each step.
    for (int prec = 1; prec < c.desc.e * static_cast<int>(c.K); prec *= 2) {
        Coeffs uy = detail::ring_mul(c, unit_, y);
        Coeffs corr{};
        for (int k = 0; k < c.n(); ++k)
            corr[static_cast<std::size_t>(k)] = submod(two[static_cast<std::size_t>(k)], uy[static_cast<std::size_t>(k)], c.pK);
        y = detail::ring_mul(c, y, corr);
    }
    FieldElem r = *this;
    r.val_ = -val_;
    r.unit_ = y;
    return r;
}

FieldElem& FieldElem::operator/=(const FieldElem& o) {
    if (o.exact_zero_ || o.relprec_ == 0)
        throw PrecisionError("division by an element that is zero at working precision");
    return *this *= o.inverse();
}

FieldElem FieldElem::pow(std::int64_t k) const {
    if (k < 0)
        return inverse().pow(-k);
    FieldElem base = *this;
    FieldElem r = field().one();
    while (k) {
        if (k & 1)
            r *= base;
        k >>= 1;
        if (k)
            base *= base;
    }
    return r;
}

FieldElem FieldElem::shifted(std::int64_t k) const {
    FieldElem r = *this;
    if (!r.exact_zero_)
        r.val_ += k;
    return r;
}

bool FieldElem::congruent(const FieldElem& other) const { return (*this - other).is_zero_at_precision(); }

std::vector<Integer> FieldElem::coefficients() const {
    const FieldContext& c = *ctx_;
    const int e = c.desc.e, f = c.desc.f;
    std::vector<Integer> out(static_cast<std::size_t>(e * f), 0);
    if (exact_zero_ || relprec_ == 0)
        return out;
    if (val_ < 0)
        throw DomainError("coefficients() requires a pi-adic integer");
    // x = pi^val * u computed over Z, then truncated per coefficient.
    std::vector<Integer> u(out.size());
    for (std::size_t k = 0; k < u.size(); ++k)
        u[k] = unit_[k];
    for (std::int64_t step = 0; step < val_; ++step) {
        std::vector<Integer> b(u.size(), 0);
        for (int j = 0; j < f; ++j) {
            for (int i = 0; i + 1 < e; ++i)
                b[static_cast<std::size_t>((i + 1) * f + j)] = u[static_cast<std::size_t>(i * f + j)];
            b[static_cast<std::size_t>(j)] = u[static_cast<std::size_t>((e - 1) * f + j)] * c.desc.p;
        }
        u = std::move(b);
    }
    const std::int64_t A = absolute_precision();
    for (int i = 0; i < e; ++i) {
        std::int64_t digits = (A - i + e - 1) / e;
        Integer mod = 1;
        for (std::int64_t t = 0; t < digits; ++t)
            mod *= c.desc.p;
        for (int j = 0; j < f; ++j) {
            Integer r = u[static_cast<std::size_t>(i * f + j)] % mod;
            if (r < 0)
                r += mod;
            out[static_cast<std::size_t>(i * f + j)] = r;
        }
    }
    // The stored unit is only reliable to relprec digits; coefficients beyond A
    // were cut above.
    return out;
}

std::string FieldElem::to_string() const {
    if (!ctx_ || exact_zero_)
        return "0";
    std::ostringstream os;
    if (relprec_ == 0) {
        os << "O(pi^" << val_ << ")";
        return os.str();
    }
    os << "pi^" << val_ << "*[";
    for (int k = 0; k < ctx_->n(); ++k)
        os << (k ? "," : "") << unit_[static_cast<std::size_t>(k)];
    os << "] + O(pi^" << absolute_precision() << ")";
    return os.str();
}

std::vector<FieldElem> normalize_unimodular(std::span<const FieldElem> v) {
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    std::size_t pivot = v.size();
    for (std::size_t i = 0; i < v.size(); ++i) {
        Valuation w = v[i].valuation();
        if (w.exact() && w.pi_units < best) {
            best = w.pi_units;
            pivot = i;
        }
    }
    if (pivot == v.size())
        throw DomainError("cannot normalize the zero vector");
    for (const auto& x : v) {
        Valuation w = x.valuation();
        if (!x.is_exact_zero() && w.bounded_below && w.pi_units <= best)
            throw PrecisionError("minimal coordinate valuation is ambiguous at working precision");
    }
    FieldElem s = v[pivot].inverse();
    std::vector<FieldElem> out;
    out.reserve(v.size());
    for (const auto& x : v)
        out.push_back(x * s);
    return out;
}

FieldElem linear_form(std::span<const std::int64_t> a, std::span<const FieldElem> z) {
    if (a.size() != z.size())
        throw DomainError("dimension mismatch in linear form");
    if (z.empty())
        throw DomainError("empty linear form");
    Field F = z[0].field();
    FieldElem acc = F.zero();
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0)
            acc += F.from_int(a[i]) * z[i];
    return acc;
}

}  // namespace drinfeld
