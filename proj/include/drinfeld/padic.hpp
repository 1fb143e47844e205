#pragma once

// Truncated arithmetic in L = Q_p(pi, omega): pi^e = p (Eisenstein), omega a root of a
// monic irreducible polynomial of degree f mod p (unramified). Elements carry a
// pi-adic valuation, a unit part and a relative precision; every operation tracks
// how many pi-adic digits of the result are still meaningful.

#include <array>
#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include "drinfeld/error.hpp"

namespace drinfeld {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::rational<std::int64_t>;

// ---- small integer helpers -------------------------------------------------

bool is_prime(std::uint64_t n);

// b^k, throws DomainError when the result does not fit in 62 bits.
std::uint64_t checked_pow(std::uint64_t b, unsigned k);

// p-adic valuation of a nonzero integer.
int vp(std::int64_t x, std::uint64_t p);
int vp(const Integer& x, std::uint64_t p);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t k, std::uint64_t m);
// Inverse of a unit modulo m (extended Euclid). Throws DomainError for non-units.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);
// Least nonnegative residue of x modulo m.
std::uint64_t reduce(std::int64_t x, std::uint64_t m);
std::uint64_t reduce(const Integer& x, std::uint64_t m);

// ---- field description -----------------------------------------------------

inline constexpr int kMaxRamification = 6;
inline constexpr int kMaxResidueDegree = 3;
inline constexpr int kMaxDegree = kMaxRamification * kMaxResidueDegree;

struct FieldDesc {
    std::uint64_t p = 2;
    int e = 1;  // ramification index
    int f = 1;  // residue degree
    int N = 20; // working precision, in powers of pi

    friend bool operator==(const FieldDesc&, const FieldDesc&) = default;
};

std::string to_string(const FieldDesc& desc);

// Valuation in units of 1/e. `bounded_below` marks an element that is zero at
// the available precision: its valuation is only known to be >= pi_units / e.
struct Valuation {
    std::int64_t pi_units = 0;
    int e = 1;
    bool bounded_below = false;

    Rational value() const { return Rational(pi_units, e); }
    bool exact() const { return !bounded_below; }
};

namespace detail {
struct FieldContext;
}

class FieldElem;

// Shared handle to a field L; cheap to copy.
class Field {
public:
    explicit Field(const FieldDesc& desc);

    const FieldDesc& desc() const;
    std::uint64_t p() const { return desc().p; }
    int e() const { return desc().e; }
    int f() const { return desc().f; }
    int precision() const { return desc().N; }
    // Degree e*f of L over Q_p.
    int degree() const { return e() * f(); }
    // Coefficients g_0..g_{f-1} of the monic polynomial omega satisfies mod p.
    std::vector<std::uint64_t> residue_polynomial() const;

    FieldElem zero() const;
    FieldElem one() const;
    FieldElem from_int(std::int64_t n) const;
    FieldElem from_integer(const Integer& n) const;
    FieldElem pi() const;
    // Generator of the unramified part; equals 1 when f == 1.
    FieldElem omega() const;
    // sum_{i<e, j<f} c[i*f + j] pi^i omega^j
    FieldElem from_coefficients(std::span<const Integer> coeffs) const;

    bool same_as(const Field& other) const;

private:
    friend class FieldElem;
    explicit Field(std::shared_ptr<const detail::FieldContext> ctx);
    std::shared_ptr<const detail::FieldContext> ctx_;
};

class FieldElem {
public:
    FieldElem() = default;

    Field field() const;
    const FieldDesc& desc() const;

    Valuation valuation() const;
    // Absolute precision in pi-units; numeric_limits max for the exact zero.
    std::int64_t absolute_precision() const;
    int relative_precision() const { return exact_zero_ ? std::numeric_limits<int>::max() : relprec_; }
    bool is_exact_zero() const { return exact_zero_; }
    bool is_zero_at_precision() const { return exact_zero_ || relprec_ == 0; }
    bool is_unit() const;

    FieldElem operator-() const;
    FieldElem& operator+=(const FieldElem& o);
    FieldElem& operator-=(const FieldElem& o);
    FieldElem& operator*=(const FieldElem& o);
    FieldElem& operator/=(const FieldElem& o);
    friend FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
    friend FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
    friend FieldElem operator*(FieldElem a, const FieldElem& b) { return a *= b; }
    friend FieldElem operator/(FieldElem a, const FieldElem& b) { return a /= b; }

    FieldElem inverse() const;
    FieldElem pow(std::int64_t k) const;
    // Multiply by pi^k (k may be negative); exact.
    FieldElem shifted(std::int64_t k) const;

    // True when a - b vanishes at the precision available to both.
    bool congruent(const FieldElem& other) const;

    // Coefficients of x in the basis pi^i omega^j, reduced modulo p^ceil(A/e)
    // where A is the absolute precision. Requires valuation >= 0.
    std::vector<Integer> coefficients() const;

    std::string to_string() const;

private:
    friend class Field;
    using Coeffs = std::array<std::uint64_t, kMaxDegree>;

    FieldElem(std::shared_ptr<const detail::FieldContext> ctx);
    void require_same(const FieldElem& o) const;
    void normalize_after_sum(std::int64_t abs_prec);

    std::shared_ptr<const detail::FieldContext> ctx_;
    bool exact_zero_ = true;
    std::int64_t val_ = 0;  // valuation, or absolute precision when relprec_ == 0
    int relprec_ = 0;
    Coeffs unit_{};
};

// Scale v so that its first coordinate of minimal valuation equals 1. The result
// is constant on L^*-orbits and has minimal coordinate valuation 0.
std::vector<FieldElem> normalize_unimodular(std::span<const FieldElem> v);

// l_a(z) = sum_i a_i z_i for an integer dual vector a.
FieldElem linear_form(std::span<const std::int64_t> a, std::span<const FieldElem> z);

}  // namespace drinfeld
