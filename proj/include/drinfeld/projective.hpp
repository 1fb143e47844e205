#pragma once

// Points of P^d(Z/p^n), which double as the level-n hyperplanes H_n.

#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "drinfeld/padic.hpp"

namespace drinfeld {

inline constexpr std::uint64_t kDefaultPointCap = 1'000'000;

// Integer square matrices acting on dual (row) vectors.
using IntVector = std::vector<std::int64_t>;
using IntMatrix = std::vector<IntVector>;

IntMatrix identity_matrix(int size);
IntMatrix matmul(const IntMatrix& a, const IntMatrix& b);
IntVector row_times(std::span<const std::int64_t> a, const IntMatrix& g);
Integer determinant(const IntMatrix& g);
IntMatrix adjugate(const IntMatrix& g);

// Lifts of level-n classes to actual dual vectors in Z^{d+1}.
enum class RepSystem {
    standard,  // coordinates in [0, p^n)
    mirrored,  // nonzero coordinates other than the leading 1 moved to (-p^n, 0)
};

std::string to_string(RepSystem r);
RepSystem rep_system_from_string(const std::string& s);

class ProjPoint {
public:
    // Canonicalizes any vector with a unit coordinate mod p: the first unit
    // coordinate is scaled to 1 and everything reduced mod p^level.
    ProjPoint(std::uint64_t p, int level, std::span<const std::uint64_t> coords);

    int dim() const { return static_cast<int>(rep_.size()) - 1; }
    std::uint64_t p() const { return p_; }
    int level() const { return level_; }
    std::uint64_t modulus() const { return modulus_; }
    const std::vector<std::uint64_t>& rep() const { return rep_; }

    IntVector lift(RepSystem system = RepSystem::standard) const;
    std::string to_string() const;

    friend bool operator==(const ProjPoint& a, const ProjPoint& b) = default;
    friend std::strong_ordering operator<=>(const ProjPoint& a, const ProjPoint& b) {
        if (auto c = a.p_ <=> b.p_; c != 0)
            return c;
        if (auto c = a.level_ <=> b.level_; c != 0)
            return c;
        return a.rep_ <=> b.rep_;
    }

private:
    std::uint64_t p_ = 2;
    int level_ = 1;
    std::uint64_t modulus_ = 2;
    std::vector<std::uint64_t> rep_;
};

// Canonical level-n representative of an arbitrary nonzero integer vector:
// divide out the content's p-part, then canonicalize mod p^n.
ProjPoint canonical_point(std::span<const std::int64_t> v, std::uint64_t p, int level);

// Closed form p^{(n-1)d} (p^{d+1} - 1)/(p - 1).
std::uint64_t point_count(int d, std::uint64_t p, int level);

// All canonical representatives, sorted lexicographically.
std::vector<ProjPoint> enumerate_points(int d, std::uint64_t p, int level,
                                        std::uint64_t cap = kDefaultPointCap);

ProjPoint reduce_point(const ProjPoint& P);
ProjPoint reduce_to(const ProjPoint& P, int level);
// The canonical section H_n -> H_m (m >= n): the same integer representative.
ProjPoint lift_to(const ProjPoint& P, int level);

// (d+1)x(d+1) matrix over Z/p^n.
class ModMatrix {
public:
    ModMatrix(std::uint64_t p, int level, IntMatrix entries);

    int size() const { return static_cast<int>(a_.size()); }
    std::uint64_t p() const { return p_; }
    int level() const { return level_; }
    std::uint64_t modulus() const { return modulus_; }
    std::uint64_t operator()(int i, int j) const { return a_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }

    static ModMatrix identity(std::uint64_t p, int level, int size);
    // Entries uniform mod p^n, rejected until the determinant is a unit.
    static ModMatrix random_invertible(std::uint64_t p, int level, int size, std::mt19937_64& rng);

    bool invertible() const;
    // Throws DomainError when the determinant is not a unit mod p.
    ModMatrix inverse() const;
    ModMatrix reduced(int level) const;
    IntMatrix to_int() const;

    friend ModMatrix operator*(const ModMatrix& a, const ModMatrix& b);
    friend bool operator==(const ModMatrix& a, const ModMatrix& b) = default;

private:
    std::uint64_t p_;
    int level_;
    std::uint64_t modulus_;
    std::vector<std::vector<std::uint64_t>> a_;
};

// H_a -> H_{a g^{-1}}, so that l_{g.a}(g z) = l_a(z).
ProjPoint act(const ModMatrix& g, const ProjPoint& P);
// Same action when g^{-1} is already known.
ProjPoint act_with_inverse(const ModMatrix& g_inverse, const ProjPoint& P);

}  // namespace drinfeld
