#pragma once

// Mass-zero vectors in Z[H_n] and transition-compatible families of them.

#include <cstdint>
#include <map>
#include <vector>

#include "drinfeld/projective.hpp"

namespace drinfeld {

class MassZeroVector {
public:
    using Entries = std::map<ProjPoint, Integer>;

    // The zero vector at level n.
    MassZeroVector(int d, std::uint64_t p, int level);
    // Throws DomainError unless the coefficients sum to zero and all points
    // share (d, p, level).
    MassZeroVector(int d, std::uint64_t p, int level, const Entries& entries);

    int dim() const { return d_; }
    std::uint64_t p() const { return p_; }
    int level() const { return level_; }
    // Nonzero coefficients only.
    const Entries& entries() const { return entries_; }
    Integer coefficient(const ProjPoint& x) const;
    bool is_zero() const { return entries_.empty(); }
    Integer total_mass() const;

    MassZeroVector& operator+=(const MassZeroVector& o);
    MassZeroVector& operator-=(const MassZeroVector& o);
    MassZeroVector& operator*=(const Integer& c);
    friend MassZeroVector operator+(MassZeroVector a, const MassZeroVector& b) { return a += b; }
    friend MassZeroVector operator-(MassZeroVector a, const MassZeroVector& b) { return a -= b; }
    friend MassZeroVector operator*(const Integer& c, MassZeroVector a) { return a *= c; }
    friend bool operator==(const MassZeroVector&, const MassZeroVector&) = default;

private:
    void require_compatible(const MassZeroVector& o) const;
    void add(const ProjPoint& x, const Integer& c);

    int d_;
    std::uint64_t p_;
    int level_;
    Entries entries_;
};

// delta_a - delta_b.
MassZeroVector dirac_pair(const ProjPoint& a, const ProjPoint& b);

// Sum of coefficients along the fibers of H_{n+1} -> H_n.
MassZeroVector pushforward(const MassZeroVector& v);

// Coefficients transported along act(g, .); g must have the vector's level.
MassZeroVector act_distribution(const ModMatrix& g, const MassZeroVector& v);

// v = sum_x c_x (delta_x - delta_{x0}); returns the c_x (x != x0).
MassZeroVector::Entries dirac_decomposition(const MassZeroVector& v, const ProjPoint& x0);

class DistributionFamily {
public:
    // levels[m-1] is the level-m vector; compatibility is checked.
    explicit DistributionFamily(std::vector<MassZeroVector> levels);
    // Top-level vector, lower levels by pushforward.
    static DistributionFamily from_top(const MassZeroVector& top);

    int n_max() const { return static_cast<int>(levels_.size()); }
    const MassZeroVector& at(int level) const;
    const std::vector<MassZeroVector>& levels() const { return levels_; }

private:
    std::vector<MassZeroVector> levels_;
};

// True when every level is the pushforward of the next.
bool check_family(const std::vector<MassZeroVector>& levels);

// Uniformly random point of P^d(Z/p^n) (rejection on primitivity).
ProjPoint random_point(int d, std::uint64_t p, int level, std::mt19937_64& rng);

// `sparsity` random Dirac pairs at level n_max with coefficients in
// [-coeff_bound, coeff_bound]; lower levels by pushforward.
DistributionFamily random_family(int d, std::uint64_t p, int n_max, std::uint64_t seed, int sparsity,
                                 int coeff_bound = 5);

}  // namespace drinfeld
