#pragma once

// The integration map at finite level: products of linear forms indexed by a
// mass-zero vector, their values at points of the symmetric space, their
// residues along edges and two-point congruence certificates.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "drinfeld/distributions.hpp"
#include "drinfeld/harmonic.hpp"
#include "drinfeld/tau.hpp"

namespace drinfeld {

// prod_a (l_a / l_{H_0})^{m_a}, l_a taken through the lifts of `reps`.
class FormalProduct {
public:
    using Exponents = std::map<ProjPoint, Integer>;

    // The basepoint defaults to (1, 0, ..., 0). Throws unless the exponents sum to 0.
    FormalProduct(int d, std::uint64_t p, int level, Exponents exponents, RepSystem reps = RepSystem::standard,
                  std::optional<ProjPoint> basepoint = std::nullopt);

    int dim() const { return d_; }
    std::uint64_t p() const { return p_; }
    int level() const { return level_; }
    const ProjPoint& basepoint() const { return basepoint_; }
    const Exponents& exponents() const { return exponents_; }
    RepSystem reps() const { return reps_; }
    bool is_empty() const { return exponents_.empty(); }

    // Exponents keyed by the actual integer dual vectors, basepoint included.
    std::map<IntVector, Integer> lifted() const;

    // Adds exponents; both sides must share level and representative system.
    FormalProduct operator*(const FormalProduct& o) const;
    FormalProduct with_basepoint(const ProjPoint& h0) const;

private:
    int d_;
    std::uint64_t p_;
    int level_;
    Exponents exponents_;
    RepSystem reps_;
    ProjPoint basepoint_;
};

FormalProduct alpha_level(const MassZeroVector& mu, RepSystem reps = RepSystem::standard);

// prod l_a(z)^{m_a} for arbitrary integer forms; PrecisionError when a factor
// vanishes at working precision.
FieldElem evaluate_lifted(const std::map<IntVector, Integer>& factors, std::span<const FieldElem> z);

// Requires 1 <= z.certified_level() < u.level().
FieldElem evaluate_product(const FormalProduct& u, const SymmetricSpacePoint& z);
// No certification check; used by the residue oracle on tube points.
FieldElem evaluate_raw(const FormalProduct& u, std::span<const FieldElem> z);

// sum_a m_a slope(a, sigma). DomainError below the edge's locality depth.
Integer dlog_residue(const FormalProduct& u, const PointedSimplex& edge);
// The same quantity read off valuations at two tube points.
int dlog_residue_oracle(const FormalProduct& u, const EdgeSampler& sampler);

// Valuation of r(z1)/r(z2) - 1. `infinite` when the formal ratio is empty;
// `lower_bound` when the difference vanished at working precision.
struct Margin {
    bool infinite = false;
    bool lower_bound = false;
    std::int64_t pi_units = 0;
    int e = 1;

    Rational p_units() const { return Rational(pi_units, e); }
    bool at_least(std::int64_t threshold_p_units) const;
    std::string to_string() const;
};

struct Certificate {
    std::string kind;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::int64_t threshold = 0;  // p-units
    Margin margin;
    bool pass = false;
};

// Two-point margin of the ratio prod(num)/prod(den).
Margin two_point_margin(const std::map<IntVector, Integer>& num, const std::map<IntVector, Integer>& den,
                        const SymmetricSpacePoint& z1, const SymmetricSpacePoint& z2);

// alpha_{n'}(mu) against alpha_n(mu) through `compare` lifts, threshold n - i.
// The standard/mirrored choice gives the representative-swap variant.
Certificate convergence_certificate(const DistributionFamily& fam, const SymmetricSpacePoint& z1,
                                    const SymmetricSpacePoint& z2, int i, int n, int n_prime,
                                    RepSystem compare = RepSystem::standard);

// Restriction from U_{i+1} to U_i: alpha_{n+1}, which certifies on U_{i+1} with
// the same gap, against alpha_n on points of U_i; threshold n - i.
Certificate restriction_certificate(const DistributionFamily& fam, const SymmetricSpacePoint& z1,
                                    const SymmetricSpacePoint& z2, int i, int n);

// alpha(g mu)(z) / alpha(mu)(g^{-1} z) compared at two points; threshold
// level(mu) - i with i the larger certified level of the four points.
Certificate equivariance_certificate(const IntMatrix& g, const MassZeroVector& mu, const SymmetricSpacePoint& z1,
                                     const SymmetricSpacePoint& z2);

// g^{-1} z up to a scalar: adj(g) z.
std::vector<FieldElem> act_point_inverse(const IntMatrix& g, std::span<const FieldElem> z);

}  // namespace drinfeld
