#pragma once

// Residues of dlog of linear-form ratios along pointed edges.

#include <optional>
#include <vector>

#include "drinfeld/building.hpp"
#include "drinfeld/distributions.hpp"
#include "drinfeld/tau.hpp"

namespace drinfeld {

// Calibrated once on the standard edge for p = 2, d = 1: the residue of
// dlog(alpha(mu)) equals kResidueSign * pair_distribution(mu, sigma).
inline constexpr int kResidueSign = -1;

inline constexpr int kDefaultOracleRamification = 3;

// 1 when a, scaled into M_0 \ p M_0, lies in M_1; else 0. Requires k = 1.
int slope(std::span<const std::int64_t> a, const PointedSimplex& edge);
int slope(const ProjPoint& a, const PointedSimplex& edge);

// slope(b) - slope(a): the residue of dlog(l_b / l_a) along the edge.
int lambda_sigma(const PointedSimplex& edge, std::span<const std::int64_t> a, std::span<const std::int64_t> b);
int lambda_sigma(const PointedSimplex& edge, const ProjPoint& a, const ProjPoint& b);

// Two points z(t1), z(t2) of the open tube over an edge, built over
// Q_p(pi), pi^e = p, with t1 = 1/e and t2 = (e-1)/e.
class EdgeSampler {
public:
    EdgeSampler(const PointedSimplex& edge, int e_oracle = kDefaultOracleRamification);

    const PointedSimplex& edge() const { return edge_; }
    const Field& field() const { return field_; }
    const std::vector<FieldElem>& z1() const { return z1_; }
    const std::vector<FieldElem>& z2() const { return z2_; }
    // Height difference of the two sample points, in pi-units.
    int height_gap() const { return gap_; }

    // (v(u(z2)) - v(u(z1))) / (t2 - t1); PrecisionError unless integral.
    int slope_of(const FieldElem& at_z1, const FieldElem& at_z2) const;
    // Measured growth rate of v(l_a).
    int slope(std::span<const std::int64_t> a) const;

private:
    PointedSimplex edge_;
    Field field_;
    std::vector<FieldElem> z1_, z2_;
    int gap_ = 1;
};

int lambda_oracle(const PointedSimplex& edge, std::span<const std::int64_t> a, std::span<const std::int64_t> b,
                  int e_oracle = kDefaultOracleRamification);
int lambda_oracle(const EdgeSampler& sampler, std::span<const std::int64_t> a, std::span<const std::int64_t> b);

// mu(lambda_sigma) with mu = sum c_x delta_x read through delta_a - delta_b <-> (H_a, H_b):
// equals -sum_x mu(x) slope(x). DomainError below the edge's locality depth.
Integer pair_distribution(const MassZeroVector& mu, const PointedSimplex& edge);

// The same vector one level up through the canonical section of H_n -> H_m
// (identical integer representatives); not a transition map.
MassZeroVector section_lift(const MassZeroVector& mu, int level);

// d = 1: sum over the p+1 edges leaving v of lambda_sigma(H_a, H_b) is zero.
bool check_kirchhoff(const Lattice& v, const ProjPoint& a, const ProjPoint& b);

struct CochainEntry {
    std::size_t edge;
    ProjPoint a, b;
    int value;
};

struct CochainTable {
    std::vector<PointedSimplex> edges;
    std::vector<CochainEntry> entries;

    // Values in {-1, 0, 1} and antisymmetric in the pair.
    bool well_formed() const;
};

CochainTable cochain_table(const std::vector<PointedSimplex>& edges, const std::vector<ProjPoint>& points);

}  // namespace drinfeld
