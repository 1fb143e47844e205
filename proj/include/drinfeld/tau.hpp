#pragma once

// Points of the symmetric space over L, the reduction map to the building,
// the covers by level and the tubes over cells.

#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "drinfeld/building.hpp"
#include "drinfeld/padic.hpp"

namespace drinfeld {

inline constexpr int kDefaultCertifyLevel = 4;

// <z, p^s row>.
FieldElem pair(const ScaledVector& a, std::span<const FieldElem> z);
FieldElem pair(std::span<const std::int64_t> a, std::span<const FieldElem> z);

// A unimodular coordinate vector together with the smallest n <= max_level
// such that z lies in the open cover member of level n (0 if none was found).
class SymmetricSpacePoint {
public:
    explicit SymmetricSpacePoint(std::span<const FieldElem> coords, int max_level = kDefaultCertifyLevel);

    const std::vector<FieldElem>& coords() const { return coords_; }
    int dim() const { return static_cast<int>(coords_.size()) - 1; }
    Field field() const { return coords_[0].field(); }
    int certified_level() const { return level_; }

private:
    std::vector<FieldElem> coords_;
    int level_ = 0;
};

// Valuations are compared in pi-units; the level-n bound n becomes n*e.
bool member_open_cover(std::span<const FieldElem> z, int n);
bool member_closed_cover(std::span<const FieldElem> z, int n);
int certify_level(std::span<const FieldElem> z, int max_level);

struct BuildingPoint {
    PointedSimplex simplex;
    std::vector<Rational> weights;  // t_0..t_k, positive, sum 1

    // Homothety key of each vertex -> its weight; independent of the pointing.
    std::map<std::string, Rational> vertex_weights() const;
};

BuildingPoint tau(std::span<const FieldElem> z);

enum class TubeMode { closed, open };

bool member_tube(std::span<const FieldElem> z, const PointedSimplex& sigma, TubeMode mode);

// (X_0, ..., X_d) in the adapted basis; throws unless z is in the closed tube.
std::vector<FieldElem> tube_coordinates(std::span<const FieldElem> z, const PointedSimplex& sigma);

// z -> g z (column action), paired with g acting on lattices by M g^{-1}.
std::vector<FieldElem> act_point(const IntMatrix& g, std::span<const FieldElem> z);

// A point z of the open tube over sigma with <z, f_{d_i}> = pi^{heights[i]}:
// heights are pi-exponents 0 = m_0 < m_1 < ... < m_k < e. Within block i the
// values are pi^{m_i} omega^r, which needs f >= max e_i. With an rng every value
// is further multiplied by a random 1-unit.
std::vector<FieldElem> tube_point(const PointedSimplex& sigma, const Field& L, std::span<const int> heights,
                                  std::mt19937_64* rng = nullptr);

// Faces of sigma, the vertices adjacent to M_0 and the edges from M_0 to them.
std::vector<PointedSimplex> candidate_cells(const PointedSimplex& sigma);

// Random strictly increasing heights 0 = m_0 < ... < m_k < e.
std::vector<int> random_heights(int k, int e, std::mt19937_64& rng);

}  // namespace drinfeld
