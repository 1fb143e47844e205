#pragma once

// The Bruhat-Tits building of PGL_{d+1}(Q_p). Lattices live in the space of
// dual (row) vectors a, so that a point z is seen through the norm a -> |<z,a>|.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "drinfeld/intlinalg.hpp"
#include "drinfeld/projective.hpp"

namespace drinfeld {

// A row vector p^scale * row with row in Z^{d+1}.
struct ScaledVector {
    IntVector row;
    int scale = 0;
};

class Lattice {
public:
    // Z_p-span of p^scale * rows. The rows must have full rank d+1.
    static Lattice from_generators(std::uint64_t p, const BigMatrix& rows, int scale = 0);
    static Lattice from_generators(std::uint64_t p, const IntMatrix& rows, int scale = 0);
    // Z_p^{d+1}.
    static Lattice standard(std::uint64_t p, int size);

    std::uint64_t p() const { return p_; }
    int size() const { return static_cast<int>(basis_.size()); }
    // Largest s with L inside p^s Z_p^{d+1}.
    int scale() const { return scale_; }
    // Hermite basis of p^{-s} L: upper triangular, pivots p^{k_i}, entries above
    // each pivot reduced into [0, pivot). Identical for homothetic lattices.
    const IntMatrix& basis() const { return basis_; }
    std::vector<int> exponents() const;
    // Valuation of the index [Z_p^{d+1} : L] (negative when L is larger).
    int volume() const;

    bool contains(const ScaledVector& v) const;
    bool contains(const Lattice& other) const;
    // Coordinates of v in the basis p^s * basis(); nullopt when v is not in L.
    std::optional<BigVector> coordinates(const ScaledVector& v) const;

    Lattice scaled(int m) const;  // p^m L
    // { a F : a in L } for an integer matrix F of nonzero determinant.
    Lattice times(const IntMatrix& F) const;
    Lattice operator+(const Lattice& o) const;

    std::vector<ScaledVector> generators() const;
    // Canonical text for the homothety class.
    std::string class_key() const;
    std::string to_string() const;

    friend bool operator==(const Lattice&, const Lattice&) = default;

private:
    Lattice(std::uint64_t p, int scale, IntMatrix basis) : p_(p), scale_(scale), basis_(std::move(basis)) {}
    std::uint64_t p_ = 2;
    int scale_ = 0;
    IntMatrix basis_;
};

bool homothety_equal(const Lattice& a, const Lattice& b);

// g . M = M g^{-1}, for integer g with nonzero determinant; matches act() on
// hyperplanes so that <g z, a g^{-1}> = <z, a>.
Lattice act(const IntMatrix& g, const Lattice& M);

using SimplexType = std::vector<int>;

class PointedSimplex {
public:
    // Validates M_0 > M_1 > ... > M_k > p M_0 (all strict); throws DomainError
    // naming the failing inclusion.
    explicit PointedSimplex(std::vector<Lattice> chain);

    int k() const { return static_cast<int>(chain_.size()) - 1; }
    int dim() const { return chain_[0].size() - 1; }
    std::uint64_t p() const { return chain_[0].p(); }
    const std::vector<Lattice>& chain() const { return chain_; }
    const Lattice& lattice(int i) const { return chain_[static_cast<std::size_t>(i)]; }
    // M_{k+1} = p M_0.
    Lattice next(int i) const;
    const SimplexType& type() const { return type_; }
    // d_0 = 0, d_{i+1} = d_i + e_i.
    std::vector<int> jumps() const;

    std::string to_string() const;
    friend bool operator==(const PointedSimplex&, const PointedSimplex&) = default;

private:
    std::vector<Lattice> chain_;
    SimplexType type_;
};

// (e_0, ..., e_k) from dim_{F_p}(M_i / p M_0).
SimplexType simplex_type(const std::vector<Lattice>& chain);

// M_i = < p f_0, ..., p f_{d_i - 1}, f_{d_i}, ..., f_d >.
PointedSimplex standard_simplex(std::uint64_t p, int d, const SimplexType& type);

// f_0..f_d in M_0 with M_i = p M_0 + <f_{d_i}, ..., f_d>. All f_j share the
// scale of M_0; rows[j] is f_j / p^scale.
struct AdaptedBasis {
    IntMatrix rows;
    int scale = 0;
    ScaledVector vector(int j) const { return {rows[static_cast<std::size_t>(j)], scale}; }
};
AdaptedBasis adapted_basis(const PointedSimplex& sigma);
bool is_adapted(const PointedSimplex& sigma, const AdaptedBasis& f);

// [M_1, ..., M_k, p M_0].
PointedSimplex rotate(const PointedSimplex& sigma);
PointedSimplex act(const IntMatrix& g, const PointedSimplex& sigma);
// Same vertex classes, whatever the pointing.
bool same_cell(const PointedSimplex& a, const PointedSimplex& b);
std::vector<std::string> vertex_keys(const PointedSimplex& sigma);

// Every vertex w adjacent to the class of v, represented between p M and M.
std::vector<Lattice> neighbors(const Lattice& v);
// Number of proper nonzero subspaces of F_p^{d+1}.
std::uint64_t neighbor_count(int d, std::uint64_t p);

// The pointed edge [u, v] with v rescaled to sit between p u and u; nullopt
// when the classes are not adjacent.
std::optional<PointedSimplex> edge_between(const Lattice& u, const Lattice& v);

// Smallest n with lambda_sigma constant on H_n classes.
int locality_depth(const PointedSimplex& sigma);

struct BallLimits {
    int max_radius_d1 = 6;
    int max_radius_d2 = 2;
    std::uint64_t max_vertices = 200'000;
};

struct Ball {
    std::vector<Lattice> vertices;  // BFS order; vertices[0] is the center
    std::vector<int> distance;
    std::vector<int> parent;        // -1 for the center
    // Undirected adjacencies (i < j) among the ball's vertices.
    std::vector<std::pair<int, int>> edges;

    std::vector<PointedSimplex> pointed_edges() const;
};

Ball ball(const Lattice& center, int radius, const BallLimits& limits = {});

// Every vertex at distance r >= 1 has exactly one neighbor at distance r - 1 and
// none at distance r; for d = 1 this is the tree property.
bool bfs_parents_unique(const Ball& b);

}  // namespace drinfeld
