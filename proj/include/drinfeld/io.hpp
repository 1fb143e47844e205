#pragma once

// JSON records for every public type. Big integers and rationals travel as
// decimal strings so that nothing is rounded on the way.

#include <string>
#include <vector>

#include "json.hpp"

#include "drinfeld/alpha.hpp"

namespace drinfeld {

using Json = nlohmann::json;

std::string integer_string(const Integer& x);
Integer parse_integer(const std::string& s);
std::string rational_string(const Rational& r);

Json to_json(const FieldDesc& desc);
FieldDesc field_desc_from_json(const Json& j);

// Integral elements: the coefficient array. Others: {shift, coeffs} with
// x = pi^shift * coeffs.
Json to_json(const FieldElem& x);
FieldElem field_elem_from_json(const Field& L, const Json& j);
Json to_json(std::span<const FieldElem> z);

Json to_json(const ProjPoint& P);
ProjPoint proj_point_from_json(const Json& j);

Json to_json(const MassZeroVector& v);
MassZeroVector mass_zero_from_json(const Json& j);
Json to_json(const DistributionFamily& fam);
DistributionFamily family_from_json(const Json& j);

Json to_json(const Lattice& M);
Lattice lattice_from_json(const Json& j);
Json to_json(const PointedSimplex& s);
PointedSimplex simplex_from_json(const Json& j);
// {vertex_hnf, neighbors: [...]} restricted to the ball.
Json vertex_record(const Ball& b, std::size_t index);

Json to_json(const BuildingPoint& bp, int certified_level);

Json to_json(const CochainEntry& c, const CochainTable& t);

Json to_json(const FormalProduct& u);
Json to_json(const Margin& m);
Json to_json(const Certificate& c);

}  // namespace drinfeld
