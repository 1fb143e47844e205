#pragma once

// Exact linear algebra over Z with arbitrary-precision entries.

#include <vector>

#include "drinfeld/padic.hpp"

namespace drinfeld {

using BigVector = std::vector<Integer>;
using BigMatrix = std::vector<BigVector>;

struct SmithForm {
    // Nonzero invariant factors d_1 | d_2 | ... , all positive.
    std::vector<Integer> invariants;
    int rank() const { return static_cast<int>(invariants.size()); }
    // True when every invariant factor is 1, i.e. the row span is saturated.
    bool unimodular() const;
};

SmithForm smith_normal_form(BigMatrix m);
int integer_rank(const BigMatrix& m);

// Row-style Hermite normal form over Z: nonzero rows only, positive pivots,
// entries above each pivot reduced into [0, pivot).
BigMatrix hermite_normal_form(BigMatrix m);

// Whether v is a Z-combination of the rows of m.
bool in_row_span(const BigMatrix& m, const BigVector& v);

}  // namespace drinfeld
