#pragma once

#include "novikov/exactalg/matrix.hpp"

#include <vector>

namespace novikov {

/// Invariant factors d_1 | d_2 | ... of a matrix over Q[t, 1/t], each normalized
/// (monic, lowest exponent 0). Only the nonzero factors are returned, so the
/// length equals the rank over Q(t).
std::vector<LaurentPoly> invariant_factors(Matrix<LaurentPoly> m);

}  // namespace novikov
