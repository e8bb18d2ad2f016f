#pragma once

// Hot loops with a serial reference and an OpenMP variant each. The variants must
// agree exactly; tests compare them and bench/ times them.

#include "novikov/ce/twisted.hpp"

#include <optional>

namespace novikov::kernels {

/// Exact twisted Betti profiles of t * base for every t in ts (order preserved).
std::vector<BettiProfile> betti_grid_serial(const CEComplex& cx, const Form<Rational>& base,
                                            const std::vector<Rational>& ts);
std::vector<BettiProfile> betti_grid_parallel(const CEComplex& cx, const Form<Rational>& base,
                                              const std::vector<Rational>& ts);

/// Bounded coefficient sweep: point i has coordinates lo + step * digit_j(i) in base `steps`,
/// the first coordinate being the most significant digit.
struct TamingGrid {
    std::vector<Matrix<double>> metric_basis;  ///< g(omega_b) for each kernel basis form omega_b
    Rational lo = Rational(-3);
    Rational step = Rational(1, 4);
    std::size_t steps = 25;
    double min_margin = 1e-9;

    std::size_t size() const;
    std::vector<Rational> coordinates(std::size_t index) const;
};

/// Smallest grid index >= start whose metric passes cholesky_positive(g, min_margin).
std::optional<std::size_t> first_taming_index_serial(const TamingGrid& grid, std::size_t start = 0);
std::optional<std::size_t> first_taming_index_parallel(const TamingGrid& grid, std::size_t start = 0);

/// Reduced row echelon form with the elimination step spread over rows. Same pivot rule
/// as row_reduce, so the output is identical.
Echelon<Rational> row_reduce_parallel(Matrix<Rational> m);

/// Attempted Cholesky of a small symmetric matrix; false as soon as a pivot is <= min_pivot.
bool cholesky_positive(const Matrix<double>& g, double min_pivot);

}  // namespace novikov::kernels
