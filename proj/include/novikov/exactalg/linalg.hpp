#pragma once

#include "novikov/exactalg/matrix.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

namespace novikov {

/// Default numerical rank tolerance, relative to the largest singular value.
inline constexpr double kDefaultRankTolerance = 1e-9;

/// Reads NOVIKOV_RANK_TOL from the environment, falling back to kDefaultRankTolerance.
double default_rank_tolerance();

namespace detail {

inline std::size_t pivot_cost(const Rational& x) {
    return mpz_sizeinbase(x.raw().get_num_mpz_t(), 2) + mpz_sizeinbase(x.raw().get_den_mpz_t(), 2);
}
inline std::size_t pivot_cost(const GaussianRational& x) { return pivot_cost(x.re) + pivot_cost(x.im); }
inline std::size_t pivot_cost(const RationalFunction& x) {
    std::size_t c = 64 * static_cast<std::size_t>(x.num().span() + x.den().span() + 1);
    for (const auto& [e, v] : x.num().terms()) c += pivot_cost(v);
    return c;
}

}  // namespace detail

template <ExactField T>
struct Echelon {
    Matrix<T> reduced;                 ///< reduced row echelon form
    std::vector<std::size_t> pivots;   ///< pivot column of each nonzero row
};

/// Reduced row echelon form by Gauss-Jordan elimination with cheapest-pivot selection.
template <ExactField T>
Echelon<T> row_reduce(Matrix<T> m) {
    Echelon<T> out;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t lead = 0;
    for (std::size_t c = 0; c < cols && lead < rows; ++c) {
        std::optional<std::size_t> best;
        std::size_t best_cost = 0;
        for (std::size_t r = lead; r < rows; ++r) {
            if (is_zero(m(r, c))) continue;
            std::size_t cost = detail::pivot_cost(m(r, c));
            if (!best || cost < best_cost) {
                best = r;
                best_cost = cost;
            }
        }
        if (!best) continue;
        if (*best != lead)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(lead, j), m(*best, j));
        const T inv = T(1) / m(lead, c);
        for (std::size_t j = c; j < cols; ++j)
            if (!is_zero(m(lead, j))) m(lead, j) *= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == lead || is_zero(m(r, c))) continue;
            const T factor = m(r, c);
            for (std::size_t j = c; j < cols; ++j)
                if (!is_zero(m(lead, j))) m(r, j) -= factor * m(lead, j);
        }
        out.pivots.push_back(c);
        ++lead;
    }
    out.reduced = std::move(m);
    return out;
}

/// Exact rank.
template <ExactField T>
std::size_t rank(const Matrix<T>& m) {
    return row_reduce(m).pivots.size();
}

/// Rank over the fraction field Q(t).
std::size_t rank(const Matrix<LaurentPoly>& m);

/// Numerical rank: singular values above tol * sigma_max.
std::size_t rank(const Matrix<double>& m, double tol = default_rank_tolerance());

/// Rank of a runtime-typed matrix; Rational matrices are ranked exactly.
std::size_t rank(const AnyMatrix& m);

/// Basis of the right kernel; each vector v satisfies m v = 0 exactly.
template <ExactField T>
std::vector<std::vector<T>> kernel_basis(const Matrix<T>& m) {
    Echelon<T> e = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<std::vector<T>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<T> v(m.cols(), T(0));
        v[f] = T(1);
        for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Orthonormal-ish numerical kernel basis (right singular vectors below tolerance).
std::vector<std::vector<double>> kernel_basis(const Matrix<double>& m, double tol = default_rank_tolerance());

/// Indices of a maximal linearly independent subset of the columns (greedy, left to right).
template <ExactField T>
std::vector<std::size_t> independent_columns(const Matrix<T>& m) {
    return row_reduce(m).pivots;
}

/// Entrywise evaluation at t = t0. Throws SpecializationError naming the entry.
Matrix<Rational> specialize(const Matrix<LaurentPoly>& m, const Rational& t0);
Matrix<Rational> specialize(const Matrix<RationalFunction>& m, const Rational& t0);

/// Gcd of all k x k minors, monic with lowest exponent 0; zero if all minors vanish.
LaurentPoly minor_gcd(const Matrix<LaurentPoly>& m, std::size_t k);

/// Minimum-norm least-squares solution of m x = v.
std::vector<double> pseudo_inverse_apply(const Matrix<double>& m, const std::vector<double>& v,
                                         double tol = default_rank_tolerance());

/// Symmetric eigenvalues, ascending.
std::vector<double> symmetric_eigenvalues(const Matrix<double>& m);

template <class T>
Matrix<T> lift(const Matrix<Rational>& m) {
    return m.template map<T>([](const Rational& x) { return scalar_traits<T>::from(x); });
}

}  // namespace novikov
