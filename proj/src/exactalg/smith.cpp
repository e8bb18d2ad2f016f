#include "novikov/exactalg/smith.hpp"

#include <optional>
#include <utility>

namespace novikov {

namespace {

// Euclidean division in the Laurent ring, with span() as the norm.
std::pair<LaurentPoly, LaurentPoly> laurent_divmod(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero()) return {{}, {}};
    auto [q, r] = divmod(a, b);
    return {q.shifted(a.low() - b.low()), r.shifted(a.low())};
}

void swap_rows(Matrix<LaurentPoly>& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(Matrix<LaurentPoly>& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row_dst -= q * row_src
void row_axpy(Matrix<LaurentPoly>& m, std::size_t dst, std::size_t src, const LaurentPoly& q, std::size_t from) {
    for (std::size_t j = from; j < m.cols(); ++j)
        if (!m(src, j).is_zero()) m(dst, j) -= q * m(src, j);
}

void col_axpy(Matrix<LaurentPoly>& m, std::size_t dst, std::size_t src, const LaurentPoly& q, std::size_t from) {
    for (std::size_t i = from; i < m.rows(); ++i)
        if (!m(i, src).is_zero()) m(i, dst) -= q * m(i, src);
}

}  // namespace

std::vector<LaurentPoly> invariant_factors(Matrix<LaurentPoly> m) {
    std::vector<LaurentPoly> factors;
    const std::size_t rows = m.rows(), cols = m.cols();
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        // Smallest-span pivot of the trailing block.
        std::optional<std::pair<std::size_t, std::size_t>> best;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (!m(i, j).is_zero() && (!best || m(i, j).span() < m(best->first, best->second).span()))
                    best = {i, j};
        if (!best) break;
        swap_rows(m, t, best->first);
        swap_cols(m, t, best->second);

        for (;;) {
            bool changed = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (m(i, t).is_zero()) continue;
                auto [q, r] = laurent_divmod(m(i, t), m(t, t));
                row_axpy(m, i, t, q, t);
                if (!r.is_zero()) {
                    swap_rows(m, t, i);
                    changed = true;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (m(t, j).is_zero()) continue;
                auto [q, r] = laurent_divmod(m(t, j), m(t, t));
                col_axpy(m, j, t, q, t);
                if (!r.is_zero()) {
                    swap_cols(m, t, j);
                    changed = true;
                }
            }
            if (changed) continue;
            // Pivot row and column are clear; enforce divisibility of the trailing block.
            std::optional<std::size_t> bad_row;
            for (std::size_t i = t + 1; i < rows && !bad_row; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (!m(i, j).is_zero() && !laurent_divmod(m(i, j), m(t, t)).second.is_zero()) {
                        bad_row = i;
                        break;
                    }
            if (!bad_row) break;
            for (std::size_t j = t; j < cols; ++j) m(t, j) += m(*bad_row, j);
        }
        factors.push_back(m(t, t).normalized());
    }
    return factors;
}

}  // namespace novikov
