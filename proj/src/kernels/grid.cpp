#include "novikov/kernels/grid.hpp"

#include <omp.h>

#include <cmath>
#include <limits>

namespace novikov::kernels {

std::vector<BettiProfile> betti_grid_serial(const CEComplex& cx, const Form<Rational>& base,
                                            const std::vector<Rational>& ts) {
    TwistForm<Rational>::make(cx, base, Rational(1));
    std::vector<BettiProfile> out;
    out.reserve(ts.size());
    for (const auto& t : ts) out.push_back(cohomology(cx, TwistForm<Rational>::certified(base, t)));
    return out;
}

std::vector<BettiProfile> betti_grid_parallel(const CEComplex& cx, const Form<Rational>& base,
                                              const std::vector<Rational>& ts) {
    TwistForm<Rational>::make(cx, base, Rational(1));
    std::vector<BettiProfile> out(ts.size());
    const long n = static_cast<long>(ts.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) out[i] = cohomology(cx, TwistForm<Rational>::certified(base, ts[i]));
    return out;
}

std::size_t TamingGrid::size() const {
    std::size_t total = 1;
    for (std::size_t j = 0; j < metric_basis.size(); ++j) {
        if (total > std::numeric_limits<std::size_t>::max() / steps) throw std::overflow_error("taming grid too large");
        total *= steps;
    }
    return total;
}

std::vector<Rational> TamingGrid::coordinates(std::size_t index) const {
    std::vector<Rational> c(metric_basis.size());
    for (std::size_t j = metric_basis.size(); j-- > 0;) {
        c[j] = lo + step * Rational(static_cast<long>(index % steps));
        index /= steps;
    }
    return c;
}

bool cholesky_positive(const Matrix<double>& g, double min_pivot) {
    const std::size_t n = g.rows();
    double l[16][16];
    if (n > 16) throw std::invalid_argument("cholesky_positive handles at most 16 x 16");
    for (std::size_t j = 0; j < n; ++j) {
        double d = g(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= l[j][k] * l[j][k];
        if (!(d > min_pivot)) return false;
        l[j][j] = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = g(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
            l[i][j] = s / l[j][j];
        }
    }
    return true;
}

namespace {

struct PointEvaluator {
    const TamingGrid& grid;
    std::vector<double> values;  // lo + step * digit, as doubles
    std::size_t dim;

    explicit PointEvaluator(const TamingGrid& g) : grid(g), dim(g.metric_basis.empty() ? 0 : g.metric_basis[0].rows()) {
        for (std::size_t s = 0; s < g.steps; ++s) values.push_back((g.lo + g.step * Rational(static_cast<long>(s))).to_double());
    }

    bool tames(std::size_t index) const {
        const std::size_t k = grid.metric_basis.size();
        Matrix<double> g(dim, dim);
        for (std::size_t j = k; j-- > 0;) {
            const double c = values[index % grid.steps];
            index /= grid.steps;
            if (c == 0.0) continue;
            const auto& b = grid.metric_basis[j];
            for (std::size_t r = 0; r < dim; ++r)
                for (std::size_t q = 0; q < dim; ++q) g(r, q) += c * b(r, q);
        }
        return cholesky_positive(g, grid.min_margin);
    }
};

}  // namespace

std::optional<std::size_t> first_taming_index_serial(const TamingGrid& grid, std::size_t start) {
    if (grid.metric_basis.empty()) return std::nullopt;
    PointEvaluator ev(grid);
    const std::size_t total = grid.size();
    for (std::size_t i = start; i < total; ++i)
        if (ev.tames(i)) return i;
    return std::nullopt;
}

std::optional<std::size_t> first_taming_index_parallel(const TamingGrid& grid, std::size_t start) {
    if (grid.metric_basis.empty()) return std::nullopt;
    PointEvaluator ev(grid);
    const std::size_t total = grid.size();
    const std::size_t block = 1u << 14;
    // Blocks are scanned in order; inside a block the minimum hit index is kept, so the
    // answer does not depend on the thread count.
    for (std::size_t lo = start; lo < total; lo += block) {
        const std::size_t hi = std::min(total, lo + block);
        std::size_t best = std::numeric_limits<std::size_t>::max();
#pragma omp parallel for reduction(min : best) schedule(static)
        for (std::size_t i = lo; i < hi; ++i)
            if (i < best && ev.tames(i)) best = i;
        if (best != std::numeric_limits<std::size_t>::max()) return best;
    }
    return std::nullopt;
}

Echelon<Rational> row_reduce_parallel(Matrix<Rational> m) {
    Echelon<Rational> out;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t lead = 0;
    for (std::size_t c = 0; c < cols && lead < rows; ++c) {
        std::optional<std::size_t> best;
        std::size_t best_cost = 0;
        for (std::size_t r = lead; r < rows; ++r) {
            if (m(r, c).is_zero()) continue;
            std::size_t cost = detail::pivot_cost(m(r, c));
            if (!best || cost < best_cost) {
                best = r;
                best_cost = cost;
            }
        }
        if (!best) continue;
        if (*best != lead)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(lead, j), m(*best, j));
        const Rational inv = Rational(1) / m(lead, c);
        for (std::size_t j = c; j < cols; ++j)
            if (!m(lead, j).is_zero()) m(lead, j) *= inv;
        const long nrows = static_cast<long>(rows);
#pragma omp parallel for schedule(dynamic, 4) if (rows * (cols - c) > 2048)
        for (long r = 0; r < nrows; ++r) {
            const auto ur = static_cast<std::size_t>(r);
            if (ur == lead || m(ur, c).is_zero()) continue;
            const Rational factor = m(ur, c);
            for (std::size_t j = c; j < cols; ++j)
                if (!m(lead, j).is_zero()) m(ur, j) -= factor * m(lead, j);
        }
        out.pivots.push_back(c);
        ++lead;
    }
    out.reduced = std::move(m);
    return out;
}

}  // namespace novikov::kernels
