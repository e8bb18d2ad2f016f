#include "novikov/ce/twisted.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

namespace novikov {

long BettiProfile::euler() const {
    long e = 0;
    for (std::size_t k = 0; k < betti.size(); ++k) e += (k % 2 ? -1 : 1) * static_cast<long>(betti[k]);
    return e;
}

long BettiProfile::cochain_euler() const {
    long e = 0;
    for (std::size_t k = 0; k < cochain_dims.size(); ++k) e += (k % 2 ? -1 : 1) * static_cast<long>(cochain_dims[k]);
    return e;
}

BettiProfile betti_from_ranks(const std::vector<std::size_t>& dims, const std::vector<std::size_t>& ranks,
                              std::string twist, std::string domain) {
    BettiProfile p;
    p.cochain_dims = dims;
    p.twist = std::move(twist);
    p.domain = std::move(domain);
    for (std::size_t k = 0; k < dims.size(); ++k) {
        std::size_t out = k < ranks.size() ? ranks[k] : 0;
        std::size_t in = k > 0 && k - 1 < ranks.size() ? ranks[k - 1] : 0;
        p.betti.push_back(dims[k] - out - in);
    }
    return p;
}

BettiProfile cohomology(const CEComplex& cx, const TwistForm<Rational>& alpha) {
    std::vector<std::size_t> dims, ranks;
    for (int k = 0; k <= cx.n(); ++k) {
        dims.push_back(cx.dim(k));
        ranks.push_back(k < cx.n() ? rank(twisted_differential(cx, alpha, k)) : 0);
    }
    return betti_from_ranks(dims, ranks, "t = " + alpha.scale().str(), "Rational");
}

namespace {

TwistForm<LaurentPoly> generic_twist(const CEComplex& cx, const Form<Rational>& base) {
    TwistForm<Rational>::make(cx, base, Rational(1));  // closedness check
    return TwistForm<LaurentPoly>::certified(base, LaurentPoly::t());
}

}  // namespace

BettiProfile cohomology_generic(const CEComplex& cx, const Form<Rational>& base) {
    auto alpha = generic_twist(cx, base);
    std::vector<std::size_t> dims, ranks;
    for (int k = 0; k <= cx.n(); ++k) {
        dims.push_back(cx.dim(k));
        ranks.push_back(k < cx.n() ? rank(twisted_differential(cx, alpha, k)) : 0);
    }
    return betti_from_ranks(dims, ranks, "generic t", "RationalFunction");
}

JumpSet jumping_set_from(const Matrix<LaurentPoly>& incoming, const Matrix<LaurentPoly>& outgoing, int k) {
    JumpSet js;
    js.degree = k;
    const std::size_t dim = outgoing.cols();
    const std::size_t r_in = incoming.cols() == 0 ? 0 : rank(incoming);
    const std::size_t r_out = outgoing.rows() == 0 ? 0 : rank(outgoing);
    js.generic_betti = dim - r_in - r_out;
    LaurentPoly cert(1);
    if (r_in > 0) cert *= minor_gcd(incoming, r_in);
    if (r_out > 0) cert *= minor_gcd(outgoing, r_out);
    js.certificate = cert.normalized();
    js.jumps = rational_roots(js.certificate);

    auto rank_at_zero = [](const Matrix<LaurentPoly>& m) -> std::optional<std::size_t> {
        if (m.rows() == 0 || m.cols() == 0) return 0;
        Matrix<Rational> z(m.rows(), m.cols());
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) {
                if (m(r, c).low() < 0) return std::nullopt;
                z(r, c) = m(r, c).coeff(0);
            }
        return rank(z);
    };
    auto zi = rank_at_zero(incoming), zo = rank_at_zero(outgoing);
    if (zi && zo) js.zero_jumps = dim - *zi - *zo > js.generic_betti;
    return js;
}

JumpSet jumping_set(const CEComplex& cx, const Form<Rational>& base, int k) {
    if (k < 0 || k > cx.n()) throw std::invalid_argument("degree out of range");
    auto alpha = generic_twist(cx, base);
    Matrix<LaurentPoly> incoming = k > 0 ? twisted_differential(cx, alpha, k - 1) : Matrix<LaurentPoly>(cx.dim(0), 0);
    Matrix<LaurentPoly> outgoing = twisted_differential(cx, alpha, k);
    return jumping_set_from(incoming, outgoing, k);
}

Matrix<double> laplacian(const CEComplex& cx, const TwistForm<double>& alpha, int k) {
    const std::size_t dim = cx.dim(k);
    Matrix<double> lap(dim, dim);
    if (k > 0) lap = lap + twisted_differential(cx, alpha, k - 1) * adjoint_matrix(cx, alpha, k);
    if (k < cx.n()) lap = lap + adjoint_matrix(cx, alpha, k + 1) * twisted_differential(cx, alpha, k);
    return lap;
}

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng);
    return v;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

double adjoint_identity_check(const CEComplex& cx, const TwistForm<double>& alpha, int trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double worst = 0;
    for (int k = 0; k < cx.n(); ++k) {
        Matrix<double> d = twisted_differential(cx, alpha, k);
        Matrix<double> ds = adjoint_matrix(cx, alpha, k + 1);
        for (int t = 0; t < trials; ++t) {
            auto phi = random_vector(rng, cx.dim(k));
            auto psi = random_vector(rng, cx.dim(k + 1));
            worst = std::max(worst, std::abs(dot(d.apply(phi), psi) - dot(phi, ds.apply(psi))));
        }
    }
    return worst;
}

double star_laplacian_identity_check(const CEComplex& cx, const TwistForm<double>& alpha, int trials,
                                     std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double worst = 0;
    const int n = cx.n();
    for (int k = 0; k <= n; ++k) {
        Matrix<double> lhs = lift<double>(cx.star_matrix(k)) * laplacian(cx, alpha, k);
        Matrix<double> rhs = laplacian(cx, alpha.negated(), n - k) * lift<double>(cx.star_matrix(k));
        for (int t = 0; t < trials; ++t) {
            auto phi = random_vector(rng, cx.dim(k));
            auto a = lhs.apply(phi), b = rhs.apply(phi);
            double s = 0;
            for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
            worst = std::max(worst, std::sqrt(s));
        }
    }
    return worst;
}

}  // namespace novikov
