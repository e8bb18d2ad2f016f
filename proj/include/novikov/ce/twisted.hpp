#pragma once

#include "novikov/ce/complex.hpp"
#include "novikov/exactalg/linalg.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace novikov {

/// Closed 1-form alpha = scale * base. The base is rational and certified closed at construction.
template <class S>
class TwistForm {
public:
    static TwistForm make(const CEComplex& cx, Form<Rational> base, S scale) {
        if (base.n() != cx.n() || base.degree() != 1) throw std::invalid_argument("twist base must be a 1-form");
        Form<Rational> db = cx.d(base);
        if (!db.is_zero()) throw GateFailure("twist base " + cx.format(base) + " is not closed: d = " + cx.format(db));
        return TwistForm(std::move(base), std::move(scale));
    }

    const Form<Rational>& base() const { return base_; }
    const S& scale() const { return scale_; }
    /// alpha as a form over S.
    Form<S> form() const {
        return scale_ * base_.template map<S>([](const Rational& x) { return scalar_traits<S>::from(x); });
    }
    TwistForm negated() const { return TwistForm(base_, -scale_); }
    template <class U>
    TwistForm<U> with_scale(U s) const {
        return TwistForm<U>::certified(base_, std::move(s));
    }
    /// Internal: base already known to be closed.
    static TwistForm certified(Form<Rational> base, S scale) { return TwistForm(std::move(base), std::move(scale)); }

private:
    TwistForm(Form<Rational> base, S scale) : base_(std::move(base)), scale_(std::move(scale)) {}
    Form<Rational> base_;
    S scale_;
};

/// Matrix of d_alpha = d - alpha ^ on Lambda^k.
template <class S>
Matrix<S> twisted_differential(const CEComplex& cx, const TwistForm<S>& alpha, int k) {
    Matrix<S> d = lift<S>(cx.d_matrix(k));
    if (k >= cx.n()) return d;
    Matrix<S> w = lift<S>(wedge_matrix(alpha.base(), k));
    return d - alpha.scale() * w;
}

/// d phi - alpha ^ phi.
template <class S>
Form<S> d_twisted(const CEComplex& cx, const TwistForm<S>& alpha, const Form<S>& phi) {
    if (phi.n() != cx.n()) throw std::invalid_argument("form does not belong to this complex");
    if (phi.degree() == cx.n()) return Form<S>(cx.n(), cx.n());
    return apply(twisted_differential(cx, alpha, phi.degree()), phi, phi.degree() + 1);
}

/// Per-degree twisted Betti numbers together with the cochain dimensions they came from.
struct BettiProfile {
    std::vector<std::size_t> betti;
    std::vector<std::size_t> cochain_dims;
    std::string twist;   ///< e.g. "t = 1/2", "generic t"
    std::string domain;  ///< "RationalFunction" (generic) or "Rational" (specialized)

    long euler() const;
    long cochain_euler() const;
    bool operator==(const BettiProfile&) const = default;
};

/// Betti numbers from the ranks of consecutive coboundaries.
BettiProfile betti_from_ranks(const std::vector<std::size_t>& dims, const std::vector<std::size_t>& ranks,
                              std::string twist, std::string domain);

/// Exact twisted cohomology at alpha = t0 * base.
BettiProfile cohomology(const CEComplex& cx, const TwistForm<Rational>& alpha);
/// Exact twisted cohomology with t transcendental (ranks over Q(t)).
BettiProfile cohomology_generic(const CEComplex& cx, const Form<Rational>& base);

/// Certificate for the t-values where b_k(t * base) exceeds its generic value.
struct JumpSet {
    int degree = 0;
    std::size_t generic_betti = 0;
    LaurentPoly certificate;          ///< product of the two determinantal gcds
    std::vector<Rational> jumps;      ///< rational roots of the certificate (t != 0)
    bool zero_jumps = false;          ///< whether b_k(0) exceeds the generic value (t = 0 is excluded)
};

JumpSet jumping_set(const CEComplex& cx, const Form<Rational>& base, int k);

/// Jump data from the two coboundaries around degree k of any Laurent coefficient complex.
JumpSet jumping_set_from(const Matrix<LaurentPoly>& incoming, const Matrix<LaurentPoly>& outgoing, int k);

/// d*_alpha = - * d_{-alpha} * on k-forms; requires even n.
template <class S>
Matrix<S> adjoint_matrix(const CEComplex& cx, const TwistForm<S>& alpha, int k) {
    const int n = cx.n();
    if (n % 2 != 0) throw UnsupportedError("d*_alpha = -*d_{-alpha}* needs an even-dimensional model");
    if (k == 0) return Matrix<S>(0, cx.dim(0));
    Matrix<S> star_k = lift<S>(cx.star_matrix(k));
    Matrix<S> star_back = lift<S>(cx.star_matrix(n - k + 1));
    Matrix<S> d_neg = twisted_differential(cx, alpha.negated(), n - k);
    return S(-1) * (star_back * (d_neg * star_k));
}

template <class S>
Form<S> d_adjoint(const CEComplex& cx, const TwistForm<S>& alpha, const Form<S>& phi) {
    if (phi.degree() == 0) {
        if (cx.n() % 2 != 0) throw UnsupportedError("d*_alpha = -*d_{-alpha}* needs an even-dimensional model");
        return Form<S>();
    }
    return apply(adjoint_matrix(cx, alpha, phi.degree()), phi, phi.degree() - 1);
}

/// Twisted Hodge Laplacian d d* + d* d on Lambda^k (float path).
Matrix<double> laplacian(const CEComplex& cx, const TwistForm<double>& alpha, int k);

/// max_k max over random forms of |<d_a phi, psi> - <phi, d*_a psi>|.
double adjoint_identity_check(const CEComplex& cx, const TwistForm<double>& alpha, int trials, std::uint64_t seed);

/// max over random forms of || * Lap_a phi - Lap_{-a} * phi ||.
double star_laplacian_identity_check(const CEComplex& cx, const TwistForm<double>& alpha, int trials,
                                     std::uint64_t seed);

/// Fixed default seed for randomized identity trials.
inline constexpr std::uint64_t kDefaultSeed = 20240917;

}  // namespace novikov
