#pragma once

#include "novikov/ce/exterior.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace novikov {

/// A load-time identity (d^2 = 0, J^2 = -1, integrability, closedness) that failed.
struct GateFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnsupportedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Finite invariant-form model: generators e^1..e^n, their differentials as
/// 2-forms, an orientation and the metric in which the coframe is orthonormal.
/// Constructed only through create(), which enforces d o d = 0.
class CEComplex {
public:
    /// orientation lists generator indices in the order of the volume form.
    static std::shared_ptr<const CEComplex> create(std::vector<std::string> names,
                                                   std::vector<Form<Rational>> differentials,
                                                   std::vector<int> orientation);

    int n() const { return n_; }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<int> generator_index(const std::string& name) const;
    const Form<Rational>& d_generator(int i) const { return de_.at(i); }
    const std::vector<int>& orientation() const { return orientation_; }
    /// +1 when the orientation agrees with e^1 ^ ... ^ e^n.
    int orientation_sign() const { return orientation_sign_; }

    /// Untwisted d : Lambda^k -> Lambda^{k+1}.
    const Matrix<Rational>& d_matrix(int k) const { return d_.at(k); }
    /// Hodge star Lambda^k -> Lambda^{n-k} for the orthonormal coframe.
    const Matrix<Rational>& star_matrix(int k) const { return star_.at(k); }
    std::size_t dim(int k) const { return ExteriorBasis::get(n_).dim(k); }

    Form<Rational> d(const Form<Rational>& phi) const;
    Form<Rational> volume() const;

    /// tr(ad X_i) for each dual frame vector, from the structure constants.
    std::vector<Rational> adjoint_traces() const;
    bool unimodular() const;

    std::string format(const Form<Rational>& f) const { return format_form(f, names_); }

private:
    CEComplex() = default;
    int n_ = 0;
    std::vector<std::string> names_;
    std::vector<Form<Rational>> de_;
    std::vector<int> orientation_;
    int orientation_sign_ = 1;
    std::vector<Matrix<Rational>> d_, star_;
};

using CEComplexPtr = std::shared_ptr<const CEComplex>;

/// Hodge star of a form.
template <class S>
Form<S> hodge_star(const CEComplex& cx, const Form<S>& phi) {
    return apply(lift<S>(cx.star_matrix(phi.degree())), phi, cx.n() - phi.degree());
}

}  // namespace novikov
