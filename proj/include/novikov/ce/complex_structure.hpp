#pragma once

#include "novikov/ce/twisted.hpp"

#include <map>
#include <memory>
#include <utility>

namespace novikov {

using Bidegree = std::pair<int, int>;

/// Matrix of Lambda^k X, the map induced on k-forms by a linear map X of 1-forms.
template <class S>
Matrix<S> induced_matrix(const Matrix<S>& x, int k) {
    const int n = static_cast<int>(x.cols());
    const auto& basis = ExteriorBasis::get(n);
    std::vector<Form<S>> cols;
    for (int i = 0; i < n; ++i) {
        Form<S> f(n, 1);
        for (int r = 0; r < n; ++r) f[r] = x(r, i);
        cols.push_back(std::move(f));
    }
    Matrix<S> out(basis.dim(k), basis.dim(k));
    for (std::size_t c = 0; c < basis.dim(k); ++c) {
        Form<S> acc = Form<S>::unit(n);
        for (Mask m = basis.masks(k)[c]; m; m &= m - 1) acc = wedge(acc, cols[std::countr_zero(m)]);
        for (std::size_t r = 0; r < acc.size(); ++r) out(r, c) = acc[r];
    }
    return out;
}

/// Almost complex structure on the coframe of an even-dimensional model, validated
/// for J^2 = -1 and integrability at construction.
///
/// The matrix acts on 1-forms: column i holds J(e^i). On vectors J acts by -A^T,
/// so that (J beta)(X) = -beta(JX). The (1,0)-forms are beta + i J beta.
class ComplexStructure {
public:
    static std::shared_ptr<const ComplexStructure> create(CEComplexPtr cx, Matrix<Rational> j_forms);

    const CEComplex& complex() const { return *cx_; }
    CEComplexPtr complex_ptr() const { return cx_; }
    int half_dim() const { return cx_->n() / 2; }
    const Matrix<Rational>& j_forms() const { return a_; }
    Matrix<Rational> j_vectors() const;

    /// J applied to a 1-form.
    Form<Rational> apply(const Form<Rational>& beta) const;
    /// Real (1,1)-part of a real 2-form: (omega + J omega) / 2.
    Form<Rational> part_11(const Form<Rational>& omega) const;

    /// Basis phi_1..phi_m of (1,0)-forms, in coframe coordinates.
    const std::vector<Form<GaussianRational>>& holomorphic_coframe() const { return phi_; }

    /// Adapted basis of complex k-forms (wedges of phi and conj phi) as columns in coframe
    /// coordinates, its inverse, and the bidegree of each adapted basis element.
    const Matrix<GaussianRational>& adapted(int k) const { return to_coframe_.at(k); }
    const Matrix<GaussianRational>& adapted_inverse(int k) const { return from_coframe_.at(k); }
    const std::vector<Bidegree>& adapted_bidegrees(int k) const { return bidegrees_.at(k); }
    std::size_t dim(int p, int q) const;

    /// Projection onto Lambda^{p,q} inside Lambda^{p+q}, in coframe coordinates.
    Matrix<GaussianRational> projection(int p, int q) const;

    /// Nonzero (p,q)-components of phi; they sum to phi.
    std::map<Bidegree, Form<GaussianRational>> bidegree_split(const Form<GaussianRational>& phi) const;

private:
    ComplexStructure() = default;
    CEComplexPtr cx_;
    Matrix<Rational> a_;
    std::vector<Form<GaussianRational>> phi_;
    std::vector<Matrix<GaussianRational>> to_coframe_, from_coframe_;
    std::vector<std::vector<Bidegree>> bidegrees_;
};

using ComplexStructurePtr = std::shared_ptr<const ComplexStructure>;

Form<GaussianRational> complexify(const Form<Rational>& f);

/// Matrix of d_alpha in adapted coordinates, Lambda^k -> Lambda^{k+1}.
Matrix<GaussianRational> adapted_differential(const ComplexStructure& jc, const TwistForm<Rational>& alpha, int k);

/// Block of the adapted d_alpha from Lambda^{p,q} to Lambda^{p+dp,q+dq}.
Matrix<GaussianRational> bidegree_block(const ComplexStructure& jc, const TwistForm<Rational>& alpha, Bidegree from,
                                        Bidegree to);

/// (p,q+1)-part of d_alpha phi for phi of pure bidegree (p,q).
Form<GaussianRational> dolbeault_twisted(const ComplexStructure& jc, const TwistForm<Rational>& alpha,
                                         const Form<GaussianRational>& phi);
/// (p+1,q)-part of d_alpha phi for phi of pure bidegree (p,q).
Form<GaussianRational> del_twisted(const ComplexStructure& jc, const TwistForm<Rational>& alpha,
                                   const Form<GaussianRational>& phi);

struct HodgeDiamond {
    int m = 0;                              ///< complex dimension
    std::vector<std::vector<std::size_t>> h;  ///< h[p][q]
    std::string twist;
    bool operator==(const HodgeDiamond&) const = default;
};

HodgeDiamond hodge_diamond(const ComplexStructure& jc, const TwistForm<Rational>& alpha);

/// d J alpha + alpha ^ J alpha.
Form<Rational> lee_torsion(const ComplexStructure& jc, const TwistForm<Rational>& alpha);

/// Integrability defect: the (0,2)-parts of d phi_a, one entry per (1,0)-generator, all zero iff integrable.
std::vector<Form<GaussianRational>> integrability_defects(const ComplexStructure& jc);

}  // namespace novikov
