#include "novikov/ce/complex.hpp"

#include <algorithm>
#include <set>

namespace novikov {

namespace {

int permutation_sign(const std::vector<int>& p) {
    int inversions = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inversions;
    return inversions % 2 ? -1 : 1;
}

}  // namespace

std::shared_ptr<const CEComplex> CEComplex::create(std::vector<std::string> names,
                                                   std::vector<Form<Rational>> differentials,
                                                   std::vector<int> orientation) {
    const int n = static_cast<int>(names.size());
    if (n == 0 || n > kMaxGenerators) throw std::invalid_argument("unsupported number of generators");
    if (std::set<std::string>(names.begin(), names.end()).size() != names.size())
        throw std::invalid_argument("duplicate generator names");
    if (static_cast<int>(differentials.size()) != n) throw std::invalid_argument("one differential per generator");
    for (int i = 0; i < n; ++i)
        if (differentials[i].n() != n || differentials[i].degree() != 2)
            throw std::invalid_argument("differential of " + names[i] + " must be a 2-form");
    if (orientation.empty()) {
        orientation.resize(n);
        for (int i = 0; i < n; ++i) orientation[i] = i;
    }
    {
        std::vector<int> sorted = orientation;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < n; ++i)
            if (static_cast<int>(sorted.size()) != n || sorted[i] != i)
                throw std::invalid_argument("orientation must list every generator exactly once");
    }

    std::shared_ptr<CEComplex> cx(new CEComplex());
    cx->n_ = n;
    cx->names_ = std::move(names);
    cx->de_ = std::move(differentials);
    cx->orientation_ = std::move(orientation);
    cx->orientation_sign_ = permutation_sign(cx->orientation_);

    const auto& basis = ExteriorBasis::get(n);
    cx->d_.resize(n + 1);
    for (int k = 0; k <= n; ++k) {
        Matrix<Rational> m(basis.dim(k + 1), basis.dim(k));
        if (k < n) {
            for (std::size_t c = 0; c < basis.dim(k); ++c) {
                const Mask mono = basis.masks(k)[c];
                // d(e^{i_0} ^ ... ^ e^{i_{k-1}}) = sum_r (-1)^r ... ^ d e^{i_r} ^ ...
                Form<Rational> acc(n, k + 1);
                int r = 0;
                for (Mask mm = mono; mm; mm &= mm - 1, ++r) {
                    const int i = std::countr_zero(mm);
                    const Mask before = mono & ((Mask{1} << i) - 1);
                    const Mask after = mono & ~((Mask{2} << i) - 1);
                    Form<Rational> term = wedge(wedge(Form<Rational>::basis(n, before), cx->de_[i]),
                                                Form<Rational>::basis(n, after));
                    if (r % 2)
                        acc -= term;
                    else
                        acc += term;
                }
                for (std::size_t row = 0; row < acc.size(); ++row) m(row, c) = acc[row];
            }
        }
        cx->d_[k] = std::move(m);
    }

    for (int i = 0; i < n; ++i) {
        Form<Rational> dd = cx->d(cx->de_[i]);
        if (!dd.is_zero())
            throw GateFailure("d^2 = 0 fails on generator " + cx->names_[i] + ": d(d " + cx->names_[i] +
                              ") = " + cx->format(dd));
    }

    cx->star_.resize(n + 1);
    const Mask full = basis.full();
    for (int k = 0; k <= n; ++k) {
        Matrix<Rational> s(basis.dim(n - k), basis.dim(k));
        for (std::size_t c = 0; c < basis.dim(k); ++c) {
            const Mask m = basis.masks(k)[c];
            const Mask comp = full & ~m;
            s(basis.index(comp), c) = Rational(cx->orientation_sign_ * wedge_sign(m, comp));
        }
        cx->star_[k] = std::move(s);
    }
    return cx;
}

std::optional<int> CEComplex::generator_index(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<int>(it - names_.begin());
}

Form<Rational> CEComplex::d(const Form<Rational>& phi) const {
    if (phi.n() != n_) throw std::invalid_argument("form does not belong to this complex");
    if (phi.degree() == n_) return Form<Rational>(n_, n_);
    return apply(d_[phi.degree()], phi, phi.degree() + 1);
}

Form<Rational> CEComplex::volume() const {
    return Form<Rational>::basis(n_, ExteriorBasis::get(n_).full(), Rational(orientation_sign_));
}

std::vector<Rational> CEComplex::adjoint_traces() const {
    // d e^k = -sum_{i<j} c^k_ij e^i ^ e^j, tr ad X_i = sum_k c^k_ik.
    std::vector<Rational> traces(n_);
    for (int i = 0; i < n_; ++i)
        for (int k = 0; k < n_; ++k) {
            if (k == i) continue;
            const Mask a = Mask{1} << i, b = Mask{1} << k;
            const Rational coeff = de_[k].at(a | b) * Rational(wedge_sign(a, b));
            traces[i] -= coeff;
        }
    return traces;
}

bool CEComplex::unimodular() const {
    for (const auto& t : adjoint_traces())
        if (!t.is_zero()) return false;
    return true;
}

}  // namespace novikov
