#pragma once

#include "novikov/exactalg/matrix.hpp"

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace novikov {

using Mask = std::uint32_t;

inline constexpr int kMaxGenerators = 16;

/// Basis e^I of the exterior algebra on n generators, I ranging over k-subsets in
/// lexicographic order of increasing index tuples.
class ExteriorBasis {
public:
    static const ExteriorBasis& get(int n);

    int n() const { return n_; }
    std::size_t dim(int k) const { return k < 0 || k > n_ ? 0 : masks_[k].size(); }
    const std::vector<Mask>& masks(int k) const { return masks_.at(k); }
    std::size_t index(Mask m) const { return index_[m]; }
    Mask full() const { return n_ == 32 ? ~Mask{0} : ((Mask{1} << n_) - 1); }

private:
    explicit ExteriorBasis(int n);
    int n_;
    std::vector<std::vector<Mask>> masks_;
    std::vector<std::size_t> index_;
};

inline int degree_of(Mask m) { return std::popcount(m); }

/// Sign of e^a wedge e^b relative to e^(a|b); 0 when a and b overlap.
inline int wedge_sign(Mask a, Mask b) {
    if (a & b) return 0;
    // Count pairs (i in a, j in b) with i > j.
    int inversions = 0;
    for (Mask bb = b; bb; bb &= bb - 1) {
        int j = std::countr_zero(bb);
        inversions += std::popcount(a >> (j + 1));
    }
    return (inversions & 1) ? -1 : 1;
}

/// Homogeneous element of the exterior algebra on n generators with coefficients in S.
template <class S>
class Form {
public:
    Form() = default;
    Form(int n, int degree) : n_(n), degree_(degree) {
        if (n < 0 || n > kMaxGenerators) throw std::invalid_argument("unsupported number of generators");
        if (degree < 0 || degree > n) throw std::invalid_argument("form degree out of range");
        coeffs_.assign(ExteriorBasis::get(n).dim(degree), S(0));
    }
    Form(int n, int degree, std::vector<S> coeffs) : Form(n, degree) {
        if (coeffs.size() != coeffs_.size()) throw std::invalid_argument("coefficient count mismatch");
        coeffs_ = std::move(coeffs);
    }

    static Form basis(int n, Mask m, S c = S(1)) {
        Form f(n, degree_of(m));
        f.coeffs_[ExteriorBasis::get(n).index(m)] = std::move(c);
        return f;
    }
    static Form generator(int n, int i) { return basis(n, Mask{1} << i); }
    static Form unit(int n) { return basis(n, 0); }

    int n() const { return n_; }
    int degree() const { return degree_; }
    std::size_t size() const { return coeffs_.size(); }
    const std::vector<S>& coeffs() const { return coeffs_; }
    std::vector<S>& coeffs() { return coeffs_; }
    const S& operator[](std::size_t i) const { return coeffs_[i]; }
    S& operator[](std::size_t i) { return coeffs_[i]; }
    const S& at(Mask m) const { return coeffs_[ExteriorBasis::get(n_).index(m)]; }
    S& at(Mask m) { return coeffs_[ExteriorBasis::get(n_).index(m)]; }
    Mask mask(std::size_t i) const { return ExteriorBasis::get(n_).masks(degree_)[i]; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!novikov::is_zero(c)) return false;
        return true;
    }

    Form operator-() const {
        Form out = *this;
        for (auto& c : out.coeffs_) c = -c;
        return out;
    }
    Form& operator+=(const Form& o) {
        check_same(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        return *this;
    }
    Form& operator-=(const Form& o) {
        check_same(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        return *this;
    }
    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    friend Form operator*(const S& s, Form a) {
        for (auto& c : a.coeffs_) c = s * c;
        return a;
    }
    friend bool operator==(const Form& a, const Form& b) {
        return a.n_ == b.n_ && a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
    }

    template <class U, class F>
    Form<U> map(F&& f) const {
        std::vector<U> out;
        out.reserve(coeffs_.size());
        for (const auto& c : coeffs_) out.push_back(f(c));
        return Form<U>(n_, degree_, std::move(out));
    }

private:
    void check_same(const Form& o) const {
        if (n_ != o.n_ || degree_ != o.degree_) throw std::invalid_argument("adding forms of different shape");
    }

    int n_ = 0, degree_ = 0;
    std::vector<S> coeffs_;
};

/// Graded-commutative product. Degrees beyond n give the zero form of degree n.
template <class S>
Form<S> wedge(const Form<S>& a, const Form<S>& b) {
    if (a.n() != b.n()) throw std::invalid_argument("wedge of forms on different complexes");
    const int n = a.n();
    const int deg = a.degree() + b.degree();
    if (deg > n) return Form<S>(n, n);
    Form<S> out(n, deg);
    const auto& basis = ExteriorBasis::get(n);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (is_zero(a[i])) continue;
        Mask ma = a.mask(i);
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (is_zero(b[j])) continue;
            Mask mb = b.mask(j);
            int s = wedge_sign(ma, mb);
            if (s == 0) continue;
            S term = a[i] * b[j];
            auto& slot = out[basis.index(ma | mb)];
            if (s > 0)
                slot += term;
            else
                slot -= term;
        }
    }
    return out;
}

/// Matrix of the linear map Lambda^k -> Lambda^{k+deg a}, phi |-> a wedge phi.
template <class S>
Matrix<S> wedge_matrix(const Form<S>& a, int k) {
    const int n = a.n();
    const auto& basis = ExteriorBasis::get(n);
    const int target = a.degree() + k;
    Matrix<S> m(basis.dim(target), basis.dim(k));
    if (target > n) return m;
    for (std::size_t c = 0; c < basis.dim(k); ++c) {
        Form<S> col = wedge(a, Form<S>::basis(n, basis.masks(k)[c]));
        for (std::size_t r = 0; r < col.size(); ++r) m(r, c) = col[r];
    }
    return m;
}

template <class S>
Form<S> apply(const Matrix<S>& m, const Form<S>& phi, int target_degree) {
    return Form<S>(phi.n(), target_degree, m.apply(phi.coeffs()));
}

/// Renders with generator names, e.g. "2 e1^e2 - e3^e4"; "0" for zero.
std::string format_form(const Form<Rational>& f, const std::vector<std::string>& names);

}  // namespace novikov
