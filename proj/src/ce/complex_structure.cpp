#include "novikov/ce/complex_structure.hpp"

namespace novikov {

namespace {

using G = GaussianRational;

Matrix<G> inverse(const Matrix<G>& c) {
    const std::size_t n = c.rows();
    Echelon<G> e = row_reduce(hcat(c, Matrix<G>::identity(n)));
    if (e.pivots.size() != n || e.pivots.back() != n - 1) throw std::logic_error("adapted coframe is singular");
    Matrix<G> inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t j = 0; j < n; ++j) inv(r, j) = e.reduced(r, n + j);
    return inv;
}

}  // namespace

Form<G> complexify(const Form<Rational>& f) {
    return f.map<G>([](const Rational& x) { return G(x); });
}

std::shared_ptr<const ComplexStructure> ComplexStructure::create(CEComplexPtr cx, Matrix<Rational> j_forms) {
    const int n = cx->n();
    if (n % 2 != 0) throw UnsupportedError("a complex structure needs an even number of generators");
    if (j_forms.rows() != static_cast<std::size_t>(n) || j_forms.cols() != static_cast<std::size_t>(n))
        throw std::invalid_argument("J must be an n x n matrix");
    const auto id = Matrix<Rational>::identity(n);
    if (!(j_forms * j_forms + id).is_zero()) {
        auto sq = j_forms * j_forms;
        for (int i = 0; i < n; ++i) {
            Form<Rational> col(n, 1);
            for (int r = 0; r < n; ++r) col[r] = sq(r, i);
            if (!(col + Form<Rational>::generator(n, i)).is_zero())
                throw GateFailure("J^2 = -1 fails on " + cx->names()[i] + ": J(J " + cx->names()[i] +
                                  ") = " + cx->format(col));
        }
    }

    std::shared_ptr<ComplexStructure> jc(new ComplexStructure());
    jc->cx_ = std::move(cx);
    jc->a_ = std::move(j_forms);

    // candidates e^i + i J e^i span the (1,0)-forms
    Matrix<G> cand(n, n);
    for (int i = 0; i < n; ++i)
        for (int r = 0; r < n; ++r) cand(r, i) = G(r == i ? Rational(1) : Rational(0), jc->a_(r, i));
    const auto chosen = independent_columns(cand);
    const int m = n / 2;
    if (static_cast<int>(chosen.size()) != m) throw GateFailure("J has no half-dimensional (1,0) space");
    Matrix<G> c(n, n);
    for (int a = 0; a < m; ++a) {
        Form<G> phi(n, 1);
        for (int r = 0; r < n; ++r) {
            phi[r] = cand(r, chosen[a]);
            c(r, a) = phi[r];
            c(r, a + m) = phi[r].conj();
        }
        jc->phi_.push_back(std::move(phi));
    }
    const Matrix<G> cinv = inverse(c);
    const auto& basis = ExteriorBasis::get(n);
    const Mask low = (Mask{1} << m) - 1;
    for (int k = 0; k <= n; ++k) {
        jc->to_coframe_.push_back(induced_matrix(c, k));
        jc->from_coframe_.push_back(induced_matrix(cinv, k));
        std::vector<Bidegree> bd;
        for (Mask mk : basis.masks(k)) bd.emplace_back(std::popcount(mk & low), std::popcount(mk & ~low));
        jc->bidegrees_.push_back(std::move(bd));
    }

    const auto defects = integrability_defects(*jc);
    for (int a = 0; a < m; ++a)
        if (!defects[a].is_zero())
            throw GateFailure("integrability fails: d phi_" + std::to_string(a + 1) + " has a nonzero (0,2)-part, phi_" +
                              std::to_string(a + 1) + " = " + jc->cx_->names()[chosen[a]] + " + i J " +
                              jc->cx_->names()[chosen[a]]);
    return jc;
}

Matrix<Rational> ComplexStructure::j_vectors() const { return Rational(-1) * a_.transpose(); }

Form<Rational> ComplexStructure::apply(const Form<Rational>& beta) const {
    if (beta.degree() != 1) throw std::invalid_argument("J acts on 1-forms");
    return novikov::apply(a_, beta, 1);
}

Form<Rational> ComplexStructure::part_11(const Form<Rational>& omega) const {
    if (omega.degree() != 2) throw std::invalid_argument("(1,1)-part is taken of 2-forms");
    Form<Rational> j_omega = novikov::apply(induced_matrix(a_, 2), omega, 2);
    return Rational(1, 2) * (omega + j_omega);
}

std::size_t ComplexStructure::dim(int p, int q) const {
    if (p < 0 || q < 0 || p > half_dim() || q > half_dim()) return 0;
    std::size_t count = 0;
    for (const auto& b : bidegrees_.at(p + q))
        if (b == Bidegree{p, q}) ++count;
    return count;
}

Matrix<G> ComplexStructure::projection(int p, int q) const {
    const int k = p + q;
    const auto& bd = bidegrees_.at(k);
    Matrix<G> diag(bd.size(), bd.size());
    for (std::size_t i = 0; i < bd.size(); ++i)
        if (bd[i] == Bidegree{p, q}) diag(i, i) = G(1);
    return to_coframe_[k] * (diag * from_coframe_[k]);
}

std::map<Bidegree, Form<G>> ComplexStructure::bidegree_split(const Form<G>& phi) const {
    const int k = phi.degree();
    std::vector<G> coords = from_coframe_.at(k).apply(phi.coeffs());
    const auto& bd = bidegrees_[k];
    std::map<Bidegree, std::vector<G>> parts;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i].is_zero()) continue;
        auto& v = parts[bd[i]];
        if (v.empty()) v.assign(coords.size(), G(0));
        v[i] = coords[i];
    }
    std::map<Bidegree, Form<G>> out;
    for (auto& [b, v] : parts) out.emplace(b, Form<G>(phi.n(), k, to_coframe_[k].apply(v)));
    return out;
}

Matrix<G> adapted_differential(const ComplexStructure& jc, const TwistForm<Rational>& alpha, int k) {
    Matrix<G> d = lift<G>(twisted_differential(jc.complex(), alpha, k));
    return jc.adapted_inverse(k + 1) * (d * jc.adapted(k));
}

Matrix<G> bidegree_block(const ComplexStructure& jc, const TwistForm<Rational>& alpha, Bidegree from, Bidegree to) {
    const int k = from.first + from.second;
    const int n = jc.complex().n();
    if (to.first + to.second != k + 1) throw std::invalid_argument("block must raise the degree by one");
    std::vector<std::size_t> rows, cols;
    if (k < n) {
        const auto& bf = jc.adapted_bidegrees(k);
        const auto& bt = jc.adapted_bidegrees(k + 1);
        for (std::size_t i = 0; i < bf.size(); ++i)
            if (bf[i] == from) cols.push_back(i);
        for (std::size_t i = 0; i < bt.size(); ++i)
            if (bt[i] == to) rows.push_back(i);
    }
    Matrix<G> block(rows.size(), cols.size());
    if (rows.empty() || cols.empty()) return block;
    Matrix<G> d = adapted_differential(jc, alpha, k);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c) block(r, c) = d(rows[r], cols[c]);
    return block;
}

namespace {

Form<G> bidegree_part_of_d(const ComplexStructure& jc, const TwistForm<Rational>& alpha, const Form<G>& phi,
                           int dp, int dq) {
    const int n = jc.complex().n();
    const int k = phi.degree();
    if (k == n) return Form<G>(n, n);
    auto split = jc.bidegree_split(phi);
    if (split.size() > 1) throw std::invalid_argument("form is not of pure bidegree");
    if (split.empty()) return Form<G>(n, k + 1);
    const Bidegree b = split.begin()->first;
    Form<G> dphi = novikov::apply(lift<G>(twisted_differential(jc.complex(), alpha, k)), phi, k + 1);
    auto parts = jc.bidegree_split(dphi);
    auto it = parts.find({b.first + dp, b.second + dq});
    return it == parts.end() ? Form<G>(n, k + 1) : it->second;
}

}  // namespace

Form<G> dolbeault_twisted(const ComplexStructure& jc, const TwistForm<Rational>& alpha, const Form<G>& phi) {
    return bidegree_part_of_d(jc, alpha, phi, 0, 1);
}

Form<G> del_twisted(const ComplexStructure& jc, const TwistForm<Rational>& alpha, const Form<G>& phi) {
    return bidegree_part_of_d(jc, alpha, phi, 1, 0);
}

HodgeDiamond hodge_diamond(const ComplexStructure& jc, const TwistForm<Rational>& alpha) {
    HodgeDiamond hd;
    hd.m = jc.half_dim();
    hd.twist = "t = " + alpha.scale().str();
    hd.h.assign(hd.m + 1, std::vector<std::size_t>(hd.m + 1, 0));
    for (int p = 0; p <= hd.m; ++p)
        for (int q = 0; q <= hd.m; ++q) {
            std::size_t out = q < hd.m ? rank(bidegree_block(jc, alpha, {p, q}, {p, q + 1})) : 0;
            std::size_t in = q > 0 ? rank(bidegree_block(jc, alpha, {p, q - 1}, {p, q})) : 0;
            hd.h[p][q] = jc.dim(p, q) - out - in;
        }
    return hd;
}

Form<Rational> lee_torsion(const ComplexStructure& jc, const TwistForm<Rational>& alpha) {
    const Form<Rational> a = alpha.scale() * alpha.base();
    const Form<Rational> ja = jc.apply(a);
    return jc.complex().d(ja) + wedge(a, ja);
}

std::vector<Form<G>> integrability_defects(const ComplexStructure& jc) {
    const CEComplex& cx = jc.complex();
    const Matrix<G> d1 = lift<G>(cx.d_matrix(1));
    const Matrix<G> pi02 = jc.projection(0, 2);
    std::vector<Form<G>> out;
    for (const auto& phi : jc.holomorphic_coframe())
        out.push_back(novikov::apply(pi02, novikov::apply(d1, phi, 2), 2));
    return out;
}

}  // namespace novikov
