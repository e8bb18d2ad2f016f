#include "novikov/lcs/solver.hpp"

#include <cmath>
#include <limits>

namespace novikov {

namespace {

double norm(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

std::vector<double> sub(std::vector<double> a, const std::vector<double>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

std::vector<double> to_double(const Form<Rational>& f) {
    std::vector<double> v;
    for (const auto& c : f.coeffs()) v.push_back(c.to_double());
    return v;
}

Form<double> as_double(const Form<Rational>& f) {
    return f.map<double>([](const Rational& x) { return x.to_double(); });
}

}  // namespace

bool positive_definite(const Matrix<Rational>& g) {
    // Sylvester: all leading principal minors positive <=> every pivot of elimination without swaps is positive.
    Matrix<Rational> m = g;
    const std::size_t n = m.rows();
    for (std::size_t k = 0; k < n; ++k) {
        if (m(k, k).sign() <= 0) return false;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m(i, k).is_zero()) continue;
            const Rational f = m(i, k) / m(k, k);
            for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return true;
}

TamingVerdict taming_check(const ComplexStructure& jc, const Form<Rational>& omega) {
    if (omega.degree() != 2) throw std::invalid_argument("taming is a property of 2-forms");
    const int n = jc.complex().n();
    const Form<Rational> w11 = jc.part_11(omega);
    Matrix<Rational> w(n, n);
    for (std::size_t i = 0; i < w11.size(); ++i) {
        const Mask m = w11.mask(i);
        const int a = std::countr_zero(m), b = 31 - std::countl_zero(m);
        w(a, b) = w11[i];
        w(b, a) = -w11[i];
    }
    TamingVerdict v;
    v.metric = w * jc.j_vectors();
    v.tames = positive_definite(v.metric);
    auto ev = symmetric_eigenvalues(lift<double>(v.metric));
    v.margin = ev.empty() ? 0.0 : ev.front();
    return v;
}

LCSCandidate make_candidate(const ComplexStructure& jc, const TwistForm<Rational>& alpha, Form<Rational> omega) {
    Form<Rational> r = d_twisted(jc.complex(), alpha, omega);
    if (!r.is_zero())
        throw std::invalid_argument("omega is not d_alpha-closed: d_alpha omega = " + jc.complex().format(r));
    LCSCandidate c{omega, alpha, 0.0, taming_check(jc, omega)};
    return c;
}

std::string status_name(DeformStatus s) {
    switch (s) {
        case DeformStatus::converged: return "converged";
        case DeformStatus::obstructed: return "obstructed";
        case DeformStatus::diverged: return "diverged";
    }
    return "?";
}

DeformationRun deform(const ComplexStructure& jc, const LCSCandidate& base, const Form<Rational>& beta,
                      const DeformOptions& opts) {
    const CEComplex& cx = jc.complex();
    const int n = cx.n();
    if (n < 3) throw UnsupportedError("deformation needs 3-forms");
    if (!d_twisted(cx, base.alpha, base.omega).is_zero()) throw std::invalid_argument("omega0 is not d_alpha-closed");
    if (beta.degree() != 1) throw std::invalid_argument("beta must be a 1-form");
    if (!cx.d(beta).is_zero()) throw std::invalid_argument("beta is not closed: d beta = " + cx.format(cx.d(beta)));
    if (opts.order < 0) throw std::invalid_argument("order must be nonnegative");

    DeformationRun run;
    run.beta = beta;
    run.order = opts.order;
    run.t = opts.t;
    run.b3 = cohomology(cx, base.alpha).betti[3];
    if (run.b3 != 0) {
        run.status = DeformStatus::obstructed;
        run.cause = "b3(alpha) = " + std::to_string(run.b3);
        return run;
    }

    const auto a = TwistForm<double>::certified(base.alpha.base(), base.alpha.scale().to_double());
    const Matrix<double> lap3 = laplacian(cx, a, 3);
    const Matrix<double> dstar3 = adjoint_matrix(cx, a, 3);
    const Matrix<double> d2 = twisted_differential(cx, a, 2);
    const Matrix<double> d3 = twisted_differential(cx, a, 3);
    const Matrix<double> wedge_beta = wedge_matrix(as_double(beta), 2);
    const double tol = opts.tolerance;

    run.omegas.push_back(to_double(base.omega));
    for (int i = 0; i < opts.order; ++i) {
        const auto rhs = wedge_beta.apply(run.omegas.back());
        run.rhs_closedness.push_back(norm(d3.apply(rhs)));
        const auto next = dstar3.apply(pseudo_inverse_apply(lap3, rhs));
        run.solve_residuals.push_back(norm(sub(d2.apply(next), rhs)));
        run.omegas.push_back(next);
    }
    for (const auto& w : run.omegas) run.norms.push_back(norm(w));

    // ratio test over the last five orders
    {
        double sum = 0;
        int count = 0;
        const int last = static_cast<int>(run.norms.size()) - 1;
        for (int i = std::max(0, last - 5); i < last; ++i)
            if (run.norms[i] > 1e-300 && run.norms[i + 1] > 1e-300) {
                sum += run.norms[i + 1] / run.norms[i];
                ++count;
            }
        const double ratio = count ? sum / count : 0.0;
        run.radius_estimate = ratio > 0 ? 1.0 / ratio : std::numeric_limits<double>::infinity();
    }

    run.omega_t.assign(run.omegas[0].size(), 0.0);
    double power = 1;
    for (const auto& w : run.omegas) {
        for (std::size_t j = 0; j < w.size(); ++j) run.omega_t[j] += power * w[j];
        power *= opts.t;
    }
    const Form<double> lee = as_double(base.alpha.scale() * base.alpha.base()) + opts.t * as_double(beta);
    const Matrix<double> d_t = lift<double>(cx.d_matrix(2)) - wedge_matrix(lee, 2);
    run.final_residual = norm(d_t.apply(run.omega_t));

    {
        // metric of omega(t), same construction as taming_check in floating point
        Form<double> w(n, 2, run.omega_t);
        Matrix<double> a11 = induced_matrix(lift<double>(jc.j_forms()), 2);
        Form<double> w11 = 0.5 * (w + apply(a11, w, 2));
        Matrix<double> wm(n, n);
        for (std::size_t i = 0; i < w11.size(); ++i) {
            const Mask m = w11.mask(i);
            const int p = std::countr_zero(m), q = 31 - std::countl_zero(m);
            wm(p, q) = w11[i];
            wm(q, p) = -w11[i];
        }
        Matrix<double> g = wm * lift<double>(jc.j_vectors());
        Matrix<double> sym = 0.5 * (g + g.transpose());
        run.taming_margin = symmetric_eigenvalues(sym).front();
    }

    auto fail = [&](std::string cause) {
        run.status = DeformStatus::diverged;
        run.cause = std::move(cause);
        return run;
    };
    for (std::size_t i = 0; i < run.solve_residuals.size(); ++i) {
        if (run.rhs_closedness[i] >= tol)
            return fail("right-hand side at order " + std::to_string(i) + " is not d_alpha-closed");
        if (run.solve_residuals[i] >= tol) return fail("solve residual at order " + std::to_string(i) + " above tolerance");
    }
    if (std::abs(opts.t) > 0.8 * run.radius_estimate)
        return fail("|t| exceeds 0.8 x estimated radius " + std::to_string(run.radius_estimate));
    if (run.final_residual >= tol) return fail("truncated series residual above tolerance");
    if (!(run.taming_margin > 0)) return fail("omega(t) does not tame J");
    run.status = DeformStatus::converged;
    return run;
}

Rational torsion_pairing(const ComplexStructure& jc, const Form<Rational>& alpha, const Form<Rational>& omega) {
    const Form<Rational> top = wedge(wedge(alpha, jc.apply(alpha)), jc.part_11(omega));
    return top.at(ExteriorBasis::get(jc.complex().n()).full()) * Rational(jc.complex().orientation_sign());
}

ScanReport lee_class_scan(const ComplexStructure& jc, const Form<Rational>& alpha_base, const std::vector<Rational>& ts,
                          const ScanOptions& opts) {
    const CEComplex& cx = jc.complex();
    ScanReport rep;
    rep.torsion = lee_torsion(jc, TwistForm<Rational>::make(cx, alpha_base, Rational(1)));
    rep.torsion_zero = rep.torsion.is_zero();
    for (const auto& t : ts) {
        ScanEntry e;
        e.t = t;
        if (t.is_zero()) {
            e.excluded = true;
            e.searched = false;
            rep.entries.push_back(std::move(e));
            continue;
        }
        const auto alpha = TwistForm<Rational>::certified(alpha_base, t);
        std::vector<Form<Rational>> closed;
        for (auto& v : kernel_basis(twisted_differential(cx, alpha, 2))) closed.emplace_back(cx.n(), 2, std::move(v));
        e.kernel_dim = closed.size();
        if (rep.torsion_zero)
            for (const auto& w : closed)
                if (!((t - Rational(1)) * torsion_pairing(jc, alpha_base, w)).is_zero()) e.identity_holds = false;

        kernels::TamingGrid grid;
        grid.lo = opts.lo;
        grid.step = opts.step;
        grid.steps = opts.steps;
        for (const auto& w : closed) grid.metric_basis.push_back(lift<double>(taming_check(jc, w).metric));
        double points = std::pow(static_cast<double>(opts.steps), static_cast<double>(closed.size()));
        if (closed.empty() || points > static_cast<double>(opts.max_points)) {
            e.searched = !closed.empty() ? false : true;
            rep.entries.push_back(std::move(e));
            continue;
        }
        std::size_t start = 0;
        for (;;) {
            auto idx = opts.parallel ? kernels::first_taming_index_parallel(grid, start)
                                     : kernels::first_taming_index_serial(grid, start);
            if (!idx) break;
            auto coords = grid.coordinates(*idx);
            Form<Rational> w(cx.n(), 2);
            for (std::size_t b = 0; b < closed.size(); ++b) w += coords[b] * closed[b];
            auto v = taming_check(jc, w);
            if (v.tames) {
                e.witness = w;
                e.margin = v.margin;
                e.c = torsion_pairing(jc, alpha_base, w);
                break;
            }
            start = *idx + 1;
        }
        if (e.witness && !(t * (t - Rational(1))).is_zero()) rep.certified_scales.push_back(t);
        rep.entries.push_back(std::move(e));
    }

    if (!rep.torsion_zero) {
        rep.certificate = "condition (1) fails: no single-point certificate";
    } else {
        std::optional<Rational> c;
        for (const auto& e : rep.entries)
            if (e.c && e.t == Rational(1)) c = e.c;
        for (const auto& e : rep.entries)
            if (!c && e.c) c = e.c;
        rep.certificate = c ? "t(t-1)·c = 0, c = " + c->str() + " → t = 1"
                            : "t(t-1)·c = 0, no taming witness in the bounded search";
    }
    return rep;
}

bool AuditReport::ok() const {
    for (const auto& r : rows)
        if (!r.ok) return false;
    return true;
}

AuditReport vanishing_audit(const CEComplex& cx, const Form<Rational>& alpha_base, const std::string& pi1, long b2,
                            const std::vector<Rational>& ts, bool parallel) {
    if (pi1 != "Z")
        throw AuditRefused("vanishing audit needs a model with fundamental group Z; this model is tagged '" + pi1 + "'");
    auto profiles = parallel ? kernels::betti_grid_parallel(cx, alpha_base, ts)
                             : kernels::betti_grid_serial(cx, alpha_base, ts);
    AuditReport rep;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        AuditRow row{ts[i], profiles[i].betti, true};
        if (!ts[i].is_zero())
            for (std::size_t k = 0; k < row.betti.size(); ++k) {
                const std::size_t want = k == 2 ? static_cast<std::size_t>(b2) : 0;
                if (row.betti[k] != want) row.ok = false;
            }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

}  // namespace novikov
