#include "novikov/exactalg/linalg.hpp"

#include "novikov/exactalg/smith.hpp"

#include <Eigen/Dense>

#include <cstdlib>
#include <numeric>
#include <string>

namespace novikov {

std::string_view domain_name(Domain d) {
    switch (d) {
        case Domain::rational: return "Rational";
        case Domain::laurent: return "LaurentPoly";
        case Domain::rational_function: return "RationalFunction";
        case Domain::gaussian: return "GaussianRational";
        case Domain::float64: return "Float64";
    }
    return "?";
}

Domain domain_of(const Scalar& s) {
    return std::visit([](const auto& v) { return scalar_traits<std::decay_t<decltype(v)>>::domain; }, s);
}

Domain domain_of(const AnyMatrix& m) {
    return std::visit([](const auto& v) { return scalar_traits<typename std::decay_t<decltype(v)>::value_type>::domain; },
                      m);
}

namespace {

template <class T>
AnyMatrix build_typed(std::size_t rows, std::size_t cols, const std::vector<Scalar>& entries) {
    Matrix<T> m(rows, cols);
    for (std::size_t i = 0; i < entries.size(); ++i) m(i / cols, i % cols) = std::get<T>(entries[i]);
    return m;
}

Eigen::MatrixXd to_eigen(const Matrix<double>& m) {
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
    return out;
}

}  // namespace

AnyMatrix make_matrix(std::size_t rows, std::size_t cols, const std::vector<Scalar>& entries) {
    if (entries.size() != rows * cols) throw std::invalid_argument("entry count does not match shape");
    if (entries.empty()) return Matrix<Rational>(rows, cols);
    const Domain d = domain_of(entries.front());
    for (std::size_t i = 1; i < entries.size(); ++i)
        if (domain_of(entries[i]) != d)
            throw DomainMismatch("entry " + std::to_string(i) + " is " + std::string(domain_name(domain_of(entries[i]))) +
                                 ", expected " + std::string(domain_name(d)));
    switch (d) {
        case Domain::rational: return build_typed<Rational>(rows, cols, entries);
        case Domain::laurent: return build_typed<LaurentPoly>(rows, cols, entries);
        case Domain::rational_function: return build_typed<RationalFunction>(rows, cols, entries);
        case Domain::gaussian: return build_typed<GaussianRational>(rows, cols, entries);
        case Domain::float64: return build_typed<double>(rows, cols, entries);
    }
    throw DomainMismatch("unknown domain");
}

double default_rank_tolerance() {
    if (const char* env = std::getenv("NOVIKOV_RANK_TOL")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end != env && v > 0) return v;
    }
    return kDefaultRankTolerance;
}

std::size_t rank(const Matrix<LaurentPoly>& m) {
    return rank(m.map<RationalFunction>([](const LaurentPoly& p) { return RationalFunction(p); }));
}

std::size_t rank(const Matrix<double>& m, double tol) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(m));
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > tol * s(0)) ++r;
    return r;
}

std::size_t rank(const AnyMatrix& m) {
    return std::visit(
        [](const auto& typed) -> std::size_t {
            using T = typename std::decay_t<decltype(typed)>::value_type;
            if constexpr (std::is_same_v<T, double>)
                return rank(typed, default_rank_tolerance());
            else
                return rank(typed);
        },
        m);
}

std::vector<std::vector<double>> kernel_basis(const Matrix<double>& m, double tol) {
    std::vector<std::vector<double>> out;
    if (m.cols() == 0) return out;
    if (m.rows() == 0) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            std::vector<double> v(m.cols(), 0.0);
            v[c] = 1.0;
            out.push_back(v);
        }
        return out;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(m), Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double cut = s.size() > 0 ? tol * s(0) : 0.0;
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(m.cols()); ++j) {
        bool null_direction = j >= s.size() || s(j) <= cut || s(0) == 0.0;
        if (!null_direction) continue;
        std::vector<double> v(m.cols());
        for (std::size_t i = 0; i < m.cols(); ++i) v[i] = svd.matrixV()(static_cast<Eigen::Index>(i), j);
        out.push_back(std::move(v));
    }
    return out;
}

Matrix<Rational> specialize(const Matrix<LaurentPoly>& m, const Rational& t0) {
    if (t0.is_zero()) throw SpecializationError("specialization at t = 0 is not allowed (holonomy must be invertible)");
    return specialize(m.map<RationalFunction>([](const LaurentPoly& p) { return RationalFunction(p); }), t0);
}

Matrix<Rational> specialize(const Matrix<RationalFunction>& m, const Rational& t0) {
    if (t0.is_zero()) throw SpecializationError("specialization at t = 0 is not allowed (holonomy must be invertible)");
    Matrix<Rational> out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
            try {
                out(r, c) = m(r, c).evaluate(t0);
            } catch (const std::domain_error&) {
                throw SpecializationError("entry (" + std::to_string(r) + "," + std::to_string(c) + ") = " +
                                          m(r, c).str() + " has a pole at t = " + t0.str());
            }
        }
    return out;
}

LaurentPoly minor_gcd(const Matrix<LaurentPoly>& m, std::size_t k) {
    if (k < 1 || k > std::min(m.rows(), m.cols())) throw std::invalid_argument("minor size out of range");
    std::vector<LaurentPoly> factors = invariant_factors(m);
    if (factors.size() < k) return {};
    LaurentPoly out(1);
    for (std::size_t i = 0; i < k; ++i) out *= factors[i];
    return out.normalized();
}

std::vector<double> pseudo_inverse_apply(const Matrix<double>& m, const std::vector<double>& v, double tol) {
    if (v.size() != m.rows()) throw std::invalid_argument("pseudo_inverse_apply size mismatch");
    if (m.cols() == 0) return {};
    Eigen::MatrixXd a = to_eigen(m);
    Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(tol);
    Eigen::VectorXd x = svd.solve(b);
    return {x.data(), x.data() + x.size()};
}

std::vector<double> symmetric_eigenvalues(const Matrix<double>& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(m), Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

}  // namespace novikov
