#pragma once

#include "novikov/ce/complex_structure.hpp"
#include "novikov/kernels/grid.hpp"

#include <optional>
#include <string>
#include <vector>

namespace novikov {

struct TamingVerdict {
    bool tames = false;         ///< exact positive definiteness of g
    double margin = 0;          ///< smallest eigenvalue of g
    Matrix<Rational> metric;    ///< g(X_i, X_j) = omega^{1,1}(X_i, J X_j)
};

/// Uses only the (1,1)-part of omega.
TamingVerdict taming_check(const ComplexStructure& jc, const Form<Rational>& omega);
/// Exact Sylvester test via elimination pivots.
bool positive_definite(const Matrix<Rational>& g);

struct LCSCandidate {
    Form<Rational> omega;
    TwistForm<Rational> alpha;
    double closedness_residual = 0;
    TamingVerdict taming;
};

/// Validates d_alpha omega = 0 exactly and records the taming verdict.
LCSCandidate make_candidate(const ComplexStructure& jc, const TwistForm<Rational>& alpha, Form<Rational> omega);

enum class DeformStatus { converged, obstructed, diverged };
std::string status_name(DeformStatus s);

struct DeformOptions {
    int order = 30;
    double t = 0;
    double tolerance = 1e-10;
};

struct DeformationRun {
    DeformStatus status = DeformStatus::diverged;
    std::string cause;
    std::size_t b3 = 0;
    Form<Rational> beta;
    int order = 0;
    double t = 0;
    std::vector<std::vector<double>> omegas;     ///< omega_0 .. omega_N, coframe coordinates
    std::vector<double> solve_residuals;         ///< |d_a omega_{i+1} - beta ^ omega_i|, i < N
    std::vector<double> rhs_closedness;          ///< |d_a (beta ^ omega_i)|, i < N
    std::vector<double> norms;                   ///< |omega_i|
    double radius_estimate = 0;                  ///< infinity when the series terminates
    std::vector<double> omega_t;
    double final_residual = 0;                   ///< |d_{a + t beta} omega(t)|
    double taming_margin = 0;                    ///< smallest eigenvalue of the metric of omega(t)
};

/// Power-series deformation omega(t) = sum omega_i t^i with Lee form alpha + t beta.
/// Throws std::invalid_argument when omega0 is not d_alpha-closed or beta is not closed.
DeformationRun deform(const ComplexStructure& jc, const LCSCandidate& base, const Form<Rational>& beta,
                      const DeformOptions& opts);

struct ScanOptions {
    Rational lo = Rational(-3);
    Rational step = Rational(1, 4);
    std::size_t steps = 25;
    std::size_t max_points = 50'000'000;
    bool parallel = true;
};

struct ScanEntry {
    Rational t;
    bool excluded = false;                       ///< t = 0
    std::size_t kernel_dim = 0;                  ///< closed invariant 2-forms for d_{t a}
    std::optional<Form<Rational>> witness;       ///< first taming closed form found
    double margin = 0;
    std::optional<Rational> c;                   ///< volume coefficient of a ^ Ja ^ witness^{1,1}
    bool searched = true;                        ///< false when the grid would exceed max_points
    /// Exact check over a basis of closed forms: (t - 1) * c(omega) = 0 whenever the torsion vanishes.
    bool identity_holds = true;
};

struct ScanReport {
    Form<Rational> torsion;
    bool torsion_zero = false;
    std::vector<ScanEntry> entries;
    std::string certificate;                     ///< the certificate line
    std::vector<Rational> certified_scales;      ///< t values with a witness and t(t-1) != 0
};

/// Volume coefficient of alpha ^ J alpha ^ omega^{1,1}.
Rational torsion_pairing(const ComplexStructure& jc, const Form<Rational>& alpha, const Form<Rational>& omega);

ScanReport lee_class_scan(const ComplexStructure& jc, const Form<Rational>& alpha_base, const std::vector<Rational>& ts,
                          const ScanOptions& opts = {});

/// Audit refused: the fundamental-group hypothesis does not hold for the model.
struct AuditRefused : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AuditRow {
    Rational t;
    std::vector<std::size_t> betti;
    bool ok = true;   ///< t != 0: b_k = 0 for k != 2 and b_2 = the declared b2
};

struct AuditReport {
    std::vector<AuditRow> rows;
    bool ok() const;
};

/// pi1 is the model's fundamental-group tag; anything other than "Z" is refused.
AuditReport vanishing_audit(const CEComplex& cx, const Form<Rational>& alpha_base, const std::string& pi1, long b2,
                            const std::vector<Rational>& ts, bool parallel = true);

}  // namespace novikov
