#pragma once

#include "novikov/ce/complex_structure.hpp"
#include "novikov/ce/model_text.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace novikov {

/// Bad user input: unknown model id, unreadable file, malformed metadata.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ModelRecord {
    std::string id;
    ModelText text;
    CEComplexPtr cx;
    ComplexStructurePtr jc;             ///< null when the model declares no J
    Form<Rational> alpha;               ///< distinguished closed 1-form
    std::string pi1;                    ///< "Z", "not-Z" or "abelian"
    long b2 = 0;
    long euler = 0;
    std::vector<std::size_t> betti;     ///< declared untwisted Betti numbers
    bool unimodular = false;            ///< declared flag
    std::string torsion;                ///< "zero" or "nonzero"
    std::string role;

    const ComplexStructure& structure() const;
};

/// Runs the load-time gates: d^2 = 0, J^2 = -1, integrability, closed alpha and the declared
/// torsion behaviour. Gate failures throw GateFailure; missing metadata throws InputError.
ModelRecord record_from_text(const std::string& id, const ModelText& text);

/// Bundled id or a path to a model file.
ModelRecord load_model(const std::string& id_or_path, const std::map<std::string, Rational>& overrides = {});

/// Reads a bundled model or a file path as text.
std::string read_model_source(const std::string& id_or_path);
std::string read_complex_source(const std::string& id_or_path);

/// Serializes back to the model file format; parse_model_text(format_model_text(m)) == m up to params.
std::string format_model_text(const ModelText& m);

/// Copies of the text with one structure constant (coefficient of e^i ^ e^j in d e^k) shifted by delta.
struct Mutation {
    int target = 0;        ///< k
    Mask monomial = 0;     ///< e^i ^ e^j
    ModelText text;
};
std::vector<Mutation> structure_constant_mutations(const ModelText& m, const Rational& delta = Rational(1));

struct Check {
    std::string name;
    bool ok = true;
    std::string detail;
};

struct VerifyReport {
    std::string id;
    std::vector<Check> checks;
    bool ok() const;
};

struct VerifyOptions {
    std::uint64_t seed = kDefaultSeed;
    int float_trials = 100;
    double identity_tol = 1e-12;
};

/// Every invariant suite on a loaded record.
VerifyReport verify_record(const ModelRecord& r, const VerifyOptions& opts = {});
/// As verify_record, with load-time gate failures reported as a failed check.
VerifyReport verify_text(const std::string& id, const ModelText& text, const VerifyOptions& opts = {});

}  // namespace novikov
