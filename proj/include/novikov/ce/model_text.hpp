#pragma once

#include "novikov/ce/complex.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace novikov {

/// Malformed model description; line is 1-based (0 when not tied to a line).
struct ModelParseError : std::runtime_error {
    ModelParseError(int line, const std::string& what)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line(line) {}
    int line;
};

/// Parsed model description with parameters already substituted.
///
///   gen e1 e2 e3 e4
///   param q = 1
///   d e3 = 1/2 e1^e3 + q e1^e4     (unlisted generators are closed)
///   J e1 = -e2                     (image of each coframe element)
///   orient e1^e2^e3^e4
///   alpha e1                       (base of the distinguished twist)
///   omega e2^e1 + e4^e3            (reference LCS form)
///   meta pi1 Z                     (free-form key/value data)
struct ModelText {
    std::vector<std::string> generators;
    std::map<std::string, Rational> params;
    std::vector<Form<Rational>> differentials;
    std::vector<int> orientation;
    std::optional<Matrix<Rational>> j_forms;
    std::optional<Form<Rational>> alpha;
    std::optional<Form<Rational>> omega;
    std::vector<std::pair<std::string, std::string>> meta;

    std::optional<std::string> meta_value(const std::string& key) const;
};

/// Parses the text. overrides replace declared param values; an override for an
/// undeclared param is an error.
ModelText parse_model_text(const std::string& text, const std::map<std::string, Rational>& overrides = {});

/// Parses a linear combination of generator monomials, e.g. "1/2 e1^e3 - q e1^e4".
/// degree is required when the expression may be "0"; -1 infers it from the monomials.
Form<Rational> parse_form_expr(const std::string& expr, const std::vector<std::string>& generators,
                               const std::map<std::string, Rational>& params = {}, int degree = -1);

CEComplexPtr build_complex(const ModelText& m);

}  // namespace novikov
