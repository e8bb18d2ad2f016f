#pragma once

#include "novikov/exactalg/laurent.hpp"

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace novikov {

struct ReportVerdict {
    std::string name;
    bool ok = true;
    std::string detail;
    bool operator==(const ReportVerdict&) const = default;
};

/// Output of one CLI command. Exact scalars are stored as "p/q" strings and polynomials as
/// exponent:coefficient lists, so the document carries no floating-point formatting choices
/// beyond the residual values.
struct ReportDocument {
    std::string command;                                        ///< echo of the invocation
    std::string subject;                                        ///< model or complex id
    std::vector<std::pair<std::string, std::string>> fields;    ///< twist, status, ...
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::pair<std::string, std::string>> certificates;
    std::vector<std::pair<std::string, double>> residuals;
    std::vector<ReportVerdict> verdicts;
    std::vector<std::string> notes;

    void field(std::string key, std::string value) { fields.emplace_back(std::move(key), std::move(value)); }
    bool operator==(const ReportDocument&) const = default;
};

/// "e:c e:c ..." by increasing exponent; "0" for the zero polynomial.
std::string poly_terms(const LaurentPoly& p);

std::string emit_text(const ReportDocument& doc);
std::string emit_json(const ReportDocument& doc);
/// Inverse of emit_json; throws std::invalid_argument on schema violations.
ReportDocument parse_json(const std::string& text);

}  // namespace novikov
