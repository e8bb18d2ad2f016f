#include "novikov/models/report.hpp"

#include <json.hpp>

#include <cstdio>

namespace novikov {

namespace {

using nlohmann::json;

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6e", x);
    return buf;
}

json pairs(const std::vector<std::pair<std::string, std::string>>& v, const char* k, const char* val) {
    json a = json::array();
    for (const auto& [x, y] : v) a.push_back({{k, x}, {val, y}});
    return a;
}

const json& member(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("report lacks '") + key + "'");
    return j.at(key);
}

std::vector<std::pair<std::string, std::string>> read_pairs(const json& a, const char* k, const char* val) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& e : a) out.emplace_back(member(e, k).get<std::string>(), member(e, val).get<std::string>());
    return out;
}

}  // namespace

std::string poly_terms(const LaurentPoly& p) {
    if (p.is_zero()) return "0";
    std::string s;
    for (const auto& [e, c] : p.terms()) s += (s.empty() ? "" : " ") + std::to_string(e) + ":" + c.str();
    return s;
}

std::string emit_text(const ReportDocument& doc) {
    std::string out;
    out += "command: " + doc.command + "\n";
    out += "subject: " + doc.subject + "\n";
    for (const auto& [k, v] : doc.fields) out += k + ": " + v + "\n";
    if (!doc.columns.empty()) {
        std::vector<std::size_t> width(doc.columns.size(), 0);
        for (std::size_t c = 0; c < doc.columns.size(); ++c) width[c] = doc.columns[c].size();
        for (const auto& r : doc.rows)
            for (std::size_t c = 0; c < r.size() && c < width.size(); ++c) width[c] = std::max(width[c], r[c].size());
        auto line = [&](const std::vector<std::string>& cells) {
            std::string l;
            for (std::size_t c = 0; c < cells.size(); ++c) {
                std::string cell = cells[c];
                if (c + 1 < cells.size() && c < width.size()) cell.resize(width[c], ' ');
                l += "  " + cell;
            }
            return l + "\n";
        };
        out += line(doc.columns);
        for (const auto& r : doc.rows) out += line(r);
    }
    for (const auto& [k, v] : doc.certificates) out += "certificate " + k + ": " + v + "\n";
    for (const auto& [k, v] : doc.residuals) out += "residual " + k + ": " + fmt_double(v) + "\n";
    for (const auto& v : doc.verdicts)
        out += "verdict " + v.name + ": " + (v.ok ? "ok" : "FAIL") + (v.detail.empty() ? "" : " (" + v.detail + ")") + "\n";
    for (const auto& n : doc.notes) out += "note: " + n + "\n";
    return out;
}

std::string emit_json(const ReportDocument& doc) {
    json j;
    j["schema"] = "novikov-report/1";
    j["command"] = doc.command;
    j["subject"] = doc.subject;
    j["fields"] = pairs(doc.fields, "key", "value");
    j["table"] = {{"columns", doc.columns}, {"rows", doc.rows}};
    j["certificates"] = pairs(doc.certificates, "name", "value");
    json res = json::array();
    for (const auto& [k, v] : doc.residuals) res.push_back({{"name", k}, {"value", v}});
    j["residuals"] = res;
    json ver = json::array();
    for (const auto& v : doc.verdicts) ver.push_back({{"name", v.name}, {"ok", v.ok}, {"detail", v.detail}});
    j["verdicts"] = ver;
    j["notes"] = doc.notes;
    return j.dump(2) + "\n";
}

ReportDocument parse_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(e.what());
    }
    try {
        if (member(j, "schema") != "novikov-report/1") throw std::invalid_argument("unknown report schema");
        ReportDocument d;
        d.command = member(j, "command").get<std::string>();
        d.subject = member(j, "subject").get<std::string>();
        d.fields = read_pairs(member(j, "fields"), "key", "value");
        const auto& t = member(j, "table");
        d.columns = member(t, "columns").get<std::vector<std::string>>();
        d.rows = member(t, "rows").get<std::vector<std::vector<std::string>>>();
        d.certificates = read_pairs(member(j, "certificates"), "name", "value");
        for (const auto& r : member(j, "residuals"))
            d.residuals.emplace_back(member(r, "name").get<std::string>(), member(r, "value").get<double>());
        for (const auto& v : member(j, "verdicts"))
            d.verdicts.push_back({member(v, "name").get<std::string>(), member(v, "ok").get<bool>(),
                                  member(v, "detail").get<std::string>()});
        d.notes = member(j, "notes").get<std::vector<std::string>>();
        return d;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed report: ") + e.what());
    }
}

}  // namespace novikov
