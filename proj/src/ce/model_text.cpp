#include "novikov/ce/model_text.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace novikov {

namespace {

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string tok; in >> tok;) out.push_back(tok);
    return out;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool is_identifier(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

/// Returns the generator mask and sign of a monomial token, or nullopt if the token is not a monomial.
std::optional<std::pair<Mask, int>> parse_monomial(const std::string& tok, const std::vector<std::string>& gens) {
    Mask m = 0;
    int sign = 1;
    for (const auto& part : split_on(tok, '^')) {
        auto it = std::find(gens.begin(), gens.end(), part);
        if (it == gens.end()) return std::nullopt;
        const Mask bit = Mask{1} << (it - gens.begin());
        if (m & bit) return std::pair<Mask, int>{0, 0};
        sign *= wedge_sign(m, bit);
        m |= bit;
    }
    return std::pair<Mask, int>{m, sign};
}

Rational parse_coefficient(const std::string& tok, const std::map<std::string, Rational>& params) {
    Rational c(1);
    for (const auto& factor : split_on(tok, '*')) {
        auto it = params.find(factor);
        if (it != params.end()) {
            c *= it->second;
            continue;
        }
        try {
            c *= Rational::parse(factor);
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("unknown symbol '" + factor + "'");
        }
    }
    return c;
}

}  // namespace

Form<Rational> parse_form_expr(const std::string& expr, const std::vector<std::string>& gens,
                               const std::map<std::string, Rational>& params, int degree) {
    const int n = static_cast<int>(gens.size());
    std::vector<std::pair<Rational, Mask>> terms;
    int sign = 1;
    std::optional<Rational> coef;
    bool expect_term = true;
    for (std::string tok : split_ws(expr)) {
        if (tok == "+" || tok == "-") {
            if (!expect_term && coef) throw std::invalid_argument("coefficient without monomial before '" + tok + "'");
            if (tok == "-") sign = -sign;
            expect_term = true;
            continue;
        }
        while (!tok.empty() && (tok[0] == '-' || tok[0] == '+')) {
            if (tok[0] == '-') sign = -sign;
            tok.erase(0, 1);
        }
        if (tok.empty()) throw std::invalid_argument("dangling sign");
        if (auto mono = parse_monomial(tok, gens)) {
            Rational c = coef.value_or(Rational(1)) * Rational(sign * mono->second);
            if (mono->second != 0) {
                const int deg = degree_of(mono->first);
                if (degree < 0) degree = deg;
                if (deg != degree) throw std::invalid_argument("mixed degrees in '" + expr + "'");
                terms.emplace_back(c, mono->first);
            }
            sign = 1;
            coef.reset();
            expect_term = false;
            continue;
        }
        if (coef) throw std::invalid_argument("two coefficients in a row at '" + tok + "'");
        coef = parse_coefficient(tok, params);
        expect_term = false;
    }
    if (coef && !coef->is_zero()) throw std::invalid_argument("coefficient without monomial in '" + expr + "'");
    if (terms.empty() && !coef) throw std::invalid_argument("empty expression");
    Form<Rational> out(n, std::max(degree, 0));
    for (const auto& [c, m] : terms) out.at(m) += c;
    return out;
}

std::optional<std::string> ModelText::meta_value(const std::string& key) const {
    for (const auto& [k, v] : meta)
        if (k == key) return v;
    return std::nullopt;
}

ModelText parse_model_text(const std::string& text, const std::map<std::string, Rational>& overrides) {
    ModelText m;
    std::vector<std::pair<int, std::string>> lines;
    {
        std::istringstream in(text);
        int no = 0;
        for (std::string line; std::getline(in, line);) {
            ++no;
            if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
            line = trim(line);
            if (!line.empty()) lines.emplace_back(no, line);
        }
    }

    auto keyword = [](const std::string& line) { return line.substr(0, line.find_first_of(" \t")); };
    auto rest = [](const std::string& line) {
        auto p = line.find_first_of(" \t");
        return p == std::string::npos ? std::string() : trim(line.substr(p));
    };

    std::set<std::string> used_overrides;
    for (const auto& [no, line] : lines) {
        const std::string kw = keyword(line);
        if (kw == "gen") {
            if (!m.generators.empty()) throw ModelParseError(no, "generators declared twice");
            m.generators = split_ws(rest(line));
            if (m.generators.empty()) throw ModelParseError(no, "no generators listed");
            if (m.generators.size() < 2) throw ModelParseError(no, "need at least two generators");
            if (static_cast<int>(m.generators.size()) > kMaxGenerators)
                throw ModelParseError(no, "too many generators");
            std::set<std::string> seen;
            for (const auto& g : m.generators) {
                if (!is_identifier(g)) throw ModelParseError(no, "bad generator name '" + g + "'");
                if (!seen.insert(g).second) throw ModelParseError(no, "duplicate generator '" + g + "'");
            }
        } else if (kw == "param") {
            auto eq = split_on(rest(line), '=');
            if (eq.size() != 2) throw ModelParseError(no, "expected 'param name = value'");
            const std::string name = trim(eq[0]);
            if (!is_identifier(name)) throw ModelParseError(no, "bad param name '" + name + "'");
            if (m.params.count(name)) throw ModelParseError(no, "param '" + name + "' declared twice");
            Rational value;
            try {
                value = Rational::parse(trim(eq[1]));
            } catch (const std::invalid_argument&) {
                throw ModelParseError(no, "bad param value '" + trim(eq[1]) + "'");
            }
            if (auto it = overrides.find(name); it != overrides.end()) {
                value = it->second;
                used_overrides.insert(name);
            }
            m.params[name] = value;
        }
    }
    for (const auto& [name, v] : overrides)
        if (!used_overrides.count(name)) throw ModelParseError(0, "model has no param '" + name + "'");
    if (m.generators.empty()) throw ModelParseError(0, "missing 'gen' line");
    for (const auto& g : m.generators)
        if (m.params.count(g)) throw ModelParseError(0, "'" + g + "' is both a generator and a param");

    const int n = static_cast<int>(m.generators.size());
    const auto& gens = m.generators;
    m.differentials.assign(n, Form<Rational>(n, 2));
    std::vector<bool> d_seen(n, false), j_seen(n, false);
    auto generator_of = [&](int no, const std::string& name) {
        auto it = std::find(gens.begin(), gens.end(), name);
        if (it == gens.end()) throw ModelParseError(no, "unknown generator '" + name + "'");
        return static_cast<int>(it - gens.begin());
    };
    auto expr = [&](int no, const std::string& e, int degree) {
        try {
            return parse_form_expr(e, gens, m.params, degree);
        } catch (const std::invalid_argument& err) {
            throw ModelParseError(no, err.what());
        }
    };

    for (const auto& [no, line] : lines) {
        const std::string kw = keyword(line);
        if (kw == "gen" || kw == "param") continue;
        if (kw == "d" || kw == "J") {
            auto eq = split_on(rest(line), '=');
            if (eq.size() != 2) throw ModelParseError(no, "expected '" + kw + " <generator> = <expression>'");
            const int i = generator_of(no, trim(eq[0]));
            auto& seen = kw == "d" ? d_seen : j_seen;
            if (seen[i]) throw ModelParseError(no, kw + " of " + gens[i] + " given twice");
            seen[i] = true;
            Form<Rational> f = expr(no, eq[1], kw == "d" ? 2 : 1);
            if (kw == "d") {
                m.differentials[i] = std::move(f);
            } else {
                if (!m.j_forms) m.j_forms = Matrix<Rational>(n, n);
                for (int r = 0; r < n; ++r) (*m.j_forms)(r, i) = f[r];
            }
        } else if (kw == "orient") {
            auto parts = split_on(rest(line), '^');
            if (static_cast<int>(parts.size()) != n) throw ModelParseError(no, "orientation must list every generator");
            m.orientation.clear();
            std::set<int> seen;
            for (const auto& p : parts) {
                int i = generator_of(no, trim(p));
                if (!seen.insert(i).second) throw ModelParseError(no, "orientation repeats " + gens[i]);
                m.orientation.push_back(i);
            }
        } else if (kw == "alpha") {
            m.alpha = expr(no, rest(line), 1);
        } else if (kw == "omega") {
            m.omega = expr(no, rest(line), 2);
        } else if (kw == "meta") {
            const std::string r = rest(line);
            const std::string key = keyword(r);
            if (key.empty()) throw ModelParseError(no, "meta needs a key");
            m.meta.emplace_back(key, rest(r));
        } else {
            throw ModelParseError(no, "unknown keyword '" + kw + "'");
        }
    }
    if (m.j_forms)
        for (int i = 0; i < n; ++i)
            if (!j_seen[i]) throw ModelParseError(0, "J is missing the image of " + gens[i]);
    return m;
}

CEComplexPtr build_complex(const ModelText& m) {
    return CEComplex::create(m.generators, m.differentials, m.orientation);
}

}  // namespace novikov
