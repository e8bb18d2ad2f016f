#include "novikov/models/record.hpp"

#include "novikov/lcs/solver.hpp"
#include "novikov/models/bundled.hpp"

#include <fstream>
#include <sstream>

namespace novikov {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string read_source(const std::vector<BundledText>& bundled, const std::string& id_or_path, const char* what) {
    if (auto b = find_bundled(bundled, id_or_path)) return std::string(*b);
    if (id_or_path.find('/') != std::string::npos || id_or_path.find('.') != std::string::npos)
        return read_file(id_or_path);
    std::string known;
    for (const auto& b : bundled) known += (known.empty() ? "" : ", ") + std::string(b.name);
    throw InputError(std::string("unknown ") + what + " '" + id_or_path + "' (bundled: " + known + ")");
}

std::string required_meta(const ModelText& m, const std::string& key) {
    auto v = m.meta_value(key);
    if (!v) throw InputError("model metadata lacks '" + key + "'");
    return *v;
}

long meta_long(const ModelText& m, const std::string& key) {
    const std::string v = required_meta(m, key);
    try {
        std::size_t used = 0;
        long x = std::stol(v, &used);
        if (used == v.size()) return x;
    } catch (const std::exception&) {
    }
    throw InputError("metadata '" + key + "' is not an integer: " + v);
}

std::string join_profile(const std::vector<std::size_t>& b) {
    std::string s;
    for (auto x : b) s += (s.empty() ? "" : " ") + std::to_string(x);
    return s;
}

Check make_check(std::string name, bool ok, std::string detail = {}) { return {std::move(name), ok, std::move(detail)}; }

}  // namespace

const ComplexStructure& ModelRecord::structure() const {
    if (!jc) throw InputError("model '" + id + "' has no complex structure");
    return *jc;
}

std::string read_model_source(const std::string& id_or_path) {
    return read_source(bundled_models(), id_or_path, "model");
}

std::string read_complex_source(const std::string& id_or_path) {
    return read_source(bundled_complexes(), id_or_path, "complex");
}

ModelRecord record_from_text(const std::string& id, const ModelText& text) {
    ModelRecord r;
    r.id = id;
    r.text = text;
    r.cx = build_complex(text);
    if (text.j_forms) r.jc = ComplexStructure::create(r.cx, *text.j_forms);
    if (!text.alpha) throw InputError("model '" + id + "' has no alpha line");
    r.alpha = *text.alpha;
    (void)TwistForm<Rational>::make(*r.cx, r.alpha, Rational(1));

    r.pi1 = required_meta(text, "pi1");
    if (r.pi1 != "Z" && r.pi1 != "not-Z" && r.pi1 != "abelian")
        throw InputError("metadata pi1 must be Z, not-Z or abelian, got '" + r.pi1 + "'");
    r.b2 = meta_long(text, "b2");
    r.euler = meta_long(text, "euler");
    {
        std::istringstream ss(required_meta(text, "betti"));
        long b;
        while (ss >> b) {
            if (b < 0) throw InputError("negative declared Betti number");
            r.betti.push_back(static_cast<std::size_t>(b));
        }
        if (!ss.eof()) throw InputError("metadata betti must be a list of integers");
        if (static_cast<int>(r.betti.size()) != r.cx->n() + 1)
            throw InputError("metadata betti needs " + std::to_string(r.cx->n() + 1) + " entries");
    }
    const std::string uni = required_meta(text, "unimodular");
    if (uni != "yes" && uni != "no") throw InputError("metadata unimodular must be yes or no");
    r.unimodular = uni == "yes";
    r.torsion = required_meta(text, "torsion");
    if (r.torsion != "zero" && r.torsion != "nonzero") throw InputError("metadata torsion must be zero or nonzero");
    r.role = text.meta_value("role").value_or("");

    if (r.jc) {
        const auto t = lee_torsion(*r.jc, TwistForm<Rational>::make(*r.cx, r.alpha, Rational(1)));
        if (t.is_zero() != (r.torsion == "zero"))
            throw GateFailure("lee torsion of " + r.cx->format(r.alpha) + " is " + r.cx->format(t) + ", declared " +
                              r.torsion);
    }
    return r;
}

ModelRecord load_model(const std::string& id_or_path, const std::map<std::string, Rational>& overrides) {
    const std::string src = read_model_source(id_or_path);
    return record_from_text(id_or_path, parse_model_text(src, overrides));
}

std::string format_model_text(const ModelText& m) {
    std::ostringstream out;
    out << "gen";
    for (const auto& g : m.generators) out << ' ' << g;
    out << '\n';
    const int n = static_cast<int>(m.generators.size());
    for (int i = 0; i < n; ++i)
        if (!m.differentials[i].is_zero()) out << "d " << m.generators[i] << " = " << format_form(m.differentials[i], m.generators) << '\n';
    if (m.j_forms) {
        for (int i = 0; i < n; ++i) {
            Form<Rational> col(n, 1);
            for (int r = 0; r < n; ++r) col[r] = (*m.j_forms)(r, i);
            out << "J " << m.generators[i] << " = " << format_form(col, m.generators) << '\n';
        }
    }
    if (!m.orientation.empty()) {
        out << "orient ";
        for (std::size_t i = 0; i < m.orientation.size(); ++i) out << (i ? "^" : "") << m.generators[m.orientation[i]];
        out << '\n';
    }
    if (m.alpha) out << "alpha " << format_form(*m.alpha, m.generators) << '\n';
    if (m.omega) out << "omega " << format_form(*m.omega, m.generators) << '\n';
    for (const auto& [k, v] : m.meta) out << "meta " << k << ' ' << v << '\n';
    return out.str();
}

std::vector<Mutation> structure_constant_mutations(const ModelText& m, const Rational& delta) {
    std::vector<Mutation> out;
    const int n = static_cast<int>(m.generators.size());
    for (int k = 0; k < n; ++k)
        for (Mask mono : ExteriorBasis::get(n).masks(2)) {
            Mutation mu{k, mono, m};
            mu.text.differentials[k].at(mono) += delta;
            out.push_back(std::move(mu));
        }
    return out;
}

bool VerifyReport::ok() const {
    for (const auto& c : checks)
        if (!c.ok) return false;
    return true;
}

VerifyReport verify_record(const ModelRecord& r, const VerifyOptions& opts) {
    VerifyReport rep;
    rep.id = r.id;
    auto& out = rep.checks;
    const CEComplex& cx = *r.cx;
    const int n = cx.n();
    out.push_back(make_check("load gates", true, r.jc ? "d^2 = 0, J^2 = -1, integrable" : "d^2 = 0"));

    const auto untwisted = cohomology(cx, TwistForm<Rational>::make(cx, r.alpha, Rational(0)));
    out.push_back(make_check("declared betti", untwisted.betti == r.betti,
                             "computed " + join_profile(untwisted.betti) + ", declared " + join_profile(r.betti)));
    out.push_back(make_check("declared b2", static_cast<long>(untwisted.betti[2]) == r.b2,
                             "computed " + std::to_string(untwisted.betti[2])));
    out.push_back(make_check("declared euler", untwisted.euler() == r.euler && untwisted.cochain_euler() == r.euler,
                             "betti " + std::to_string(untwisted.euler()) + ", cochains " +
                                 std::to_string(untwisted.cochain_euler())));
    out.push_back(make_check("declared unimodular", cx.unimodular() == r.unimodular,
                             cx.unimodular() ? "trace conditions vanish" : "some tr(ad X) != 0"));

    // exact twisted grid
    std::vector<Rational> grid;
    for (int i = -10; i <= 10; ++i)
        if (i != 0) grid.emplace_back(i, 4);
    bool duality = true, euler = true, h0 = true;
    std::string first_bad;
    for (const auto& s : grid) {
        auto a = TwistForm<Rational>::make(cx, r.alpha, s);
        auto b = cohomology(cx, a);
        if (b.euler() != r.euler) euler = false;
        if (!r.alpha.is_zero() && b.betti[0] != 0) h0 = false;
        if (r.unimodular) {
            auto bm = cohomology(cx, a.negated());
            for (int k = 0; k <= n; ++k)
                if (b.betti[k] != bm.betti[n - k]) {
                    duality = false;
                    if (first_bad.empty()) first_bad = "t = " + s.str() + ", k = " + std::to_string(k);
                }
        }
    }
    if (r.unimodular) out.push_back(make_check("poincare duality", duality, first_bad));
    out.push_back(make_check("euler characteristic", euler));
    out.push_back(make_check("H^0 vanishing", h0));

    {
        // jumps must raise the Betti number, a far-away prime must not
        bool ok = true;
        std::string detail;
        for (int k = 0; k <= n; ++k) {
            auto js = jumping_set(cx, r.alpha, k);
            for (const auto& t0 : js.jumps)
                if (cohomology(cx, TwistForm<Rational>::make(cx, r.alpha, t0)).betti[k] <= js.generic_betti) {
                    ok = false;
                    detail = "degree " + std::to_string(k) + " jump " + t0.str();
                }
            if (cohomology(cx, TwistForm<Rational>::make(cx, r.alpha, Rational(1000003))).betti[k] != js.generic_betti) {
                ok = false;
                detail = "degree " + std::to_string(k) + " generic value";
            }
        }
        out.push_back(make_check("jumping sets", ok, detail));
    }

    if (n % 2 == 0 && cx.unimodular()) {
        double adj = 0, star = 0;
        std::uint64_t seed = opts.seed;
        for (double s : {1.0, -0.5, 2.0}) {
            auto a = TwistForm<double>::certified(r.alpha, s);
            adj = std::max(adj, adjoint_identity_check(cx, a, opts.float_trials, seed++));
            star = std::max(star, star_laplacian_identity_check(cx, a, opts.float_trials, seed++));
        }
        std::ostringstream a1, a2;
        a1 << "max error " << adj;
        a2 << "max error " << star;
        out.push_back(make_check("adjoint identity", adj < opts.identity_tol, a1.str()));
        out.push_back(make_check("star laplacian identity", star < opts.identity_tol, a2.str()));

        bool ok = true;
        std::string detail;
        for (const Rational& s : {Rational(1), Rational(-1), Rational(1, 2), Rational(-1, 2)}) {
            auto exact = cohomology(cx, TwistForm<Rational>::make(cx, r.alpha, s));
            auto a = TwistForm<double>::certified(r.alpha, s.to_double());
            for (int k = 0; k <= n; ++k) {
                const auto lap = laplacian(cx, a, k);
                const std::size_t harm = lap.rows() - rank(lap);
                if (harm != exact.betti[k]) {
                    ok = false;
                    detail = "t = " + s.str() + ", k = " + std::to_string(k);
                }
            }
        }
        out.push_back(make_check("hodge consistency", ok, detail));
    }

    if (r.jc) {
        bool ok = true;
        for (const Rational& s : {Rational(1), Rational(-1), Rational(1, 2)}) {
            auto a = TwistForm<Rational>::make(cx, r.alpha, s);
            auto hp = hodge_diamond(*r.jc, a), hm = hodge_diamond(*r.jc, a.negated());
            const int m = hp.m;
            for (int p = 0; p <= m; ++p)
                for (int q = 0; q <= m; ++q)
                    if (hm.h[p][q] != hp.h[m - p][m - q]) ok = false;
        }
        out.push_back(make_check("serre symmetry", ok));
    }

    if (r.text.omega && r.jc) {
        auto a = TwistForm<Rational>::make(cx, r.alpha, Rational(1));
        auto resid = d_twisted(cx, a, *r.text.omega);
        out.push_back(make_check("reference omega closed", resid.is_zero(), resid.is_zero() ? "" : cx.format(resid)));
        auto v = taming_check(*r.jc, *r.text.omega);
        out.push_back(make_check("reference omega tames J", v.tames));
    }

    if (r.pi1 == "Z") {
        std::vector<Rational> ts(grid.begin(), grid.end());
        ts.emplace_back(0);
        auto audit = vanishing_audit(cx, r.alpha, r.pi1, r.b2, ts, false);
        out.push_back(make_check("vanishing audit", audit.ok()));
    }
    return rep;
}

VerifyReport verify_text(const std::string& id, const ModelText& text, const VerifyOptions& opts) {
    try {
        return verify_record(record_from_text(id, text), opts);
    } catch (const GateFailure& e) {
        return VerifyReport{id, {make_check("load gates", false, e.what())}};
    } catch (const UnsupportedError& e) {
        return VerifyReport{id, {make_check("load gates", false, e.what())}};
    }
}

}  // namespace novikov
