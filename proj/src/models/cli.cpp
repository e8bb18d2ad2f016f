#include "novikov/models/cli.hpp"

#include "novikov/lcs/solver.hpp"
#include "novikov/models/bundled.hpp"
#include "novikov/models/record.hpp"
#include "novikov/models/report.hpp"
#include "novikov/simplicial/localsys.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace novikov {

namespace {

struct Globals {
    std::string format = "text";
    std::uint64_t seed = kDefaultSeed;
    double tol = 1e-10;
    std::vector<std::string> params;
};

std::map<std::string, Rational> parse_params(const std::vector<std::string>& items) {
    std::map<std::string, Rational> out;
    for (const auto& p : items) {
        auto eq = p.find('=');
        if (eq == std::string::npos || eq == 0) throw InputError("--param expects NAME=VALUE, got '" + p + "'");
        out[p.substr(0, eq)] = Rational::parse(p.substr(eq + 1));
    }
    return out;
}

std::vector<Rational> parse_grid(const std::string& spec) {
    auto a = spec.find(':'), b = spec.rfind(':');
    if (a == std::string::npos || a == b) throw InputError("grid must look like A:B:STEP, got '" + spec + "'");
    const Rational lo = Rational::parse(spec.substr(0, a)), hi = Rational::parse(spec.substr(a + 1, b - a - 1));
    const Rational step = Rational::parse(spec.substr(b + 1));
    if (step.sign() <= 0) throw InputError("grid step must be positive");
    if (hi < lo) throw InputError("grid upper end is below the lower end");
    std::vector<Rational> ts;
    for (Rational t = lo; !(hi < t); t += step) {
        if (ts.size() >= 10000) throw InputError("grid has more than 10000 points");
        ts.push_back(t);
    }
    return ts;
}

std::string join(const std::vector<std::size_t>& v) {
    std::string s;
    for (auto x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
    return s;
}

std::string join(const std::vector<Rational>& v) {
    if (v.empty()) return "none";
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : " ") + x.str();
    return s;
}

std::string sci(double x) {
    if (std::isinf(x)) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6e", x);
    return buf;
}

ComplexText load_complex(const std::string& id) { return parse_complex_text(read_complex_source(id)); }

/// A rational scales the model's alpha; anything else is parsed as a 1-form expression.
TwistForm<Rational> parse_twist(const ModelRecord& r, const std::string& spec) {
    try {
        return TwistForm<Rational>::make(*r.cx, r.alpha, Rational::parse(spec));
    } catch (const std::invalid_argument&) {
    }
    auto f = parse_form_expr(spec, r.text.generators, r.text.params, 1);
    return TwistForm<Rational>::make(*r.cx, f, Rational(1));
}

std::string twist_label(const ModelRecord& r, const TwistForm<Rational>& a) {
    return r.cx->format(a.scale() * a.base());
}

struct Context {
    Globals g;
    ReportDocument doc;
};

int cmd_cohomology(Context& c, const std::string& model, const std::string& twist, bool generic,
                   const std::vector<int>& degrees) {
    auto r = load_model(model, parse_params(c.g.params));
    c.doc.subject = r.id;
    BettiProfile b;
    if (generic) {
        b = cohomology_generic(*r.cx, r.alpha);
        c.doc.field("twist", "generic t * (" + r.cx->format(r.alpha) + ")");
    } else {
        auto a = parse_twist(r, twist);
        b = cohomology(*r.cx, a);
        c.doc.field("twist", twist_label(r, a));
    }
    c.doc.field("domain", b.domain);
    c.doc.columns = {"k", "cochains", "b"};
    for (int k = 0; k <= r.cx->n(); ++k) {
        if (!degrees.empty() && std::find(degrees.begin(), degrees.end(), k) == degrees.end()) continue;
        c.doc.rows.push_back({std::to_string(k), std::to_string(b.cochain_dims[k]), std::to_string(b.betti[k])});
    }
    c.doc.field("betti", join(b.betti));
    c.doc.field("euler", std::to_string(b.euler()));
    return kExitOk;
}

int cmd_diamond(Context& c, const std::string& model, const std::string& twist) {
    auto r = load_model(model, parse_params(c.g.params));
    c.doc.subject = r.id;
    auto a = parse_twist(r, twist);
    auto d = hodge_diamond(r.structure(), a);
    c.doc.field("twist", twist_label(r, a));
    c.doc.columns = {"p"};
    for (int q = 0; q <= d.m; ++q) c.doc.columns.push_back("q=" + std::to_string(q));
    for (int p = 0; p <= d.m; ++p) {
        std::vector<std::string> row{std::to_string(p)};
        for (int q = 0; q <= d.m; ++q) row.push_back(std::to_string(d.h[p][q]));
        c.doc.rows.push_back(std::move(row));
    }
    auto dual = hodge_diamond(r.structure(), a.negated());
    bool serre = true;
    for (int p = 0; p <= d.m; ++p)
        for (int q = 0; q <= d.m; ++q)
            if (d.h[p][q] != dual.h[d.m - p][d.m - q]) serre = false;
    c.doc.verdicts.push_back({"serre symmetry", serre, "against the diamond at the negated twist"});
    return serre ? kExitOk : kExitVerificationFailed;
}

void jump_report(Context& c, const JumpSet& js) {
    c.doc.field("degree", std::to_string(js.degree));
    c.doc.field("generic betti", std::to_string(js.generic_betti));
    c.doc.field("jumps", join(js.jumps));
    c.doc.field("jump at t = 0", js.zero_jumps ? "yes" : "no");
    c.doc.certificates.emplace_back("polynomial", poly_terms(js.certificate));
}

int cmd_jumps(Context& c, const std::string& model, const std::string& complex, int degree) {
    if (!model.empty()) {
        auto r = load_model(model, parse_params(c.g.params));
        c.doc.subject = r.id;
        if (degree < 0 || degree > r.cx->n()) throw InputError("degree out of range");
        jump_report(c, jumping_set(*r.cx, r.alpha, degree));
    } else {
        auto ct = load_complex(complex);
        c.doc.subject = complex;
        if (degree < 0 || degree > ct.complex.dim()) throw InputError("degree out of range");
        jump_report(c, jumping_locus(ct.complex, ct.cocycle, degree));
    }
    return kExitOk;
}

int cmd_deform(Context& c, const std::string& model, int order, double t, const std::string& beta_expr) {
    auto r = load_model(model, parse_params(c.g.params));
    c.doc.subject = r.id;
    if (!r.text.omega) throw InputError("model '" + r.id + "' has no reference omega");
    if (order < 0) throw InputError("order must be nonnegative");
    const auto beta = beta_expr.empty() ? r.alpha : parse_form_expr(beta_expr, r.text.generators, r.text.params, 1);
    auto base = make_candidate(r.structure(), TwistForm<Rational>::make(*r.cx, r.alpha, Rational(1)), *r.text.omega);
    DeformOptions opts{order, t, c.g.tol};
    auto run = deform(r.structure(), base, beta, opts);
    c.doc.field("alpha", r.cx->format(r.alpha));
    c.doc.field("beta", r.cx->format(beta));
    c.doc.field("omega0", r.cx->format(base.omega));
    c.doc.field("order", std::to_string(order));
    c.doc.field("t", sci(t));
    c.doc.field("b3(alpha)", std::to_string(run.b3));
    c.doc.field("status", status_name(run.status));
    if (!run.cause.empty()) c.doc.field("cause", run.cause);
    if (run.status == DeformStatus::obstructed) {
        c.doc.notes.push_back("the exact gate failed; no series coefficients were computed");
        return kExitVerificationFailed;
    }
    c.doc.field("radius estimate", sci(run.radius_estimate));
    c.doc.field("taming margin", sci(run.taming_margin));
    c.doc.columns = {"i", "norm", "solve residual", "rhs closedness"};
    for (std::size_t i = 0; i < run.norms.size(); ++i)
        c.doc.rows.push_back({std::to_string(i), sci(run.norms[i]),
                              i < run.solve_residuals.size() ? sci(run.solve_residuals[i]) : "-",
                              i < run.rhs_closedness.size() ? sci(run.rhs_closedness[i]) : "-"});
    double max_solve = 0, max_rhs = 0;
    for (double x : run.solve_residuals) max_solve = std::max(max_solve, x);
    for (double x : run.rhs_closedness) max_rhs = std::max(max_rhs, x);
    c.doc.residuals.emplace_back("final", run.final_residual);
    c.doc.residuals.emplace_back("max solve", max_solve);
    c.doc.residuals.emplace_back("max rhs closedness", max_rhs);
    c.doc.verdicts.push_back({"converged", run.status == DeformStatus::converged, run.cause});
    return run.status == DeformStatus::converged ? kExitOk : kExitVerificationFailed;
}

int cmd_scan(Context& c, const std::string& model, const std::string& grid) {
    auto r = load_model(model, parse_params(c.g.params));
    c.doc.subject = r.id;
    auto ts = parse_grid(grid);
    auto rep = lee_class_scan(r.structure(), r.alpha, ts);
    c.doc.field("alpha", r.cx->format(r.alpha));
    c.doc.field("lee torsion", r.cx->format(rep.torsion));
    c.doc.columns = {"t", "closed 2-forms", "witness", "margin", "c"};
    bool identity = true;
    for (const auto& e : rep.entries) {
        if (e.excluded) {
            c.doc.rows.push_back({e.t.str(), "-", "excluded (t = 0)", "-", "-"});
            continue;
        }
        identity = identity && e.identity_holds;
        std::string w = e.witness ? r.cx->format(*e.witness) : (e.searched ? "not found (bounded search)" : "not searched (grid too large)");
        c.doc.rows.push_back({e.t.str(), std::to_string(e.kernel_dim), w, e.witness ? sci(e.margin) : "-",
                              e.c ? e.c->str() : "-"});
    }
    c.doc.certificates.emplace_back("lee class", rep.certificate);
    c.doc.field("certified scales", join(rep.certified_scales));
    c.doc.notes.push_back("witnesses are invariant-level witnesses found by a bounded coefficient sweep");
    if (rep.torsion_zero) c.doc.verdicts.push_back({"(t - 1) c = 0 on every closed form", identity, ""});
    const bool single = !rep.torsion_zero || rep.certified_scales.size() <= 1;
    c.doc.verdicts.push_back({"at most one certified scale", single, ""});
    return identity && single ? kExitOk : kExitVerificationFailed;
}

int cmd_betti(Context& c, const std::string& complex, const std::string& at, bool generic) {
    auto ct = load_complex(complex);
    c.doc.subject = complex;
    BettiProfile b;
    if (!at.empty() && !generic) {
        b = betti_at(ct.complex, ct.cocycle, Rational::parse(at));
    } else {
        b = betti_generic(ct.complex, ct.cocycle);
    }
    c.doc.field("twist", b.twist);
    c.doc.field("domain", b.domain);
    c.doc.columns = {"k", "cells", "b"};
    for (std::size_t k = 0; k < b.betti.size(); ++k)
        c.doc.rows.push_back({std::to_string(k), std::to_string(b.cochain_dims[k]), std::to_string(b.betti[k])});
    c.doc.field("betti", join(b.betti));
    c.doc.field("euler", std::to_string(b.euler()));
    return kExitOk;
}

int cmd_cover(Context& c, const std::string& complex, int fold, bool check, const std::string& at, int degree) {
    auto ct = load_complex(complex);
    c.doc.subject = complex;
    auto cov = cyclic_cover(ct.complex, ct.cocycle, fold);
    c.doc.field("fold", std::to_string(fold));
    c.doc.field("euler", std::to_string(cov.complex.euler()));
    auto gen = betti_generic(cov.complex, cov.cocycle);
    c.doc.columns = {"k", "base cells", "cover cells", "generic b (cover)"};
    for (int k = 0; k <= ct.complex.dim(); ++k)
        c.doc.rows.push_back({std::to_string(k), std::to_string(ct.complex.count(k)),
                              std::to_string(cov.complex.count(k)), std::to_string(gen.betti[k])});
    c.doc.certificates.emplace_back("cover degree-0 polynomial",
                                    poly_terms(jumping_locus(cov.complex, cov.cocycle, 0).certificate));
    if (!check) return kExitOk;
    const Rational t0 = at.empty() ? Rational(1) : Rational::parse(at);
    c.doc.field("at", t0.str());
    bool all = true;
    for (int k = 0; k <= ct.complex.dim(); ++k) {
        if (degree >= 0 && k != degree) continue;
        auto v = pullback_injectivity_check(ct.complex, ct.cocycle, fold, t0, k);
        all = all && v.injective();
        c.doc.verdicts.push_back({"pullback degree " + std::to_string(k), v.injective(),
                                  (v.injective() ? std::string("injective") : std::string("not injective")) + ", base " +
                                      std::to_string(v.source_dim) + ", cover " + std::to_string(v.target_dim) +
                                      ", image " + std::to_string(v.image_dim)});
    }
    return all ? kExitOk : kExitVerificationFailed;
}

int cmd_verify(Context& c, bool all, const std::string& model) {
    std::vector<std::string> ids;
    if (all) {
        for (const auto& b : bundled_models()) ids.emplace_back(b.name);
        c.doc.subject = "all bundled models";
    } else {
        ids.push_back(model);
        c.doc.subject = model;
    }
    VerifyOptions opts;
    opts.seed = c.g.seed;
    c.doc.field("seed", std::to_string(c.g.seed));
    bool ok = true;
    const auto params = parse_params(c.g.params);
    for (const auto& id : ids) {
        ModelText text;
        text = parse_model_text(read_model_source(id), params);
        auto rep = verify_text(id, text, opts);
        ok = ok && rep.ok();
        for (const auto& ch : rep.checks) c.doc.verdicts.push_back({id + ": " + ch.name, ch.ok, ch.detail});
    }
    c.doc.field("result", ok ? "pass" : "fail");
    return ok ? kExitOk : kExitVerificationFailed;
}

int cmd_audit(Context& c, const std::string& model, const std::string& grid) {
    auto r = load_model(model, parse_params(c.g.params));
    c.doc.subject = r.id;
    auto ts = parse_grid(grid);
    auto rep = vanishing_audit(*r.cx, r.alpha, r.pi1, r.b2, ts);
    c.doc.field("pi1", r.pi1);
    c.doc.field("declared b2", std::to_string(r.b2));
    c.doc.columns = {"t"};
    for (int k = 0; k <= r.cx->n(); ++k) c.doc.columns.push_back("b" + std::to_string(k));
    c.doc.columns.push_back("ok");
    for (const auto& row : rep.rows) {
        std::vector<std::string> cells{row.t.str()};
        for (auto b : row.betti) cells.push_back(std::to_string(b));
        cells.push_back(row.t.is_zero() ? "untwisted" : (row.ok ? "yes" : "no"));
        c.doc.rows.push_back(std::move(cells));
    }
    c.doc.verdicts.push_back({"b_k = 0 for k != 2 and b_2 = declared, t != 0", rep.ok(), ""});
    return rep.ok() ? kExitOk : kExitVerificationFailed;
}

double default_tol() {
    if (const char* env = std::getenv("NOVIKOV_TOL")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 1e-10;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Twisted cohomology and LCS deformation on finite models", "novikov"};
    app.require_subcommand(1);
    app.fallthrough();
    Context c;
    c.g.tol = default_tol();
    app.add_option("--format", c.g.format, "report format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", c.g.seed, "seed for randomized trials");
    app.add_option("--tol", c.g.tol, "residual tolerance (env NOVIKOV_TOL)")->check(CLI::PositiveNumber);
    app.add_option("--param", c.g.params, "model parameter override NAME=VALUE");

    std::string model, complex, twist, beta, grid, at;
    bool generic = false, all = false, check = false;
    std::vector<int> degrees;
    int degree = -1, order = 30, fold = 2;
    double t = 0;

    auto* coh = app.add_subcommand("cohomology", "twisted Betti numbers of a model");
    coh->add_option("--model", model)->required();
    auto* tw = coh->add_option("--twist", twist, "scale of alpha or a closed 1-form");
    auto* gen = coh->add_flag("--generic", generic);
    tw->excludes(gen);
    coh->add_option("--degrees", degrees);

    auto* dia = app.add_subcommand("diamond", "twisted Dolbeault numbers");
    dia->add_option("--model", model)->required();
    dia->add_option("--twist", twist)->required();

    auto* jmp = app.add_subcommand("jumps", "jumping set of one degree");
    auto* jm = jmp->add_option("--model", model);
    auto* jc = jmp->add_option("--complex", complex);
    jm->excludes(jc);
    jmp->add_option("--degree", degree)->required();

    auto* dfm = app.add_subcommand("deform", "power-series deformation of the reference LCS form");
    dfm->add_option("--model", model)->required();
    dfm->add_option("--order", order)->capture_default_str();
    dfm->add_option("--t", t);
    dfm->add_option("--beta", beta, "closed 1-form (default alpha)");

    auto* scn = app.add_subcommand("scan", "Lee-class scan over scales t");
    scn->add_option("--model", model)->required();
    scn->add_option("--grid", grid, "A:B:STEP")->required();

    auto* bet = app.add_subcommand("betti", "Betti numbers of a twisted simplicial complex");
    bet->add_option("--complex", complex)->required();
    auto* ba = bet->add_option("--at", at);
    auto* bg = bet->add_flag("--generic", generic);
    ba->excludes(bg);

    auto* cov = app.add_subcommand("cover", "cyclic covers and pullback injectivity");
    cov->add_option("--complex", complex)->required();
    cov->add_option("--fold", fold)->required();
    cov->add_flag("--check-injectivity", check);
    cov->add_option("--at", at);
    cov->add_option("--degree", degree);

    auto* ver = app.add_subcommand("verify", "run the invariant suites");
    auto* va = ver->add_flag("--all", all);
    auto* vm = ver->add_option("--model", model);
    va->excludes(vm);

    auto* aud = app.add_subcommand("audit-vanishing", "vanishing audit for pi1 = Z models");
    aud->add_option("--model", model)->required();
    aud->add_option("--grid", grid)->required();

    std::vector<std::string> argv{"novikov"};
    argv.insert(argv.end(), args.begin(), args.end());
    std::vector<const char*> raw;
    for (const auto& a : argv) raw.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(raw.size()), raw.data());
        if (coh->parsed() && twist.empty() && !generic) throw CLI::ValidationError("cohomology needs --twist or --generic");
        if (jmp->parsed() && model.empty() && complex.empty()) throw CLI::ValidationError("jumps needs --model or --complex");
        if (ver->parsed() && !all && model.empty()) throw CLI::ValidationError("verify needs --all or --model");
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        const CLI::App* sub = nullptr;
        for (auto* s : app.get_subcommands()) sub = s;
        err << (sub ? sub->help() : app.help());
        return kExitInputError;
    }

    for (std::size_t i = 0; i < args.size(); ++i) c.doc.command += (i ? " " : "") + args[i];
    int code = kExitOk;
    try {
        if (coh->parsed()) code = cmd_cohomology(c, model, twist, generic, degrees);
        else if (dia->parsed()) code = cmd_diamond(c, model, twist);
        else if (jmp->parsed()) code = cmd_jumps(c, model, complex, degree);
        else if (dfm->parsed()) code = cmd_deform(c, model, order, t, beta);
        else if (scn->parsed()) code = cmd_scan(c, model, grid);
        else if (bet->parsed()) code = cmd_betti(c, complex, at, generic);
        else if (cov->parsed()) code = cmd_cover(c, complex, fold, check, at, degree);
        else if (ver->parsed()) code = cmd_verify(c, all, model);
        else if (aud->parsed()) code = cmd_audit(c, model, grid);
    } catch (const AuditRefused& e) {
        err << "audit refused: " << e.what() << "\n";
        return kExitInputError;
    } catch (const GateFailure& e) {
        err << "gate failure: " << e.what() << "\n";
        return kExitVerificationFailed;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        for (auto* s : app.get_subcommands()) err << s->help();
        return kExitInputError;
    } catch (const ModelParseError& e) {
        err << "model file: " << e.what() << "\n";
        return kExitInputError;
    } catch (const ValidationError& e) {
        err << "complex file: " << e.what() << "\n";
        return kExitInputError;
    } catch (const SpecializationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const UnsupportedError& e) {
        err << "unsupported: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    out << (c.g.format == "json" ? emit_json(c.doc) : emit_text(c.doc));
    return code;
}

}  // namespace novikov
