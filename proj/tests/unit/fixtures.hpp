#pragma once

// Shared helpers for the unit tests: bundled model loading and random generators.

#include "novikov/ce/complex_structure.hpp"
#include "novikov/ce/model_text.hpp"
#include "novikov/models/bundled.hpp"

#include <random>
#include <string>

namespace fixture {

struct Loaded {
    novikov::ModelText text;
    novikov::CEComplexPtr cx;
    novikov::ComplexStructurePtr jc;

    novikov::Form<novikov::Rational> alpha() const { return *text.alpha; }
    novikov::Form<novikov::Rational> gen(int i) const { return novikov::Form<novikov::Rational>::generator(cx->n(), i); }
    novikov::Form<novikov::Rational> form(const std::string& expr, int degree = -1) const {
        return novikov::parse_form_expr(expr, text.generators, text.params, degree);
    }
};

inline Loaded load(const std::string& name, const std::map<std::string, novikov::Rational>& overrides = {}) {
    auto src = novikov::find_bundled(novikov::bundled_models(), name);
    if (!src) throw std::invalid_argument("no bundled model " + name);
    Loaded l;
    l.text = novikov::parse_model_text(std::string(*src), overrides);
    l.cx = novikov::build_complex(l.text);
    if (l.text.j_forms) l.jc = novikov::ComplexStructure::create(l.cx, *l.text.j_forms);
    return l;
}

inline const std::vector<std::string>& model_names() {
    static const std::vector<std::string> names = {"hopf", "inoue", "torus"};
    return names;
}

inline novikov::Rational random_rational(std::mt19937_64& rng, int num = 3, int den = 3) {
    std::uniform_int_distribution<int> a(-num, num), b(1, den);
    return novikov::Rational(a(rng), b(rng));
}

inline novikov::Rational random_nonzero_rational(std::mt19937_64& rng) {
    for (;;) {
        auto r = random_rational(rng, 4, 4);
        if (!r.is_zero()) return r;
    }
}

inline novikov::Form<novikov::Rational> random_form(std::mt19937_64& rng, int n, int degree) {
    novikov::Form<novikov::Rational> f(n, degree);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = random_rational(rng);
    return f;
}

inline novikov::Form<novikov::GaussianRational> random_complex_form(std::mt19937_64& rng, int n, int degree) {
    novikov::Form<novikov::GaussianRational> f(n, degree);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = {random_rational(rng), random_rational(rng)};
    return f;
}

}  // namespace fixture
