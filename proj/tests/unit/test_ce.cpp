#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace novikov;
using fixture::load;

namespace {

using G = GaussianRational;
const LaurentPoly t = LaurentPoly::t();

std::size_t numerical_kernel(const Matrix<double>& m) { return m.cols() - rank(m); }

Form<G> project(const ComplexStructure& jc, const Form<G>& phi, int p, int q) {
    return apply(jc.projection(p, q), phi, p + q);
}

}  // namespace

TEST_CASE("wedge basics") {
    auto hopf = load("hopf");
    auto e = [&](int i) { return hopf.gen(i); };
    CHECK(wedge(e(1), e(2)) == Form<Rational>::basis(4, 0b0110));
    CHECK(wedge(e(1), e(1)).is_zero());
    Form<Rational> top = wedge(wedge(e(0), e(1)), wedge(e(2), e(3)));
    CHECK(top == hopf.cx->volume());
    CHECK(top.at(0b1111) == Rational(1));
    CHECK(wedge(e(2), e(1)) == -wedge(e(1), e(2)));
    // overflow clamps to the zero top form
    Form<Rational> over = wedge(top, e(0));
    CHECK(over.degree() == 4);
    CHECK(over.is_zero());
}

TEST_CASE("twisted differential examples") {
    auto hopf = load("hopf");
    auto a = TwistForm<Rational>::make(*hopf.cx, hopf.alpha(), Rational(1));
    Form<Rational> omega0 = hopf.form("e0^e1 + 2 e2^e3");
    CHECK(hopf.cx->d(omega0) == hopf.form("2 e0^e2^e3"));
    CHECK(d_twisted(*hopf.cx, a, omega0).is_zero());

    auto zero = TwistForm<Rational>::make(*hopf.cx, hopf.alpha(), Rational(0));
    for (int i = 0; i < 4; ++i) CHECK(d_twisted(*hopf.cx, zero, hopf.gen(i)) == hopf.cx->d(hopf.gen(i)));

    auto inoue = load("inoue");
    auto b = TwistForm<Rational>::make(*inoue.cx, inoue.alpha(), Rational(-1));
    CHECK(inoue.cx->d(inoue.gen(1)) == inoue.form("-1 e1^e2"));
    CHECK(d_twisted(*inoue.cx, b, inoue.gen(1)).is_zero());

    CHECK_THROWS_AS(TwistForm<Rational>::make(*hopf.cx, hopf.gen(1), Rational(1)), GateFailure);
}

TEST_CASE("cohomology examples") {
    auto torus = load("torus");
    CHECK(cohomology_generic(*torus.cx, torus.alpha()).betti == std::vector<std::size_t>{0, 0, 0, 0, 0});
    CHECK(cohomology(*torus.cx, TwistForm<Rational>::make(*torus.cx, torus.alpha(), Rational(0))).betti ==
          std::vector<std::size_t>{1, 4, 6, 4, 1});

    auto hopf = load("hopf");
    auto g = cohomology_generic(*hopf.cx, hopf.alpha());
    CHECK(g.betti == std::vector<std::size_t>{0, 0, 0, 0, 0});
    CHECK(g.domain == "RationalFunction");
    CHECK(cohomology(*hopf.cx, TwistForm<Rational>::make(*hopf.cx, hopf.alpha(), Rational(0))).betti ==
          std::vector<std::size_t>{1, 1, 0, 1, 1});

    auto inoue = load("inoue");
    auto at_minus = cohomology(*inoue.cx, TwistForm<Rational>::make(*inoue.cx, inoue.alpha(), Rational(-1)));
    CHECK(at_minus.betti == std::vector<std::size_t>{0, 1, 1, 0, 0});
    auto at_plus = cohomology(*inoue.cx, TwistForm<Rational>::make(*inoue.cx, inoue.alpha(), Rational(1)));
    CHECK(at_plus.betti[3] == 1);
}

TEST_CASE("jumping sets") {
    auto inoue = load("inoue");
    for (const Rational q : {Rational(1), Rational(2), Rational(1, 3)}) {
        auto m = load("inoue", {{"q", q}});
        JumpSet js = jumping_set(*m.cx, m.alpha(), 1);
        CHECK(js.generic_betti == 0);
        CHECK(js.jumps == std::vector<Rational>{Rational(-1)});
        // (1 + t)((1/2 - t)^2 + q^2)
        LaurentPoly expected = (LaurentPoly(1) + t) * ((LaurentPoly(Rational(1, 2)) - t) * (LaurentPoly(Rational(1, 2)) - t) + LaurentPoly(q * q));
        CHECK(js.certificate == expected.normalized());
    }
    auto flat = load("inoue", {{"q", Rational(0)}});
    JumpSet js0 = jumping_set(*flat.cx, flat.alpha(), 1);
    CHECK(js0.jumps == std::vector<Rational>{Rational(-1), Rational(1, 2)});

    auto torus = load("torus");
    JumpSet jt = jumping_set(*torus.cx, torus.alpha(), 1);
    CHECK(jt.jumps.empty());
    CHECK(jt.zero_jumps);
    CHECK(jt.generic_betti == 0);
}

TEST_CASE("jump certificates agree with brute-force minors") {
    for (const auto& name : fixture::model_names()) {
        auto m = load(name);
        auto alpha = TwistForm<LaurentPoly>::certified(m.alpha(), t);
        for (int k = 0; k <= m.cx->n(); ++k) {
            JumpSet js = jumping_set(*m.cx, m.alpha(), k);
            LaurentPoly expected(1);
            if (k > 0) {
                auto in = twisted_differential(*m.cx, alpha, k - 1);
                std::size_t r = rank(in);
                if (r > 0) expected *= oracle::brute_minor_gcd(in, r);
            }
            auto out = twisted_differential(*m.cx, alpha, k);
            std::size_t r = out.rows() ? rank(out) : 0;
            if (r > 0) expected *= oracle::brute_minor_gcd(out, r);
            CHECK(js.certificate == expected.normalized());
            // every reported jump really raises b_k, and a non-root does not
            for (const auto& j : js.jumps)
                CHECK(cohomology(*m.cx, TwistForm<Rational>::make(*m.cx, m.alpha(), j)).betti[k] > js.generic_betti);
            CHECK(cohomology(*m.cx, TwistForm<Rational>::make(*m.cx, m.alpha(), Rational(7, 5))).betti[k] ==
                  js.generic_betti);
        }
    }
}

TEST_CASE("hodge star") {
    auto torus = load("torus");
    CHECK(hodge_star(*torus.cx, torus.form("e1^e2")) == torus.form("e3^e4"));
    CHECK(hodge_star(*torus.cx, torus.cx->volume()) == Form<Rational>::unit(4));
    std::mt19937_64 rng(3);
    for (const auto& name : fixture::model_names()) {
        auto m = load(name);
        const int n = m.cx->n();
        for (int k = 0; k <= n; ++k) {
            auto phi = fixture::random_form(rng, n, k);
            Form<Rational> twice = hodge_star(*m.cx, hodge_star(*m.cx, phi));
            CHECK(twice == Rational((k * (n - k)) % 2 ? -1 : 1) * phi);
        }
    }
}

TEST_CASE("orientation changes the sign of the star") {
    auto reversed = CEComplex::create({"a", "b"}, {Form<Rational>(2, 2), Form<Rational>(2, 2)}, {1, 0});
    CHECK(reversed->orientation_sign() == -1);
    CHECK(hodge_star(*reversed, Form<Rational>::unit(2)) == Form<Rational>::basis(2, 0b11, Rational(-1)));
}

TEST_CASE("twisted adjoint") {
    auto hopf = load("hopf");
    auto a = TwistForm<Rational>::make(*hopf.cx, hopf.alpha(), Rational(1));
    // *e01 = e23, d_{-a} e23 = e023, *e023 = e1
    CHECK(d_adjoint(*hopf.cx, a, hopf.form("e0^e1")) == hopf.form("-1 e1"));

    auto torus = load("torus");
    auto z = TwistForm<Rational>::make(*torus.cx, torus.alpha(), Rational(0));
    std::mt19937_64 rng(5);
    for (int k = 1; k <= 4; ++k) CHECK(d_adjoint(*torus.cx, z, fixture::random_form(rng, 4, k)).is_zero());

    auto odd = CEComplex::create({"x", "y", "z"}, std::vector<Form<Rational>>(3, Form<Rational>(3, 2)), {});
    auto ao = TwistForm<Rational>::make(*odd, Form<Rational>::generator(3, 0), Rational(1));
    CHECK_THROWS_AS(d_adjoint(*odd, ao, Form<Rational>::generator(3, 1)), UnsupportedError);
}

TEST_CASE("adjoint and star-Laplacian identities hold on every model") {
    for (const auto& name : fixture::model_names()) {
        auto m = load(name);
        for (double s : {1.0, -1.0, 0.37, 2.5}) {
            auto a = TwistForm<double>::certified(m.alpha(), s);
            CHECK(adjoint_identity_check(*m.cx, a, 100, kDefaultSeed) < 1e-12);
            CHECK(star_laplacian_identity_check(*m.cx, a, 100, kDefaultSeed) < 1e-12);
        }
    }
    auto torus = load("torus");
    CHECK(star_laplacian_identity_check(*torus.cx, TwistForm<double>::certified(torus.alpha(), 0.0), 10, 1) == 0.0);
}

TEST_CASE("Laplacian kernels") {
    auto torus = load("torus");
    auto z = TwistForm<double>::certified(torus.alpha(), 0.0);
    for (int k = 0; k <= 4; ++k) CHECK(laplacian(*torus.cx, z, k).is_zero());

    auto hopf = load("hopf");
    CHECK(numerical_kernel(laplacian(*hopf.cx, TwistForm<double>::certified(hopf.alpha(), 1.0), 0)) == 0);
    auto inoue = load("inoue");
    CHECK(numerical_kernel(laplacian(*inoue.cx, TwistForm<double>::certified(inoue.alpha(), -1.0), 1)) == 1);
}

TEST_CASE("Hodge consistency: harmonic dimension equals exact Betti number") {
    for (const auto& name : fixture::model_names()) {
        auto m = load(name);
        for (const Rational s : {Rational(-1), Rational(0), Rational(1, 2), Rational(1), Rational(3, 2)}) {
            auto exact = cohomology(*m.cx, TwistForm<Rational>::make(*m.cx, m.alpha(), s));
            auto a = TwistForm<double>::certified(m.alpha(), s.to_double());
            for (int k = 0; k <= m.cx->n(); ++k) {
                Matrix<double> lap = laplacian(*m.cx, a, k);
                CHECK(lap == lap.transpose());
                auto ev = symmetric_eigenvalues(lap);
                for (double v : ev) CHECK(v > -1e-10);
                CHECK(numerical_kernel(lap) == exact.betti[k]);
            }
        }
    }
}

TEST_CASE("bidegree splitting") {
    auto hopf = load("hopf");
    const auto& jc = *hopf.jc;
    for (const auto& phi : jc.holomorphic_coframe()) {
        auto split = jc.bidegree_split(phi);
        REQUIRE(split.size() == 1);
        CHECK(split.begin()->first == Bidegree{1, 0});
    }
    // phi = e2 + i e3 gives phi ^ conj(phi) = -2i e23
    Form<G> phi2 = complexify(hopf.form("e2")) + G::i() * complexify(hopf.form("e3"));
    Form<G> phi2bar = phi2.map<G>([](const G& x) { return x.conj(); });
    auto split = jc.bidegree_split(complexify(hopf.form("e2^e3")));
    REQUIRE(split.size() == 1);
    CHECK(split.begin()->first == Bidegree{1, 1});
    CHECK(split.begin()->second == G(0, Rational(1, 2)) * wedge(phi2, phi2bar));

    auto vol = jc.bidegree_split(complexify(hopf.cx->volume()));
    REQUIRE(vol.size() == 1);
    CHECK(vol.begin()->first == Bidegree{2, 2});

    std::mt19937_64 rng(11);
    for (int k = 0; k <= 4; ++k) {
        auto f = fixture::random_complex_form(rng, 4, k);
        Form<G> sum(4, k);
        for (const auto& [b, part] : jc.bidegree_split(f)) {
            CHECK(b.first + b.second == k);
            sum += part;
        }
        CHECK(sum == f);
    }
}

TEST_CASE("real (1,1)-part") {
    auto hopf = load("hopf");
    Form<Rational> w = hopf.form("e0^e1 + 2 e2^e3 + e0^e2");
    Form<Rational> w11 = hopf.jc->part_11(w);
    CHECK(w11 == hopf.form("e0^e1 + 2 e2^e3 + 1/2 e0^e2 + 1/2 e1^e3"));
    auto split = hopf.jc->bidegree_split(complexify(w11));
    REQUIRE(split.size() == 1);
    CHECK(split.begin()->first == Bidegree{1, 1});
}

TEST_CASE("twisted Dolbeault operator examples") {
    auto torus = load("torus");
    auto z = TwistForm<Rational>::make(*torus.cx, torus.alpha(), Rational(0));
    for (const auto& phi : torus.jc->holomorphic_coframe()) CHECK(dolbeault_twisted(*torus.jc, z, phi).is_zero());

    auto inoue = load("inoue");
    auto a = TwistForm<Rational>::make(*inoue.cx, inoue.alpha(), Rational(-1));
    Form<G> phi1 = complexify(inoue.form("e1")) - G::i() * complexify(inoue.form("e2"));
    REQUIRE(inoue.jc->bidegree_split(phi1).begin()->first == Bidegree{1, 0});
    CHECK(dolbeault_twisted(*inoue.jc, a, phi1).is_zero());

    auto hopf = load("hopf");
    auto h = TwistForm<Rational>::make(*hopf.cx, hopf.alpha(), Rational(1));
    Form<G> one = Form<G>::unit(4);
    Form<G> out = dolbeault_twisted(*hopf.jc, h, one);
    Form<G> alpha01 = hopf.jc->bidegree_split(complexify(hopf.alpha())).at({0, 1});
    CHECK(out == -alpha01);
    CHECK(!out.is_zero());

    CHECK_THROWS_AS(dolbeault_twisted(*hopf.jc, h, complexify(hopf.alpha())), std::invalid_argument);
}

TEST_CASE("Hodge diamonds") {
    auto inoue = load("inoue");
    auto hd = hodge_diamond(*inoue.jc, TwistForm<Rational>::make(*inoue.cx, inoue.alpha(), Rational(-1)));
    CHECK(hd.h[1][0] == 1);
    CHECK(hd.h[0][0] == 0);

    for (const auto& name : fixture::model_names()) {
        auto m = load(name);
        for (const Rational s : {Rational(1), Rational(1, 2), Rational(2), Rational(0)}) {
            auto minus = hodge_diamond(*m.jc, TwistForm<Rational>::make(*m.cx, m.alpha(), -s));
            auto plus = hodge_diamond(*m.jc, TwistForm<Rational>::make(*m.cx, m.alpha(), s));
            for (int p = 0; p <= 2; ++p)
                for (int q = 0; q <= 2; ++q) CHECK(minus.h[p][q] == plus.h[2 - p][2 - q]);
        }
    }
    auto torus = load("torus");
    auto flat = hodge_diamond(*torus.jc, TwistForm<Rational>::make(*torus.cx, torus.alpha(), Rational(0)));
    CHECK(flat.h == std::vector<std::vector<std::size_t>>{{1, 2, 1}, {2, 4, 2}, {1, 2, 1}});
}

TEST_CASE("Lee torsion") {
    auto inoue = load("inoue");
    CHECK(inoue.jc->apply(inoue.alpha()) == inoue.form("-1 e2"));
    CHECK(lee_torsion(*inoue.jc, TwistForm<Rational>::make(*inoue.cx, inoue.alpha(), Rational(1))).is_zero());
    auto hopf = load("hopf");
    CHECK(lee_torsion(*hopf.jc, TwistForm<Rational>::make(*hopf.cx, hopf.alpha(), Rational(1))) ==
          hopf.form("e0^e1 - 2 e2^e3"));
    auto torus = load("torus");
    auto tt = lee_torsion(*torus.jc, TwistForm<Rational>::make(*torus.cx, torus.alpha(), Rational(3)));
    CHECK(tt == torus.form("-9 e1^e2"));
}

TEST_CASE("gates reject corrupted structures") {
    auto hopf = load("hopf");
    auto de = hopf.text.differentials;
    de[1].at(0b0101) += Rational(1);  // d e1 gains e0^e2
    CHECK_THROWS_AS(CEComplex::create(hopf.text.generators, de, {}), GateFailure);

    auto bad_j = *hopf.text.j_forms;
    bad_j(1, 0) += Rational(1);
    CHECK_THROWS_AS(ComplexStructure::create(hopf.cx, bad_j), GateFailure);

    // squares to -1 but is not integrable: J e2 = -e1 + e3, J e3 = -e0 - e2
    auto j = *hopf.text.j_forms;
    j(1, 2) = -1;
    j(3, 2) = 1;
    j(2, 3) = -1;
    j(0, 3) = -1;
    REQUIRE((j * j + Matrix<Rational>::identity(4)).is_zero());
    CHECK_THROWS_AS(ComplexStructure::create(hopf.cx, j), GateFailure);
}

// --- properties -------------------------------------------------------------

TEST_CASE("property: d_a o d_a = 0 on random forms") {
    std::mt19937_64 rng(kDefaultSeed);
    for (const auto& name : fixture::model_names()) {
        auto m = load(name);
        const int n = m.cx->n();
        for (int trial = 0; trial < 40; ++trial) {
            auto a = TwistForm<Rational>::make(*m.cx, m.alpha(), fixture::random_rational(rng));
            int k = static_cast<int>(rng() % (n - 1));
            auto phi = fixture::random_form(rng, n, k);
            CHECK(d_twisted(*m.cx, a, d_twisted(*m.cx, a, phi)).is_zero());
        }
    }
}

TEST_CASE("property: twisted Leibniz rule") {
    std::mt19937_64 rng(kDefaultSeed + 1);
    for (const auto& name : fixture::model_names()) {
        auto m = load(name);
        const int n = m.cx->n();
        for (int trial = 0; trial < 40; ++trial) {
            auto a = TwistForm<Rational>::make(*m.cx, m.alpha(), fixture::random_rational(rng));
            int p = static_cast<int>(rng() % 3), q = static_cast<int>(rng() % 2);
            auto phi = fixture::random_form(rng, n, p), psi = fixture::random_form(rng, n, q);
            Form<Rational> lhs = m.cx->d(wedge(phi, psi));
            Form<Rational> rhs = wedge(d_twisted(*m.cx, a, phi), psi) +
                                 Rational(p % 2 ? -1 : 1) * wedge(phi, d_twisted(*m.cx, a.negated(), psi));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("property: Euler identity, duality and H0 vanishing") {
    std::mt19937_64 rng(kDefaultSeed + 2);
    for (const auto& name : fixture::model_names()) {
        auto m = load(name);
        const int n = m.cx->n();
        auto generic = cohomology_generic(*m.cx, m.alpha());
        CHECK(generic.euler() == 0);
        CHECK(generic.cochain_euler() == 0);
        REQUIRE(m.cx->unimodular());
        for (int trial = 0; trial < 20; ++trial) {
            Rational s = fixture::random_nonzero_rational(rng);
            auto plus = cohomology(*m.cx, TwistForm<Rational>::make(*m.cx, m.alpha(), s));
            auto minus = cohomology(*m.cx, TwistForm<Rational>::make(*m.cx, m.alpha(), -s));
            CHECK(plus.euler() == 0);
            for (int k = 0; k <= n; ++k) CHECK(plus.betti[k] == minus.betti[n - k]);
            CHECK(plus.betti[0] == 0);
            CHECK(plus.betti[n] == 0);
        }
    }
}

TEST_CASE("property: Dolbeault relations on random pure forms") {
    std::mt19937_64 rng(kDefaultSeed + 3);
    for (const auto& name : fixture::model_names()) {
        auto m = load(name);
        const auto& jc = *m.jc;
        for (int trial = 0; trial < 20; ++trial) {
            auto a = TwistForm<Rational>::make(*m.cx, m.alpha(), fixture::random_rational(rng));
            int p = static_cast<int>(rng() % 3), q = static_cast<int>(rng() % 3);
            if (p + q == 4) continue;
            auto phi = project(jc, fixture::random_complex_form(rng, 4, p + q), p, q);
            CHECK(dolbeault_twisted(jc, a, dolbeault_twisted(jc, a, phi)).is_zero());
            CHECK(del_twisted(jc, a, del_twisted(jc, a, phi)).is_zero());
            Form<G> anti = del_twisted(jc, a, dolbeault_twisted(jc, a, phi)) +
                           dolbeault_twisted(jc, a, del_twisted(jc, a, phi));
            CHECK(anti.is_zero());
            // d_a = del_a + dbar_a
            Form<G> d = apply(lift<G>(twisted_differential(*m.cx, a, p + q)), phi, p + q + 1);
            CHECK(d == del_twisted(jc, a, phi) + dolbeault_twisted(jc, a, phi));
        }
    }
}

TEST_CASE("property: integrability of every bundled complex structure") {
    for (const auto& name : fixture::model_names()) {
        auto m = load(name);
        for (const auto& defect : integrability_defects(*m.jc)) CHECK(defect.is_zero());
        CHECK((m.jc->j_vectors() * m.jc->j_vectors() + Matrix<Rational>::identity(4)).is_zero());
    }
}
