#include "novikov/exactalg/laurent.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace novikov {

LaurentPoly LaurentPoly::monomial(int exponent, const Rational& coeff) {
    LaurentPoly p;
    p.add_term(exponent, coeff);
    return p;
}

void LaurentPoly::add_term(int e, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

int LaurentPoly::low() const { return is_zero() ? 0 : terms_.begin()->first; }
int LaurentPoly::high() const { return is_zero() ? 0 : terms_.rbegin()->first; }

Rational LaurentPoly::coeff(int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational LaurentPoly::evaluate(const Rational& t0) const {
    if (t0.is_zero() && low() < 0) throw std::domain_error("evaluation of a negative power of t at t = 0");
    Rational out(0);
    for (const auto& [e, c] : terms_) out += c * t0.pow(e);
    return out;
}

LaurentPoly LaurentPoly::shifted(int by) const {
    LaurentPoly out;
    for (const auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), e + by, c);
    return out;
}

LaurentPoly LaurentPoly::normalized() const {
    if (is_zero()) return {};
    LaurentPoly out = shifted(-low());
    out *= leading().inverse();
    return out;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) { return *this = *this * o; }

LaurentPoly& LaurentPoly::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
    return out;
}

std::string LaurentPoly::str() const {
    std::ostringstream os;
    os << '[';
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << ", ";
        first = false;
        os << e << ':' << c.str();
    }
    os << ']';
    return os.str();
}

std::string LaurentPoly::pretty() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rational mag = c.abs();
        if (first) {
            if (c.sign() < 0) os << '-';
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        first = false;
        bool show_coeff = e == 0 || !mag.is_one();
        if (show_coeff) os << mag.str();
        if (e != 0) {
            if (show_coeff) os << '*';
            os << 't';
            if (e != 1) os << '^' << e;
        }
    }
    return os.str();
}

LaurentPoly LaurentPoly::from_pairs(const std::vector<std::pair<int, Rational>>& pairs) {
    LaurentPoly out;
    for (const auto& [e, c] : pairs) out.add_term(e, c);
    return out;
}

std::pair<LaurentPoly, LaurentPoly> divmod(const LaurentPoly& a, const LaurentPoly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    LaurentPoly num = a.shifted(-a.low());
    LaurentPoly den = b.shifted(-b.low());
    LaurentPoly quot;
    const int dh = den.high();
    const Rational lead_inv = den.leading().inverse();
    while (!num.is_zero() && num.high() >= dh) {
        LaurentPoly step = LaurentPoly::monomial(num.high() - dh, num.leading() * lead_inv);
        num -= step * den;
        quot += step;
    }
    return {quot, num};
}

LaurentPoly exact_divide(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero()) return {};
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw std::domain_error("inexact Laurent polynomial division");
    return q.shifted(a.low() - b.low());
}

LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly x = a.normalized(), y = b.normalized();
    while (!y.is_zero()) {
        LaurentPoly r = divmod(x, y).second;
        x = std::move(y);
        y = r.normalized();
    }
    return x.normalized();
}

namespace {

std::vector<mpz_class> positive_divisors(mpz_class n) {
    if (n < 0) n = -n;
    std::vector<mpz_class> small, large;
    for (mpz_class d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d * d != n) large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

}  // namespace

std::vector<Rational> rational_roots(const LaurentPoly& p) {
    if (p.is_zero()) throw std::domain_error("rational_roots of the zero polynomial");
    LaurentPoly f = p.shifted(-p.low());
    if (f.high() == 0) return {};
    mpz_class common = 1;
    for (const auto& [e, c] : f.terms()) {
        mpz_class d = c.den();
        mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), d.get_mpz_t());
    }
    f *= Rational(mpq_class(common));
    mpz_class a0 = f.coeff(0).num();
    mpz_class an = f.leading().num();
    std::set<Rational> roots;
    for (const auto& pnum : positive_divisors(a0)) {
        for (const auto& qden : positive_divisors(an)) {
            for (int s : {1, -1}) {
                Rational cand(mpq_class(mpz_class(s * pnum), qden));
                if (f.evaluate(cand).is_zero()) roots.insert(cand);
            }
        }
    }
    return {roots.begin(), roots.end()};
}

}  // namespace novikov
