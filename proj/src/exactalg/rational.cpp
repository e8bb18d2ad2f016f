#include "novikov/exactalg/rational.hpp"

#include <cctype>
#include <ostream>

namespace novikov {

Rational::Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    v_.canonicalize();
}

namespace {

bool valid_integer(std::string_view s) {
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!valid_integer(num) || !valid_integer(den) || den.front() == '-' || den.front() == '+')
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    std::string n(num);
    if (n.front() == '+') n.erase(0, 1);
    mpz_class zn(n), zd{std::string(den)};
    if (zd == 0) throw std::invalid_argument("rational with zero denominator '" + std::string(text) + "'");
    mpq_class q(zn, zd);
    q.canonicalize();
    return Rational(q);
}

std::string Rational::str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("rational division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::inverse() const { return Rational(1) / *this; }

Rational Rational::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    Rational out(1), base = *this;
    while (e > 0) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace novikov
