#include "novikov/exactalg/ratfunc.hpp"

#include <stdexcept>

namespace novikov {

RationalFunction::RationalFunction(const LaurentPoly& num, const LaurentPoly& den) {
    if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
    if (num.is_zero()) {
        den_ = LaurentPoly(1);
        return;
    }
    LaurentPoly g = gcd(num, den);
    LaurentPoly n = exact_divide(num, g);
    LaurentPoly d = exact_divide(den, g);
    // Move the unit c*t^k of d onto the numerator.
    const int shift = d.low();
    const Rational lead = d.leading();
    den_ = d.normalized();
    n = n.shifted(-shift);
    n *= lead.inverse();
    num_ = std::move(n);
}

Rational RationalFunction::evaluate(const Rational& t0) const {
    Rational d = den_.evaluate(t0);
    if (d.is_zero()) throw std::domain_error("t = " + t0.str() + " is a pole of " + str());
    return num_.evaluate(t0) / d;
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction out = *this;
    out.num_ = -out.num_;
    return out;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return {a.num_ * b.num_, a.den_ * b.den_};
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw std::domain_error("rational function division by zero");
    return {a.num_ * b.den_, a.den_ * b.num_};
}

std::string RationalFunction::str() const {
    if (den_.is_one()) return num_.pretty();
    return "(" + num_.pretty() + ")/(" + den_.pretty() + ")";
}

}  // namespace novikov
