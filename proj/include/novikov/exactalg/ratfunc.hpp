#pragma once

#include "novikov/exactalg/laurent.hpp"

#include <string>

namespace novikov {

/// Element of Q(t) stored as a reduced LaurentPoly pair. The denominator is monic
/// with lowest exponent 0 and coprime to the numerator.
class RationalFunction {
public:
    RationalFunction() : den_(1) {}
    RationalFunction(const LaurentPoly& p) : num_(p), den_(1) {}  // NOLINT(google-explicit-constructor)
    RationalFunction(const Rational& c) : num_(c), den_(1) {}    // NOLINT(google-explicit-constructor)
    RationalFunction(long c) : RationalFunction(Rational(c)) {}  // NOLINT(google-explicit-constructor)
    RationalFunction(int c) : RationalFunction(Rational(c)) {}   // NOLINT(google-explicit-constructor)
    RationalFunction(const LaurentPoly& num, const LaurentPoly& den);

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }

    /// Throws std::domain_error when t0 is a pole (or 0 against negative powers).
    Rational evaluate(const Rational& t0) const;

    RationalFunction operator-() const;
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    std::string str() const;

private:
    LaurentPoly num_, den_;
};

}  // namespace novikov
