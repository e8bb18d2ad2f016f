#pragma once

#include "novikov/exactalg/rational.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace novikov {

/// Laurent polynomial in one indeterminate t over the rationals.
/// Stores no zero coefficients; the zero polynomial is the empty map.
class LaurentPoly {
public:
    using Terms = std::map<int, Rational>;

    LaurentPoly() = default;
    LaurentPoly(const Rational& c) { add_term(0, c); }  // NOLINT(google-explicit-constructor)
    LaurentPoly(long c) : LaurentPoly(Rational(c)) {}   // NOLINT(google-explicit-constructor)
    LaurentPoly(int c) : LaurentPoly(Rational(c)) {}    // NOLINT(google-explicit-constructor)

    static LaurentPoly monomial(int exponent, const Rational& coeff = Rational(1));
    static LaurentPoly t() { return monomial(1); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const { return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second.is_one(); }
    /// Units of Q[t, 1/t] are the nonzero monomials.
    bool is_unit() const { return terms_.size() == 1; }
    bool is_constant() const { return is_zero() || (terms_.size() == 1 && terms_.begin()->first == 0); }
    int low() const;   ///< lowest exponent; 0 for the zero polynomial
    int high() const;  ///< highest exponent; 0 for the zero polynomial
    /// high() - low(); -1 for zero. This is the Euclidean degree in the Laurent ring.
    int span() const { return is_zero() ? -1 : high() - low(); }
    Rational coeff(int exponent) const;
    const Rational& leading() const { return terms_.rbegin()->second; }

    /// Throws std::domain_error on t0 = 0 when negative exponents are present.
    Rational evaluate(const Rational& t0) const;

    LaurentPoly shifted(int by) const;
    /// Multiplies by the unit that makes it monic with lowest exponent 0.
    LaurentPoly normalized() const;

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const LaurentPoly& o);
    LaurentPoly& operator*=(const Rational& c);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

    /// Sorted "exponent:coefficient" list, e.g. "[0:-1, 1:1]"; "[]" for zero.
    std::string str() const;
    /// Human form in t, e.g. "t - 1".
    std::string pretty() const;
    /// Inverse of the exponent:coefficient encoding (without brackets) used by reports.
    static LaurentPoly from_pairs(const std::vector<std::pair<int, Rational>>& pairs);

private:
    void add_term(int e, const Rational& c);
    Terms terms_;
};

/// Quotient and remainder in Q[t] after clearing both operands onto nonnegative exponents.
/// Remainder has span < divisor span. Divisor must be nonzero.
std::pair<LaurentPoly, LaurentPoly> divmod(const LaurentPoly& a, const LaurentPoly& b);

/// Exact quotient a / b in the Laurent ring; throws std::domain_error when b does not divide a.
LaurentPoly exact_divide(const LaurentPoly& a, const LaurentPoly& b);

/// Greatest common divisor, normalized monic with lowest exponent 0 (zero iff both are zero).
LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b);

/// Rational roots (nonzero, distinct, ascending).
std::vector<Rational> rational_roots(const LaurentPoly& p);

}  // namespace novikov
