#pragma once

#include "novikov/exactalg/gaussian.hpp"
#include "novikov/exactalg/laurent.hpp"
#include "novikov/exactalg/ratfunc.hpp"
#include "novikov/exactalg/rational.hpp"

#include <cmath>
#include <concepts>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace novikov {

enum class Domain { rational, laurent, rational_function, gaussian, float64 };

std::string_view domain_name(Domain d);

struct DomainMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SpecializationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
    static constexpr Domain domain = Domain::rational;
    static constexpr bool exact_field = true;
    static Rational from(const Rational& r) { return r; }
    static bool is_zero(const Rational& x) { return x.is_zero(); }
    static std::string str(const Rational& x) { return x.str(); }
};

template <>
struct scalar_traits<LaurentPoly> {
    static constexpr Domain domain = Domain::laurent;
    static constexpr bool exact_field = false;
    static LaurentPoly from(const Rational& r) { return LaurentPoly(r); }
    static bool is_zero(const LaurentPoly& x) { return x.is_zero(); }
    static std::string str(const LaurentPoly& x) { return x.pretty(); }
};

template <>
struct scalar_traits<RationalFunction> {
    static constexpr Domain domain = Domain::rational_function;
    static constexpr bool exact_field = true;
    static RationalFunction from(const Rational& r) { return RationalFunction(r); }
    static bool is_zero(const RationalFunction& x) { return x.is_zero(); }
    static std::string str(const RationalFunction& x) { return x.str(); }
};

template <>
struct scalar_traits<GaussianRational> {
    static constexpr Domain domain = Domain::gaussian;
    static constexpr bool exact_field = true;
    static GaussianRational from(const Rational& r) { return GaussianRational(r); }
    static bool is_zero(const GaussianRational& x) { return x.is_zero(); }
    static std::string str(const GaussianRational& x) { return x.str(); }
};

template <>
struct scalar_traits<double> {
    static constexpr Domain domain = Domain::float64;
    static constexpr bool exact_field = false;
    static double from(const Rational& r) { return r.to_double(); }
    static bool is_zero(double x) { return x == 0.0; }
    static std::string str(double x) { return std::to_string(x); }
};

template <class T>
concept ExactField = scalar_traits<T>::exact_field;

template <class T>
bool is_zero(const T& x) {
    return scalar_traits<T>::is_zero(x);
}

/// Type-erased scalar, used where values of unknown domain meet (parsers, tests of
/// the domain-mismatch contract).
using Scalar = std::variant<Rational, LaurentPoly, RationalFunction, GaussianRational, double>;

Domain domain_of(const Scalar& s);

}  // namespace novikov
