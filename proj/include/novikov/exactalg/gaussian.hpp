#pragma once

#include "novikov/exactalg/rational.hpp"

#include <string>

namespace novikov {

/// Exact complex scalar a + b i with rational parts.
struct GaussianRational {
    Rational re, im;

    GaussianRational() = default;
    GaussianRational(const Rational& r) : re(r) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(long r) : re(r) {}             // NOLINT(google-explicit-constructor)
    GaussianRational(int r) : re(r) {}              // NOLINT(google-explicit-constructor)
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_one() const { return re.is_one() && im.is_zero(); }
    GaussianRational conj() const { return {re, -im}; }
    Rational norm2() const { return re * re + im * im; }

    GaussianRational operator-() const { return {-re, -im}; }
    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        Rational n = b.norm2();
        GaussianRational p = a * b.conj();
        return {p.re / n, p.im / n};
    }
    GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
    GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
    GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }
    GaussianRational& operator/=(const GaussianRational& o) { return *this = *this / o; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }

    std::string str() const {
        if (im.is_zero()) return re.str();
        if (re.is_zero()) return im.str() + "i";
        return re.str() + (im.sign() < 0 ? "-" : "+") + im.abs().str() + "i";
    }
};

}  // namespace novikov
