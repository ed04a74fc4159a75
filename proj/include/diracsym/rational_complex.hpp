#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace diracsym {

using Rational = boost::multiprecision::cpp_rational;

/// Complex number with exact rational real and imaginary parts.
///
/// All entries of the Dirac-representation gamma matrices (and every product
/// of them) are Gaussian rationals, so this type closes under the matrix
/// algebra used throughout and makes equality decidable.
struct ExactComplex {
    Rational re{0};
    Rational im{0};

    ExactComplex() = default;
    ExactComplex(Rational r) : re(std::move(r)) {}
    ExactComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    ExactComplex(long r) : re(r) {}
    ExactComplex(long r, long i) : re(r), im(i) {}

    static ExactComplex unit_i() { return ExactComplex{Rational(0), Rational(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }

    ExactComplex conj() const { return ExactComplex{re, -im}; }

    friend ExactComplex operator+(const ExactComplex& a, const ExactComplex& b) {
        return ExactComplex{a.re + b.re, a.im + b.im};
    }
    friend ExactComplex operator-(const ExactComplex& a, const ExactComplex& b) {
        return ExactComplex{a.re - b.re, a.im - b.im};
    }
    friend ExactComplex operator-(const ExactComplex& a) { return ExactComplex{-a.re, -a.im}; }
    friend ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
        return ExactComplex{a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    ExactComplex& operator+=(const ExactComplex& o) { re += o.re; im += o.im; return *this; }
    ExactComplex& operator-=(const ExactComplex& o) { re -= o.re; im -= o.im; return *this; }

    friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
        return a.re == b.re && a.im == b.im;
    }

    double real_d() const { return static_cast<double>(re); }
    double imag_d() const { return static_cast<double>(im); }

    /// "a/b+c/d*i" (sign of the imaginary part replaces '+' when negative).
    std::string str() const;
};

/// Parses a plain rational: "3", "-1/2", or a finite decimal "0.6" (exact).
/// Returns nullopt on malformed input.
std::optional<Rational> parse_rational(const std::string& text);

}  // namespace diracsym
