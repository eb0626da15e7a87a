#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

#include "fibrep/errors.hpp"

namespace fibrep {

/// Arbitrary-precision integer and rational. cpp_rational keeps values in
/// lowest terms with a positive denominator, which is exactly the canonical
/// form the exact layer relies on.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using Cplx = std::complex<double>;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Gaussian rational: a complex number with exact rational real and
/// imaginary parts. Closed under field operations; the scalar field of every
/// exact computation in the library.
struct Scalar {
    Rational re;
    Rational im;

    Scalar() = default;
    Scalar(Rational r) : re(std::move(r)) {}
    Scalar(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    Scalar(int n) : re(n) {}
    Scalar(int num, int den) : re(Rational(num, den)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    Scalar conj() const { return Scalar(re, -im); }

    /// |z|^2 as an exact rational.
    Rational norm2() const { return re * re + im * im; }

    Cplx to_cplx() const { return Cplx(to_double(re), to_double(im)); }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        return Scalar(a.re + b.re, a.im + b.im);
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        return Scalar(a.re - b.re, a.im - b.im);
    }
    friend Scalar operator-(const Scalar& a) { return Scalar(-a.re, -a.im); }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        return Scalar(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        Rational n = b.norm2();
        if (n == 0) throw Error("division by zero scalar");
        Scalar p = a * b.conj();
        return Scalar(p.re / n, p.im / n);
    }
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
};

// ---------------------------------------------------------------------------
// Scalar string grammar: "p/q", "p/q+r/s i", "p/q-r/s i" with an optional
// sign on p. Decimal literals are accepted on input and converted exactly.
// ---------------------------------------------------------------------------

inline std::string format_rational(const Rational& r) {
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

inline std::string format_scalar(const Scalar& s) {
    std::string out = format_rational(s.re);
    if (s.im != 0) {
        Rational a = s.im < 0 ? Rational(-s.im) : s.im;
        out += (s.im < 0 ? "-" : "+");
        out += format_rational(a);
        out += " i";
    }
    return out;
}

namespace detail {

// Parses one rational out of sv starting at pos: [sign] digits [/ digits]
// or a decimal literal [sign] digits . digits. Advances pos.
inline Rational parse_rational_at(std::string_view sv, size_t& pos) {
    size_t n = sv.size();
    bool neg = false;
    if (pos < n && (sv[pos] == '+' || sv[pos] == '-')) {
        neg = sv[pos] == '-';
        ++pos;
    }
    size_t start = pos;
    while (pos < n && std::isdigit(static_cast<unsigned char>(sv[pos]))) ++pos;
    if (pos == start) throw ParseError("expected digits in scalar: '" + std::string(sv) + "'");
    Int num(std::string(sv.substr(start, pos - start)));
    Int den = 1;
    if (pos < n && sv[pos] == '/') {
        ++pos;
        size_t dstart = pos;
        while (pos < n && std::isdigit(static_cast<unsigned char>(sv[pos]))) ++pos;
        if (pos == dstart) throw ParseError("expected denominator in scalar: '" + std::string(sv) + "'");
        den = Int(std::string(sv.substr(dstart, pos - dstart)));
        if (den == 0) throw ParseError("zero denominator in scalar: '" + std::string(sv) + "'");
    } else if (pos < n && sv[pos] == '.') {
        ++pos;
        size_t fstart = pos;
        while (pos < n && std::isdigit(static_cast<unsigned char>(sv[pos]))) ++pos;
        for (size_t i = fstart; i < pos; ++i) {
            num = num * 10 + (sv[i] - '0');
            den *= 10;
        }
    }
    Rational r(num, den);
    return neg ? Rational(-r) : r;
}

} // namespace detail

inline Scalar parse_scalar(std::string_view text) {
    size_t pos = 0;
    Rational re = detail::parse_rational_at(text, pos);
    if (pos == text.size()) return Scalar(re);
    // Remainder must be "±r/s i" (a space before the trailing i is optional).
    if (text[pos] != '+' && text[pos] != '-')
        throw ParseError("malformed scalar: '" + std::string(text) + "'");
    Rational im = detail::parse_rational_at(text, pos);
    if (pos < text.size() && text[pos] == ' ') ++pos;
    if (pos + 1 != text.size() || text[pos] != 'i')
        throw ParseError("malformed scalar: '" + std::string(text) + "'");
    return Scalar(re, im);
}

} // namespace fibrep
