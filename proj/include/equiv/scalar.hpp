#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <cstdint>
#include <ostream>
#include <string>

namespace equiv {

using Rational = boost::multiprecision::cpp_rational;
using Cplx = std::complex<double>;

// Gaussian rational a + b*i. The exact backend for integer-entry inputs;
// identities checked in this mode need no tolerance at all.
struct CRat {
    Rational re{0};
    Rational im{0};

    CRat() = default;
    CRat(long r) : re(r) {}
    CRat(Rational r) : re(std::move(r)) {}
    CRat(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    friend CRat operator+(const CRat& a, const CRat& b) { return {a.re + b.re, a.im + b.im}; }
    friend CRat operator-(const CRat& a, const CRat& b) { return {a.re - b.re, a.im - b.im}; }
    friend CRat operator-(const CRat& a) { return {-a.re, -a.im}; }
    friend CRat operator*(const CRat& a, const CRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend CRat operator/(const CRat& a, const CRat& b) {
        Rational n = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    CRat& operator+=(const CRat& o) { re += o.re; im += o.im; return *this; }
    CRat& operator-=(const CRat& o) { re -= o.re; im -= o.im; return *this; }
    CRat& operator*=(const CRat& o) { *this = *this * o; return *this; }
    friend bool operator==(const CRat& a, const CRat& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const CRat& a, const CRat& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const CRat& z) {
        return os << z.re << (z.im >= 0 ? "+" : "") << z.im << "i";
    }
};

inline CRat conj(const CRat& z) { return {z.re, -z.im}; }
inline bool is_zero(const CRat& z) { return z.re == 0 && z.im == 0; }
inline bool is_zero(const Cplx& z) { return z == Cplx(0.0, 0.0); }

// Uniform construction helpers so numeric code can be written once and
// instantiated for both backends.
template <class T> struct scalar_traits;

template <> struct scalar_traits<Cplx> {
    static Cplx zero() { return {0.0, 0.0}; }
    static Cplx one() { return {1.0, 0.0}; }
    static Cplx i() { return {0.0, 1.0}; }
    static Cplx from_int(long v) { return {double(v), 0.0}; }
    static Cplx from_ratio(long n, long d) { return {double(n) / double(d), 0.0}; }
    static Cplx to_cplx(const Cplx& z) { return z; }
    static constexpr bool exact = false;
};

template <> struct scalar_traits<CRat> {
    static CRat zero() { return {}; }
    static CRat one() { return CRat(1); }
    static CRat i() { return {Rational(0), Rational(1)}; }
    static CRat from_int(long v) { return CRat(v); }
    static CRat from_ratio(long n, long d) { return CRat(Rational(n) / Rational(d)); }
    static Cplx to_cplx(const CRat& z) {
        return {static_cast<double>(z.re), static_cast<double>(z.im)};
    }
    static constexpr bool exact = true;
};

// i^k without touching floating point.
template <class T> T ipow(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return scalar_traits<T>::one();
        case 1: return scalar_traits<T>::i();
        case 2: return -scalar_traits<T>::one();
        default: return -scalar_traits<T>::i();
    }
}

template <class T> T int_pow(T base, int e) {
    T r = scalar_traits<T>::one();
    for (int j = 0; j < e; ++j) r = r * base;
    return r;
}

inline double abs2(const Cplx& z) { return std::norm(z); }

}  // namespace equiv
