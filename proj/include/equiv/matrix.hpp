#pragma once

#include <vector>

#include "equiv/perm.hpp"
#include "equiv/scalar.hpp"

namespace equiv {

// Dense square matrix over either scalar backend. Deliberately small: the
// heavy lifting elsewhere is index bookkeeping, not linear algebra.
template <class T> struct Mat {
    int n = 0;
    std::vector<T> a;  // row-major

    Mat() = default;
    explicit Mat(int n_) : n(n_), a(size_t(n_) * n_, scalar_traits<T>::zero()) {}

    T& at(int i, int j) { return a[size_t(i) * n + j]; }
    const T& at(int i, int j) const { return a[size_t(i) * n + j]; }

    static Mat identity(int n) {
        Mat m(n);
        for (int i = 0; i < n; ++i) m.at(i, i) = scalar_traits<T>::one();
        return m;
    }
    static Mat diagonal(const std::vector<T>& d) {
        Mat m(int(d.size()));
        for (int i = 0; i < m.n; ++i) m.at(i, i) = d[i];
        return m;
    }

    friend Mat operator*(const Mat& x, const Mat& y) {
        if (x.n != y.n) throw input_error("matrix product: size mismatch");
        Mat r(x.n);
        for (int i = 0; i < x.n; ++i)
            for (int k = 0; k < x.n; ++k) {
                const T& v = x.at(i, k);
                if (is_zero(v)) continue;
                for (int j = 0; j < x.n; ++j) r.at(i, j) += v * y.at(k, j);
            }
        return r;
    }
    friend Mat operator+(const Mat& x, const Mat& y) {
        Mat r = x;
        for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
        return r;
    }
    friend Mat operator*(const T& s, const Mat& x) {
        Mat r = x;
        for (auto& v : r.a) v *= s;
        return r;
    }

    T trace() const {
        T t = scalar_traits<T>::zero();
        for (int i = 0; i < n; ++i) t += at(i, i);
        return t;
    }
    Mat transpose() const {
        Mat r(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) r.at(j, i) = at(i, j);
        return r;
    }
    Mat dagger() const {
        Mat r(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) r.at(j, i) = conj(at(i, j));
        return r;
    }
};

using CMatrix = Mat<Cplx>;
using RMatrix = Mat<CRat>;

// Tr(M^1..M^kmax), index 0 unused.
template <class T> std::vector<T> power_traces(const Mat<T>& m, int kmax) {
    std::vector<T> out(size_t(kmax) + 1, scalar_traits<T>::zero());
    Mat<T> p = m;
    for (int k = 1; k <= kmax; ++k) {
        out[k] = p.trace();
        if (k < kmax) p = p * m;
    }
    return out;
}

// Tr_lambda(M) = prod_j Tr(M^{lambda_j}) from precomputed power traces.
template <class T> T trace_of_type(const Partition& lam, const std::vector<T>& ptr) {
    T v = scalar_traits<T>::one();
    for (int p : lam.parts()) v *= ptr[p];
    return v;
}

// Multi-trace of a permutation; depends on sigma only through its cycle type.
template <class T> T multi_trace(const Permutation& sigma, const Mat<T>& m) {
    Partition lam = cycle_type(sigma);
    int kmax = lam.length() ? lam.part(0) : 0;
    if (kmax == 0) return scalar_traits<T>::one();
    return trace_of_type(lam, power_traces(m, kmax));
}

// Defining index sum, kept as an independent check of the cycle-type route.
template <class T> T multi_trace_defining_sum(const Permutation& sigma, const Mat<T>& m) {
    int n = sigma.degree(), N = m.n;
    T tot = scalar_traits<T>::zero();
    std::vector<int> k(n, 0);
    while (true) {
        T term = scalar_traits<T>::one();
        for (int i = 0; i < n && !is_zero(term); ++i) term *= m.at(k[i], k[sigma(i)]);
        tot += term;
        int d = n - 1;
        while (d >= 0 && ++k[d] == N) k[d--] = 0;
        if (d < 0) break;
    }
    return tot;
}

template <class T> Mat<T> to_backend(const CMatrix& m);
template <> inline Mat<Cplx> to_backend<Cplx>(const CMatrix& m) { return m; }
template <> inline Mat<CRat> to_backend<CRat>(const CMatrix& m) {
    RMatrix r(m.n);
    for (size_t i = 0; i < m.a.size(); ++i) {
        double re = m.a[i].real(), im = m.a[i].imag();
        if (re != double(long(re)) || im != double(long(im)))
            throw input_error("exact backend requires Gaussian-integer entries");
        r.a[i] = CRat(Rational(long(re)), Rational(long(im)));
    }
    return r;
}

inline CMatrix to_cplx(const RMatrix& m) {
    CMatrix r(m.n);
    for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = scalar_traits<CRat>::to_cplx(m.a[i]);
    return r;
}

}  // namespace equiv
