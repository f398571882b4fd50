#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "equiv/matrix.hpp"
#include "equiv/perm.hpp"
#include "equiv/scalar.hpp"

namespace equiv {

inline std::int64_t int_power(std::int64_t b, int e) {
    std::int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// Multi-index <-> flat offset, row-major with color 0 most significant.
inline int encode_multi(const int* digits, int D, int N) {
    int v = 0;
    for (int c = 0; c < D; ++c) v = v * N + digits[c];
    return v;
}
inline void decode_multi(int v, int D, int N, int* digits) {
    for (int c = D - 1; c >= 0; --c) {
        digits[c] = v % N;
        v /= N;
    }
}

// Order-D complex tensor phi^{a}.
template <class T> struct Tensor {
    int D = 1, N = 0, dim = 0;
    std::vector<T> a;

    Tensor() = default;
    Tensor(int D_, int N_) : D(D_), N(N_), dim(int(int_power(N_, D_))), a(dim, scalar_traits<T>::zero()) {}
    T& at(int flat) { return a[flat]; }
    const T& at(int flat) const { return a[flat]; }
};

// Mixed tensor P^{a}_{b}: a square operator on the N^D space. D = 0 is the
// scalar left over after tracing out every color.
template <class T> struct TOp {
    int D = 1, N = 0, dim = 0;
    std::vector<T> a;  // a[upper*dim + lower]

    TOp() = default;
    TOp(int D_, int N_)
        : D(D_), N(N_), dim(int(int_power(N_, D_))), a(size_t(dim) * dim, scalar_traits<T>::zero()) {}

    T& at(int up, int lo) { return a[size_t(up) * dim + lo]; }
    const T& at(int up, int lo) const { return a[size_t(up) * dim + lo]; }

    static TOp identity(int D_, int N_) {
        TOp p(D_, N_);
        for (int i = 0; i < p.dim; ++i) p.at(i, i) = scalar_traits<T>::one();
        return p;
    }

    T trace() const {
        T t = scalar_traits<T>::zero();
        for (int i = 0; i < dim; ++i) t += at(i, i);
        return t;
    }

    Mat<T> as_matrix() const {
        Mat<T> m(dim);
        m.a = a;
        return m;
    }
    static TOp from_matrix(int D_, int N_, const Mat<T>& m) {
        TOp p(D_, N_);
        if (m.n != p.dim) throw input_error("operator/matrix dimension mismatch");
        p.a = m.a;
        return p;
    }

    friend TOp operator*(const T& s, const TOp& p) {
        TOp r = p;
        for (auto& v : r.a) v *= s;
        return r;
    }
};

// Largest entry of Phi - Phi^dagger; zero for self-adjoint operators.
template <class T> double self_adjoint_defect(const TOp<T>& p) {
    double worst = 0.0;
    for (int u = 0; u < p.dim; ++u)
        for (int l = 0; l < p.dim; ++l) {
            T d = p.at(u, l) - conj(p.at(l, u));
            worst = std::max(worst, std::abs(scalar_traits<T>::to_cplx(d)));
        }
    return worst;
}

struct SelfAdjointFlag {
    bool flagged = false;
    double tolerance = 1e-12;
};

// Flags the operator as self-adjoint, or throws when the defect exceeds tol.
template <class T> SelfAdjointFlag assert_self_adjoint(const TOp<T>& p, double tol = 1e-12) {
    double defect = self_adjoint_defect(p);
    if (defect > tol)
        throw input_error("operator is not self-adjoint within tolerance, defect " +
                          std::to_string(defect));
    return SelfAdjointFlag{true, tol};
}

// phi psi^dagger as an operator: [phi psi^dagger]^a_b = phi^a conj(psi^b).
template <class T> TOp<T> outer(const Tensor<T>& phi, const Tensor<T>& psi) {
    if (phi.D != psi.D || phi.N != psi.N) throw input_error("outer: shape mismatch");
    TOp<T> p(phi.D, phi.N);
    for (int u = 0; u < p.dim; ++u)
        for (int l = 0; l < p.dim; ++l) p.at(u, l) = phi.a[u] * conj(psi.a[l]);
    return p;
}

// Kronecker product over colors: (A (x) B) with A on the leading colors.
template <class T> TOp<T> kron(const TOp<T>& x, const TOp<T>& y) {
    if (x.N != y.N) throw input_error("kron: base dimension mismatch");
    TOp<T> r(x.D + y.D, x.N);
    for (int ux = 0; ux < x.dim; ++ux)
        for (int lx = 0; lx < x.dim; ++lx) {
            const T& v = x.at(ux, lx);
            if (is_zero(v)) continue;
            for (int uy = 0; uy < y.dim; ++uy)
                for (int ly = 0; ly < y.dim; ++ly)
                    r.at(ux * y.dim + uy, lx * y.dim + ly) = v * y.at(uy, ly);
        }
    return r;
}

template <class T> TOp<T> op_from_mat(const Mat<T>& m) { return TOp<T>::from_matrix(1, m.n, m); }

template <class T> TOp<T> kron_all(const std::vector<Mat<T>>& factors) {
    TOp<T> r = op_from_mat(factors.at(0));
    for (size_t c = 1; c < factors.size(); ++c) r = kron(r, op_from_mat(factors[c]));
    return r;
}

template <class T> TOp<T> kron_all(std::initializer_list<Mat<T>> factors) {
    return kron_all(std::vector<Mat<T>>(factors));
}

// Contraction of one color; order drops by one.
template <class T> TOp<T> partial_trace(int color, const TOp<T>& p) {
    if (color < 0 || color >= p.D) throw input_error("partial_trace: bad color");
    TOp<T> r(p.D - 1, p.N);
    std::vector<int> ud(p.D), ld(p.D), urd(std::max(p.D - 1, 1)), lrd(std::max(p.D - 1, 1));
    for (int ur = 0; ur < r.dim; ++ur) {
        decode_multi(ur, r.D, r.N, urd.data());
        for (int lr = 0; lr < r.dim; ++lr) {
            decode_multi(lr, r.D, r.N, lrd.data());
            T s = scalar_traits<T>::zero();
            for (int d = 0; d < p.N; ++d) {
                for (int c = 0; c < p.D; ++c) ud[c] = (c == color) ? d : urd[c < color ? c : c - 1];
                for (int c = 0; c < p.D; ++c) ld[c] = (c == color) ? d : lrd[c < color ? c : c - 1];
                s += p.at(encode_multi(ud.data(), p.D, p.N), encode_multi(ld.data(), p.D, p.N));
            }
            r.at(ur, lr) = s;
        }
    }
    return r;
}

constexpr std::int64_t kInvariantBudget = 10'000'000;

// Tr_[a](P) by the defining index sum. The reference path: every faster
// route is required to agree with this one on overlapping budgets.
template <class T> T trace_invariant_naive(const MultiPermutation& a, const TOp<T>& p) {
    int n = a.degree(), D = a.order(), N = p.N;
    if (p.D != D) throw input_error("trace invariant: order mismatch");
    if (n == 0) return scalar_traits<T>::one();
    std::int64_t states = 1;
    for (int j = 0; j < n * D; ++j) {
        states *= N;
        if (states > kInvariantBudget)
            throw resource_error("trace_invariant: N^{nD} exceeds contraction budget");
    }
    std::vector<Permutation> inv;
    for (int c = 0; c < D; ++c) inv.push_back(a.component(c).inverse());

    std::vector<int> k(size_t(n) * D, 0);  // k[i*D+j]
    std::vector<int> row(D), acted(D);
    T tot = scalar_traits<T>::zero();
    while (true) {
        T term = scalar_traits<T>::one();
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < D; ++j) {
                row[j] = k[size_t(i) * D + j];
                acted[j] = k[size_t(inv[j](i)) * D + j];
            }
            term *= p.at(encode_multi(acted.data(), D, N), encode_multi(row.data(), D, N));
            if (is_zero(term)) break;
        }
        tot += term;
        int d = n * D - 1;
        while (d >= 0 && ++k[d] == N) k[d--] = 0;
        if (d < 0) break;
    }
    return tot;
}

// Public entry point; the naive sum is the reference evaluation and the
// factorized route below must agree with it wherever both apply.
template <class T> T trace_invariant_op(const MultiPermutation& a, const TOp<T>& p) {
    return trace_invariant_naive(a, p);
}

// Color-by-color evaluation for factorized operators P = (x)_c R_c: each
// color contributes its own matrix multi-trace through the cycle structure.
template <class T> T trace_invariant_factorized(const MultiPermutation& a, const std::vector<Mat<T>>& factors) {
    if (int(factors.size()) != a.order()) throw input_error("factorized invariant: order mismatch");
    T v = scalar_traits<T>::one();
    for (int c = 0; c < a.order(); ++c) v *= multi_trace(a.component(c), factors[c]);
    return v;
}

// Tr_[a](psi^dagger, phi) by direct loop nest over the index array.
template <class T> T trace_invariant_pair(const MultiPermutation& a, const Tensor<T>& psi, const Tensor<T>& phi) {
    if (psi.D != phi.D || psi.N != phi.N) throw input_error("pair invariant: shape mismatch");
    int n = a.degree(), D = a.order(), N = phi.N;
    std::int64_t states = 1;
    for (int j = 0; j < n * D; ++j) {
        states *= N;
        if (states > kInvariantBudget) throw resource_error("pair invariant: budget exceeded");
    }
    std::vector<Permutation> inv;
    for (int c = 0; c < D; ++c) inv.push_back(a.component(c).inverse());
    std::vector<int> k(size_t(n) * D, 0);
    std::vector<int> row(D), acted(D);
    T tot = scalar_traits<T>::zero();
    while (true) {
        T term = scalar_traits<T>::one();
        for (int i = 0; i < n && !is_zero(term); ++i) {
            for (int j = 0; j < D; ++j) {
                row[j] = k[size_t(i) * D + j];
                acted[j] = k[size_t(inv[j](i)) * D + j];
            }
            term *= conj(psi.a[encode_multi(row.data(), D, N)]) * phi.a[encode_multi(acted.data(), D, N)];
        }
        tot += term;
        int d = n * D - 1;
        while (d >= 0 && ++k[d] == N) k[d--] = 0;
        if (d < 0) break;
    }
    return tot;
}

// Series form of the logarithmic potential on matrices,
//   sum_{k<=kmax} (i^k/k) Tr(Q^k) Tr((P B)^k),
// valid in both backends; the closed log-determinant lives in logdet.cpp.
template <class T> T log_potential_series(const Mat<T>& Q, const Mat<T>& P, const Mat<T>& B, int kmax) {
    auto qtr = power_traces(Q, kmax);
    auto pb = P * B;
    auto pbtr = power_traces(pb, kmax);
    T tot = scalar_traits<T>::zero();
    for (int k = 1; k <= kmax; ++k)
        tot += ipow<T>(k) * scalar_traits<T>::from_ratio(1, k) * qtr[k] * pbtr[k];
    return tot;
}

// Tensor analog: sum_k (i^k/k) Tr((R Psi)^k) on the N^D space.
template <class T> T log_potential_tensor_series(const TOp<T>& R, const TOp<T>& Psi, int kmax) {
    if (R.dim != Psi.dim) throw input_error("log potential: dimension mismatch");
    Mat<T> rp = R.as_matrix() * Psi.as_matrix();
    auto tr = power_traces(rp, kmax);
    T tot = scalar_traits<T>::zero();
    for (int k = 1; k <= kmax; ++k)
        tot += ipow<T>(k) * scalar_traits<T>::from_ratio(1, k) * tr[k];
    return tot;
}

// Closed-form evaluations, float backend (LU behind them). Implemented in logdet.cpp.
Cplx log_det_principal(const CMatrix& m);                        // sum of principal logs of LU pivots
Cplx log_potential_eval(const CMatrix& Q, const CMatrix& P, const CMatrix& B);
Cplx log_potential_tensor(const TOp<Cplx>& R, const TOp<Cplx>& Psi);

}  // namespace equiv
