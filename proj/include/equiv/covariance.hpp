#pragma once

#include <optional>

#include "equiv/report.hpp"
#include "equiv/tensor.hpp"

namespace equiv {

// Diagonal matrix whose first N power sums are N*delta_{p,k}. Higher power
// sums are unconstrained; identities that would need them are tested at
// sizes where they vanish or flagged where they do not.
struct CkMatrix {
    int N = 0;
    int k = 0;
    std::vector<Cplx> eigenvalues;
    CMatrix matrix;
};

CkMatrix build_ck(int k, int N);
VerdictReport verify_ck(const CkMatrix& c, double tol = 1e-8);

// Gate for jobs that need C_k^{-1}; C_2 is singular at odd N.
bool ck_invertible(const CkMatrix& c, double tol = 1e-10);

struct CovariancePair {
    CMatrix P;
    CMatrix Q;
    int N() const { return P.n; }
};

struct ConvergenceVerdict {
    bool convergent = false;
    Cplx witness_q{0.0, 0.0};  // violating eigenvalue pair when not convergent
    Cplx witness_p{0.0, 0.0};
};

// Re(q_k p_l) >= 0 over all eigenvalue pairs; inputs must be normal.
ConvergenceVerdict convergence_check(const CovariancePair& pair, double normality_tol = 1e-10);

// A = Q^{1/2}, B = P^{1/2} for Hermitian positive definite inputs, so that
// A A^dagger = Q and B^dagger B = P.
struct SamplerFactors {
    CMatrix A;
    CMatrix B;
};
SamplerFactors factorize_for_sampling(const CovariancePair& pair, double pd_tol = 1e-12);

CMatrix hermitian_sqrt(const CMatrix& m, double pd_tol = 1e-12);

// Covariance of a complex tensor ensemble. `factors`/`scale` describe
// R = scale * (x)_c factors[c] when factorized; `dense` is always usable.
template <class T> struct TensorCov {
    int D = 1, N = 0;
    TOp<T> dense;
    std::vector<Mat<T>> factors;  // empty when not factorized
    T scale = scalar_traits<T>::one();

    static TensorCov from_dense(TOp<T> r) {
        TensorCov c;
        c.D = r.D;
        c.N = r.N;
        c.dense = std::move(r);
        return c;
    }
    static TensorCov from_factors(std::vector<Mat<T>> fs, T scale_ = scalar_traits<T>::one()) {
        TensorCov c;
        c.D = int(fs.size());
        c.N = fs.at(0).n;
        c.factors = std::move(fs);
        c.scale = scale_;
        c.dense = scale_ * kron_all(c.factors);
        return c;
    }
    bool factorized() const { return !factors.empty(); }
};

// Tr_[a](R), using the per-color route when R factorizes.
template <class T> T cov_trace_invariant(const MultiPermutation& a, const TensorCov<T>& r) {
    if (r.factorized()) {
        T v = trace_invariant_factorized(a, r.factors);
        return v * int_pow(r.scale, a.degree());
    }
    return trace_invariant_naive(a, r.dense);
}

}  // namespace equiv
