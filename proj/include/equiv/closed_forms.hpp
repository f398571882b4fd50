#pragma once

#include <map>

#include "equiv/covariance.hpp"
#include "equiv/matrix.hpp"
#include "equiv/perm.hpp"

namespace equiv {

// Joint class distribution of (type(mu), type(mu*sigma)) over mu in S_n.
// Depends on sigma only through its type; memoized so an n = 8 sum costs one
// enumeration pass ever, then ~20x20 weighted terms per evaluation.
class PairClassTable {
  public:
    using Key = std::pair<Partition, Partition>;
    static const PairClassTable& get(const Partition& sigma_type);
    const std::map<Key, std::uint64_t>& counts() const { return counts_; }

  private:
    std::map<Key, std::uint64_t> counts_;
};

// N^-n sum_mu Tr_[mu](Q) Tr_[mu sigma](P).
template <class T> T dual_weight_sum(const Permutation& sigma, const Mat<T>& P, const Mat<T>& Q) {
    int n = sigma.degree(), N = P.n;
    if (P.n != Q.n) throw input_error("dual_weight_sum: size mismatch");
    if (n > max_perm_degree()) throw resource_error("dual_weight_sum: degree exceeds bound");
    if (n == 0) return scalar_traits<T>::one();
    auto ptrP = power_traces(P, n);
    auto ptrQ = power_traces(Q, n);
    const auto& table = PairClassTable::get(cycle_type(sigma));
    T acc = scalar_traits<T>::zero();
    for (const auto& [key, count] : table.counts()) {
        T term = trace_of_type(key.first, ptrQ) * trace_of_type(key.second, ptrP);
        acc += scalar_traits<T>::from_int(long(count)) * term;
    }
    T ninv = scalar_traits<T>::from_ratio(1, N);
    return acc * int_pow(ninv, n);
}

// Same sum by raw enumeration; retained as the debug path for the grouped one.
template <class T> T dual_weight_sum_enumerated(const Permutation& sigma, const Mat<T>& P, const Mat<T>& Q) {
    int n = sigma.degree(), N = P.n;
    auto ptrP = power_traces(P, std::max(n, 1));
    auto ptrQ = power_traces(Q, std::max(n, 1));
    T acc = scalar_traits<T>::zero();
    for (const auto& mu : enumerate_sn(n))
        acc += trace_of_type(cycle_type(mu), ptrQ) * trace_of_type(cycle_type(mu * sigma), ptrP);
    T ninv = scalar_traits<T>::from_ratio(1, N);
    return acc * int_pow(ninv, n);
}

// sum_mu Tr_[mu a](R) over mu in S_n.
template <class T> T tensor_dual_weight_sum(const MultiPermutation& a, const TensorCov<T>& r) {
    int n = a.degree();
    if (n > max_perm_degree()) throw resource_error("tensor_dual_weight_sum: degree exceeds bound");
    T acc = scalar_traits<T>::zero();
    for (const auto& mu : enumerate_sn(n))
        acc += cov_trace_invariant(scalar_distribute(mu, a), r);
    return acc;
}

// Class-restricted sum N^{-d(k-1)} sum_{gamma in [k^d]} Tr_[gamma sigma](P);
// vanishes unless k divides n. At k = 2 the prefactor is the familiar N^-d.
template <class T> T ck_expect(const Permutation& sigma, const Mat<T>& P, int k) {
    int n = sigma.degree(), N = P.n;
    if (n > max_perm_degree()) throw resource_error("ck_expect: degree exceeds bound");
    if (n % k != 0) return scalar_traits<T>::zero();
    int d = n / k;
    auto ptr = power_traces(P, n);
    Partition kclass(std::vector<int>(d, k));
    T acc = scalar_traits<T>::zero();
    for (const auto& gamma : enumerate_class(kclass))
        acc += trace_of_type(cycle_type(gamma * sigma), ptr);
    T ninv = scalar_traits<T>::from_ratio(1, N);
    return acc * int_pow(ninv, d * (k - 1));
}

// log of the quartic-model partition ratio, -(N^2/2) ln(1+g).
double quartic_cm_logz(double g, int N);
// Connected k-vertex necklace amplitude (k-1)! 2^{k-1} N^{-2k} N^{k+2}.
double quartic_connected_amplitude(int k, int N);

// Pillow model at D = 3: closed form and the two determinant routes.
double pillow_logz(double lambda, int N);
double pillow_det_dense(double lambda, int N);   // dense N^4 operator determinant
double pillow_det_blocks(double lambda, int N);  // block-diagonal determinant formula

// Quartic real order-3 tensor and self-transpose order-4 ratios.
double rt_logz(double lambda, int N);
double st_logz(double lambda, int N);
double st_det(double lambda, int N);  // determinant on the self-transpose subspace

// Effective Gaussian ensemble left after integrating out the auxiliary field
// with a quadratic potential: kernel (N/2) Tr((P^{-1} A)^2).
struct GaussianReduction {
    int N = 0;
    CMatrix kernel_p;      // the matrix P in the kernel
    CMatrix kernel_p_inv;  // its inverse
    Cplx two_point(int i, int j, int k, int l) const {
        return kernel_p.at(i, l) * kernel_p.at(k, j) / double(N);
    }
};
GaussianReduction gaussian_reduction_params(const CMatrix& P);

// Operator version: kernel (s/2) Tr((R^{-1} Phi)^2) on the N^D space, with
// two-point function R^a_d R^c_b / s.
struct GaussianReductionOp {
    double stiffness = 1.0;
    TOp<Cplx> kernel_r;
    TOp<Cplx> kernel_r_inv;
    Cplx two_point(int a, int b, int c, int d) const {
        return kernel_r.at(a, d) * kernel_r.at(c, b) / stiffness;
    }
};
GaussianReductionOp gaussian_reduction_params(const TOp<Cplx>& R, double stiffness);

double catalan(int m);

}  // namespace equiv
