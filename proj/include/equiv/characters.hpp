#pragma once

#include <cstdint>
#include <map>

#include "equiv/matrix.hpp"
#include "equiv/perm.hpp"
#include "equiv/report.hpp"

namespace equiv {

// Exact character table of S_n. Values are small for n <= 8, so plain int64
// is comfortable; exactness keeps every downstream identity tolerance-free.
class SnCharacterTable {
  public:
    explicit SnCharacterTable(int n);

    int n() const { return n_; }
    const std::vector<Partition>& partitions() const { return parts_; }
    std::int64_t value(const Partition& lam, const Partition& mu) const;
    std::int64_t dim(const Partition& lam) const { return value(lam, one_type_); }

    static const SnCharacterTable& instance(int n);  // memoized per degree

  private:
    int n_;
    std::vector<Partition> parts_;
    std::map<Partition, int> index_;
    std::vector<std::vector<std::int64_t>> values_;  // [lambda][class]
    Partition one_type_;
};

std::int64_t sn_character(const Partition& lam, const Partition& mu);

// chi_lambda(M) through the S_n expansion (1/n!) sum_mu |C_mu| chi^lambda(mu) Tr_mu(M).
template <class T> T gl_character(const Partition& lam, const Mat<T>& m) {
    int n = lam.size();
    const auto& table = SnCharacterTable::instance(n);
    auto ptr = power_traces(m, std::max(n, 1));
    T acc = scalar_traits<T>::zero();
    for (const auto& mu : table.partitions()) {
        std::int64_t coeff = std::int64_t(class_size(mu)) * table.value(lam, mu);
        if (coeff == 0) continue;
        acc += scalar_traits<T>::from_int(coeff) * trace_of_type(mu, ptr);
    }
    return acc * scalar_traits<T>::from_ratio(1, long(factorial(n)));
}

// Tr_[sigma](M) vs sum_lambda chi^lambda(sigma) chi_lambda(M).
VerdictReport schur_weyl_check(const Permutation& sigma, const CMatrix& m, double rel_tol = 1e-12);

// n! N^-n chi_r(P) chi_r(Q) / chi^r(e).
template <class T> T character_expectation(const Partition& r, const Mat<T>& P, const Mat<T>& Q, int N) {
    int n = r.size();
    std::int64_t d = SnCharacterTable::instance(n).dim(r);
    T v = gl_character(r, P) * gl_character(r, Q);
    v *= scalar_traits<T>::from_ratio(long(factorial(n)), d);
    T ninv = scalar_traits<T>::from_ratio(1, N);
    return v * int_pow(ninv, n);
}

// Same expectation in the chi_r(C_1) form, valid for size n <= N.
VerdictReport c1_form_check(const Partition& r, const CMatrix& P, const CMatrix& Q, int N,
                            double rel_tol = 1e-9);

// Graded comparison of exp((N/m) Tr(A^m)) against sum_r chi_r(C_m) chi_r(A),
// degree by degree up to degree_cap <= N.
VerdictReport cauchy_cm_check(const CMatrix& A, int m, int degree_cap, double rel_tol = 1e-9);

}  // namespace equiv
