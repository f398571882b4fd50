#pragma once

#include "equiv/covariance.hpp"
#include "equiv/matrix.hpp"
#include "equiv/perm.hpp"

namespace equiv {

// Ground-truth Gaussian expectations by explicit enumeration of Wick
// pairings with numeric index contraction. Nothing here calls the
// permutation-sum formulas these values are later compared against.

constexpr int kWickMaxDegree = 6;

// What to average: a matrix multi-trace, a tensor bubble, or the quartic
// real-tensor monomial; `power` forms products of the base observable.
struct ObservableSpec {
    enum class Kind { MatrixMultitrace, TensorInvariant, RealTensorMonomial };
    Kind kind = Kind::MatrixMultitrace;
    Permutation sigma;
    MultiPermutation bubble;
    int power = 1;

    static ObservableSpec matrix_multitrace(Permutation s, int power = 1) {
        ObservableSpec o;
        o.kind = Kind::MatrixMultitrace;
        o.sigma = std::move(s);
        o.power = power;
        return o;
    }
    static ObservableSpec tensor_invariant(MultiPermutation a, int power = 1) {
        ObservableSpec o;
        o.kind = Kind::TensorInvariant;
        o.bubble = std::move(a);
        o.power = power;
        return o;
    }

    // The product observable as one block-summed invariant.
    Permutation matrix_op() const {
        Permutation op;
        for (int p = 0; p < power; ++p) op = (p == 0) ? sigma : dsum(op, sigma);
        return op;
    }
    MultiPermutation tensor_op() const {
        MultiPermutation op;
        for (int p = 0; p < power; ++p) op = (p == 0) ? bubble : dsum(op, bubble);
        return op;
    }

    template <class T> T evaluate(const Mat<T>& m_dagger_m) const {
        if (kind != Kind::MatrixMultitrace) throw input_error("observable: not a matrix kind");
        return multi_trace(matrix_op(), m_dagger_m);
    }
    template <class T> T evaluate(const Tensor<T>& phi) const {
        if (kind != Kind::TensorInvariant) throw input_error("observable: not a tensor kind");
        return trace_invariant_pair(tensor_op(), phi, phi);
    }
};

// <Tr_[sigma](M^dagger M)> with <M^dagger_{ij} M_{kl}> = N^-1 P_{il} Q_{kj}.
// For one pairing pi the P-factors touch only the row indices and the
// Q-factors only the column indices, so the index sums run separately.
template <class T> T cm_expect(const Permutation& sigma, const Mat<T>& P, const Mat<T>& Q) {
    int n = sigma.degree(), N = P.n;
    if (P.n != Q.n) throw input_error("cm_expect: size mismatch");
    if (n > kWickMaxDegree) throw resource_error("cm_expect: degree exceeds oracle budget");
    if (n == 0) return scalar_traits<T>::one();
    T total = scalar_traits<T>::zero();
    std::vector<int> spi(n);
    for (const auto& pi : enumerate_sn(n)) {
        for (int i = 0; i < n; ++i) spi[i] = sigma(pi(i));
        T psum = scalar_traits<T>::zero();
        T qsum = scalar_traits<T>::zero();
        std::vector<int> k(n, 0);
        while (true) {
            T term = scalar_traits<T>::one();
            for (int i = 0; i < n && !is_zero(term); ++i) term *= P.at(k[i], k[spi[i]]);
            psum += term;
            int d = n - 1;
            while (d >= 0 && ++k[d] == N) k[d--] = 0;
            if (d < 0) break;
        }
        std::vector<int> l(n, 0);
        while (true) {
            T term = scalar_traits<T>::one();
            for (int i = 0; i < n && !is_zero(term); ++i) term *= Q.at(l[pi(i)], l[i]);
            qsum += term;
            int d = n - 1;
            while (d >= 0 && ++l[d] == N) l[d--] = 0;
            if (d < 0) break;
        }
        total += psum * qsum;
    }
    T ninv = scalar_traits<T>::from_ratio(1, N);
    return total * int_pow(ninv, n);
}

// Joint-loop variant, no factorized index sums; cross-checks the one above.
template <class T> T cm_expect_joint(const Permutation& sigma, const Mat<T>& P, const Mat<T>& Q) {
    int n = sigma.degree(), N = P.n;
    if (n > 4) throw resource_error("cm_expect_joint: degree exceeds joint-loop budget");
    if (n == 0) return scalar_traits<T>::one();
    T total = scalar_traits<T>::zero();
    std::vector<int> spi(n);
    for (const auto& pi : enumerate_sn(n)) {
        for (int i = 0; i < n; ++i) spi[i] = sigma(pi(i));
        std::vector<int> idx(size_t(2) * n, 0);  // rows then columns
        while (true) {
            const int* k = idx.data();
            const int* l = idx.data() + n;
            T term = scalar_traits<T>::one();
            for (int i = 0; i < n && !is_zero(term); ++i)
                term *= P.at(k[i], k[spi[i]]) * Q.at(l[pi(i)], l[i]);
            total += term;
            int d = 2 * n - 1;
            while (d >= 0 && ++idx[d] == N) idx[d--] = 0;
            if (d < 0) break;
        }
    }
    T ninv = scalar_traits<T>::from_ratio(1, N);
    return total * int_pow(ninv, n);
}

// <Tr_[a](phi phi^dagger)> with <phi phi^dagger> = R.
template <class T> T ct_expect(const MultiPermutation& a, const TensorCov<T>& r) {
    int n = a.degree(), D = a.order(), N = r.N;
    if (n > 4) throw resource_error("ct_expect: degree exceeds oracle budget");
    if (n == 0) return scalar_traits<T>::one();
    std::int64_t states = 1;
    for (int j = 0; j < n * D; ++j) {
        states *= N;
        if (states > kInvariantBudget) throw resource_error("ct_expect: index budget exceeded");
    }
    std::vector<Permutation> inv;
    for (int c = 0; c < D; ++c) inv.push_back(a.component(c).inverse());
    const TOp<T>& R = r.dense;

    T total = scalar_traits<T>::zero();
    std::vector<int> row(D), acted(D);
    for (const auto& pi : enumerate_sn(n)) {
        std::vector<int> k(size_t(n) * D, 0);
        T psum = scalar_traits<T>::zero();
        while (true) {
            T term = scalar_traits<T>::one();
            for (int i = 0; i < n && !is_zero(term); ++i) {
                // phi^dagger slot i pairs with phi slot pi(i)
                for (int j = 0; j < D; ++j) {
                    row[j] = k[size_t(i) * D + j];
                    acted[j] = k[size_t(inv[j](pi(i))) * D + j];
                }
                term *= R.at(encode_multi(acted.data(), D, N), encode_multi(row.data(), D, N));
            }
            psum += term;
            int d = n * D - 1;
            while (d >= 0 && ++k[d] == N) k[d--] = 0;
            if (d < 0) break;
        }
        total += psum;
    }
    return total;
}

// Full moment <X^p> of the order-3 quartic observable
//   X = sum phi^{ijk} phi^{ij'k'} phi^{i'jk'} phi^{i'j'k}
// in the real Gaussian ensemble with <phi^{abc} phi^{a'b'c'}> =
// N^-1 C_{aa'} delta_{bb'} delta_{cc'}; enumeration over all (4p-1)!!
// perfect matchings of the 4p field slots.
template <class T> T rt_moment(int p, int N, const Mat<T>& C) {
    if (p < 0 || p > 2) throw resource_error("rt_moment: power exceeds oracle budget");
    if (N > 3) throw resource_error("rt_moment: dimension exceeds oracle budget");
    if (p == 0) return scalar_traits<T>::one();
    int nf = 4 * p;

    std::vector<std::vector<std::pair<int, int>>> matchings;
    std::vector<std::pair<int, int>> cur;
    std::vector<bool> used(nf, false);
    std::function<void()> rec = [&] {
        int a = 0;
        while (a < nf && used[a]) ++a;
        if (a == nf) {
            matchings.push_back(cur);
            return;
        }
        used[a] = true;
        for (int b = a + 1; b < nf; ++b) {
            if (used[b]) continue;
            used[b] = true;
            cur.emplace_back(a, b);
            rec();
            cur.pop_back();
            used[b] = false;
        }
        used[a] = false;
    };
    rec();

    // Slot w of vertex v carries indices from (i,I,j,J,k,K) of that vertex.
    auto slot_indices = [&](int slot, const int* env) {
        int v = slot / 4, w = slot % 4;
        const int* e = env + 6 * v;  // i,I,j,J,k,K
        int i = e[0], I = e[1], j = e[2], J = e[3], kk = e[4], K = e[5];
        struct Tri { int a, b, c; };
        switch (w) {
            case 0: return Tri{i, j, kk};
            case 1: return Tri{i, J, K};
            case 2: return Tri{I, j, K};
            default: return Tri{I, J, kk};
        }
    };

    T total = scalar_traits<T>::zero();
    int nidx = 6 * p;
    std::vector<int> env(nidx, 0);
    for (const auto& m : matchings) {
        T msum = scalar_traits<T>::zero();
        std::fill(env.begin(), env.end(), 0);
        while (true) {
            T term = scalar_traits<T>::one();
            for (const auto& [s1, s2] : m) {
                auto x = slot_indices(s1, env.data());
                auto y = slot_indices(s2, env.data());
                if (x.b != y.b || x.c != y.c) {
                    term = scalar_traits<T>::zero();
                    break;
                }
                term *= C.at(x.a, y.a);
                if (is_zero(term)) break;
            }
            msum += term;
            int d = nidx - 1;
            while (d >= 0 && ++env[d] == N) env[d--] = 0;
            if (d < 0) break;
        }
        total += msum;
    }
    T ninv = scalar_traits<T>::from_ratio(1, N);
    return total * int_pow(ninv, 2 * p);
}

// m_1..m_K of one observable, in order.
template <class T> using MomentSequence = std::vector<T>;

// Standard single-variable moment -> cumulant inversion, K <= 4.
template <class T> std::vector<T> connected_from_moments(const MomentSequence<T>& m) {
    if (m.size() > 4) throw input_error("connected_from_moments: K exceeds 4");
    std::vector<T> k;
    auto at = [&](size_t j) { return m.at(j - 1); };
    if (m.size() >= 1) k.push_back(at(1));
    if (m.size() >= 2) k.push_back(at(2) - at(1) * at(1));
    if (m.size() >= 3)
        k.push_back(at(3) - scalar_traits<T>::from_int(3) * at(1) * at(2) +
                    scalar_traits<T>::from_int(2) * at(1) * at(1) * at(1));
    if (m.size() >= 4)
        k.push_back(at(4) - scalar_traits<T>::from_int(4) * at(3) * at(1) -
                    scalar_traits<T>::from_int(3) * at(2) * at(2) +
                    scalar_traits<T>::from_int(12) * at(2) * at(1) * at(1) -
                    scalar_traits<T>::from_int(6) * at(1) * at(1) * at(1) * at(1));
    return k;
}

}  // namespace equiv
