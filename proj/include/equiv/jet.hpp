#pragma once

#include <cstdint>
#include <unordered_map>

#include "equiv/covariance.hpp"
#include "equiv/matrix.hpp"
#include "equiv/perm.hpp"

namespace equiv {

// Monomial over operator-entry variables: sorted variable ids, one entry per
// degree unit, so {3,3,7} = x3^2 x7.
using Mono = std::vector<std::uint32_t>;

struct MonoHash {
    size_t operator()(const Mono& m) const {
        size_t h = 1469598103934665603ull;
        for (auto v : m) {
            h ^= v + 0x9e3779b9;
            h *= 1099511628211ull;
        }
        return h;
    }
};

constexpr int kJetMaxVars = 4096;
constexpr int kJetMaxCap = 6;

// Multivariate polynomial truncated at a fixed total degree. Sparse: the
// monomial count stays small because every term descends from traces of
// small operator words.
template <class T> struct Jet {
    int nvars = 0;
    int cap = 0;
    std::unordered_map<Mono, T, MonoHash> terms;

    Jet() = default;
    Jet(int nvars_, int cap_) : nvars(nvars_), cap(cap_) {
        if (nvars_ > kJetMaxVars || cap_ > kJetMaxCap)
            throw resource_error("jet: variable count or degree cap exceeds budget");
    }

    static Jet constant(int nvars, int cap, const T& c) {
        Jet j(nvars, cap);
        if (!is_zero(c)) j.terms.emplace(Mono{}, c);
        return j;
    }

    void add_term(Mono m, const T& c) {
        if (int(m.size()) > cap || is_zero(c)) return;
        auto [it, fresh] = terms.try_emplace(std::move(m), c);
        if (!fresh) {
            it->second += c;
            if (is_zero(it->second)) terms.erase(it);
        }
    }

    T constant_term() const {
        auto it = terms.find(Mono{});
        return it == terms.end() ? scalar_traits<T>::zero() : it->second;
    }

    Jet& operator+=(const Jet& o) {
        for (const auto& [m, c] : o.terms) add_term(m, c);
        return *this;
    }

    Jet scaled(const T& s) const {
        Jet r(nvars, cap);
        if (is_zero(s)) return r;
        for (const auto& [m, c] : terms) r.terms.emplace(m, c * s);
        return r;
    }

    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r(a.nvars, a.cap);
        Mono merged;
        for (const auto& [ma, ca] : a.terms)
            for (const auto& [mb, cb] : b.terms) {
                if (int(ma.size() + mb.size()) > r.cap) continue;
                merged.resize(ma.size() + mb.size());
                std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(), merged.begin());
                r.add_term(merged, ca * cb);
            }
        return r;
    }

    // Formal partial derivative with respect to one variable.
    Jet derivative(std::uint32_t var) const {
        Jet r(nvars, cap);
        for (const auto& [m, c] : terms) {
            auto lo = std::lower_bound(m.begin(), m.end(), var);
            if (lo == m.end() || *lo != var) continue;
            long mult = std::count(lo, m.end(), var);
            Mono dm;
            dm.reserve(m.size() - 1);
            dm.insert(dm.end(), m.begin(), lo);
            dm.insert(dm.end(), lo + 1, m.end());
            r.add_term(std::move(dm), c * scalar_traits<T>::from_int(mult));
        }
        return r;
    }
};

// exp of a jet with vanishing constant term; exact below the cap.
template <class T> Jet<T> jet_exp(const Jet<T>& y) {
    if (!is_zero(y.constant_term())) throw input_error("jet_exp: nonzero constant term");
    Jet<T> result = Jet<T>::constant(y.nvars, y.cap, scalar_traits<T>::one());
    Jet<T> power = Jet<T>::constant(y.nvars, y.cap, scalar_traits<T>::one());
    for (int m = 1; m <= y.cap; ++m) {
        power = power * y;
        if (power.terms.empty()) break;
        result += power.scaled(scalar_traits<T>::from_ratio(1, long(factorial(m))));
    }
    return result;
}

// --- Variable layout -------------------------------------------------------
// Matrix field B on N x N:      var(B_{ij})     = i*N + j.
// Operator field Psi on d x d:  var(Psi^u_l)    = u*d + l.

// Y[P,Q](B) = sum_{k<=cap} (i^k/k) Tr(Q^k) Tr((P B)^k) with B symbolic.
template <class T> Jet<T> jet_log_potential_matrix(const Mat<T>& P, const Mat<T>& Q, int cap) {
    int N = P.n;
    Jet<T> y(N * N, cap);
    auto qtr = power_traces(Q, std::max(cap, 1));
    // Word sum over a_1..a_k, b_1..b_k of prod_t P_{a_t b_t} B_{b_t a_{t+1}}.
    for (int k = 1; k <= cap; ++k) {
        if (is_zero(qtr[k])) continue;
        T pref = ipow<T>(k) * scalar_traits<T>::from_ratio(1, k) * qtr[k];
        std::vector<int> a(k, 0), b(k, 0);
        Mono mono(k);
        std::function<void(int, T)> rec = [&](int t, T coeff) {
            if (t == k) {
                for (int s = 0; s < k; ++s) mono[s] = std::uint32_t(b[s] * N + a[(s + 1) % k]);
                std::sort(mono.begin(), mono.end());
                y.add_term(mono, coeff * pref);
                return;
            }
            for (a[t] = 0; a[t] < N; ++a[t])
                for (b[t] = 0; b[t] < N; ++b[t]) {
                    const T& pv = P.at(a[t], b[t]);
                    if (is_zero(pv)) continue;
                    rec(t + 1, coeff * pv);
                }
        };
        rec(0, scalar_traits<T>::one());
    }
    return y;
}

// Y[R](Psi) = sum_{k<=cap} (i^k/k) Tr((R Psi)^k) on the full N^D space, or
// the reduced form with Psi-hat living on colors 1..D-1 when hat_colors > 0:
//   sum_k (i^k/k) Tr((R (1 (x) Psi-hat))^k).
template <class T> Jet<T> jet_log_potential_op(const TOp<T>& R, int cap, int hat_colors = 0) {
    int dim = R.dim;
    int hat_dim = hat_colors > 0 ? int(int_power(R.N, hat_colors)) : dim;
    Jet<T> y(hat_dim * hat_dim, cap);

    // Sparse row structure of R.
    std::vector<std::vector<std::pair<int, const T*>>> rows(dim);
    for (int u = 0; u < dim; ++u)
        for (int l = 0; l < dim; ++l)
            if (!is_zero(R.at(u, l))) rows[u].emplace_back(l, &R.at(u, l));

    for (int k = 1; k <= cap; ++k) {
        T pref = ipow<T>(k) * scalar_traits<T>::from_ratio(1, k);
        std::vector<int> A(k, 0), B(k, 0);
        Mono mono(k);
        // Choose (A_t, B_t) from nonzero entries of R; the field factor links
        // B_t to A_{t+1}: full mode needs nothing more, reduced mode forces
        // the identity on the leading block and uses only the trailing part.
        std::function<void(int, T)> rec = [&](int t, T coeff) {
            if (t == k) {
                bool ok = true;
                for (int s = 0; s < k && ok; ++s) {
                    int from = B[s], to = A[(s + 1) % k];
                    if (hat_colors > 0 && from / hat_dim != to / hat_dim) ok = false;
                }
                if (!ok) return;
                for (int s = 0; s < k; ++s) {
                    int from = B[s] % (hat_colors > 0 ? hat_dim : dim);
                    int to = A[(s + 1) % k] % (hat_colors > 0 ? hat_dim : dim);
                    mono[s] = std::uint32_t(from * hat_dim + to);
                }
                std::sort(mono.begin(), mono.end());
                y.add_term(mono, coeff * pref);
                return;
            }
            for (int a = 0; a < dim; ++a)
                for (const auto& [l, pv] : rows[a]) {
                    A[t] = a;
                    B[t] = l;
                    rec(t + 1, coeff * (*pv));
                }
        };
        rec(0, scalar_traits<T>::one());
    }
    return y;
}

// --- Derivative application ------------------------------------------------

// Accumulated count of each derivative-variable multiset over all index
// arrays; applying the derivatives to exp(Y) at 0 then reduces to one pass
// over the degree-n monomials.
class SignatureCounts {
  public:
    void add(Mono signature) { counts_[std::move(signature)] += 1; }

    template <class T> T contract(const Jet<T>& jet) const {
        T acc = scalar_traits<T>::zero();
        for (const auto& [mono, count] : counts_) {
            auto it = jet.terms.find(mono);
            if (it == jet.terms.end()) continue;
            long mult = 1;
            for (size_t s = 0; s < mono.size();) {
                size_t e = s;
                while (e < mono.size() && mono[e] == mono[s]) ++e;
                mult *= long(factorial(int(e - s)));
                s = e;
            }
            acc += scalar_traits<T>::from_int(long(count) * mult) * it->second;
        }
        return acc;
    }

  private:
    std::unordered_map<Mono, std::uint64_t, MonoHash> counts_;
};

// Tr_[sigma](d/dB) applied to the jet and evaluated at 0 (no normalization).
template <class T> T trace_derivative_matrix(const Permutation& sigma, const Jet<T>& jet, int N) {
    int n = sigma.degree();
    SignatureCounts sig;
    std::vector<int> k(n, 0);
    Mono mono(n);
    while (true) {
        for (int i = 0; i < n; ++i) mono[i] = std::uint32_t(k[sigma(i)] * N + k[i]);
        std::sort(mono.begin(), mono.end());
        sig.add(mono);
        int d = n - 1;
        while (d >= 0 && ++k[d] == N) k[d--] = 0;
        if (d < 0) break;
    }
    return sig.contract(jet);
}

// Tr_[a](d/dPsi) applied to the jet over the d x d operator space whose base
// dimension per color is N and order is a.order().
template <class T> T trace_derivative_op(const MultiPermutation& a, const Jet<T>& jet, int N) {
    int n = a.degree(), D = a.order();
    int dim = int(int_power(N, D));
    std::vector<Permutation> inv;
    for (int c = 0; c < D; ++c) inv.push_back(a.component(c).inverse());
    SignatureCounts sig;
    std::vector<int> k(size_t(n) * D, 0);
    std::vector<int> row(D), acted(D);
    Mono mono(n);
    while (true) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < D; ++j) {
                row[j] = k[size_t(i) * D + j];
                acted[j] = k[size_t(inv[j](i)) * D + j];
            }
            // d/dPsi^{k_i}_{(a_* k)_i}
            mono[i] = std::uint32_t(encode_multi(row.data(), D, N) * dim +
                                    encode_multi(acted.data(), D, N));
        }
        std::sort(mono.begin(), mono.end());
        sig.add(mono);
        int d = n * D - 1;
        while (d >= 0 && ++k[d] == N) k[d--] = 0;
        if (d < 0) break;
    }
    return sig.contract(jet);
}

// <Tr_[sigma](A)> in the linearly coupled two-matrix ensemble with auxiliary
// potential Y[P,Q]: (iN)^{-n} Tr_[sigma](d/dB) e^{Y}|_0.
template <class T> T hm_expect(const Permutation& sigma, const Mat<T>& P, const Mat<T>& Q, int cap = -1) {
    int n = sigma.degree(), N = P.n;
    if (cap < 0) cap = n;
    if (cap < n) throw input_error("hm_expect: jet cap below observable degree");
    Jet<T> eY = jet_exp(jet_log_potential_matrix(P, Q, cap));
    T val = trace_derivative_matrix(sigma, eY, N);
    T pref = int_pow(scalar_traits<T>::one() / (scalar_traits<T>::i() * scalar_traits<T>::from_int(N)), n);
    return pref * val;
}

// Tensor version, i^{-n} normalization.
template <class T> T ht_expect(const MultiPermutation& a, const TensorCov<T>& r, int cap = -1) {
    int n = a.degree();
    if (cap < 0) cap = n;
    if (cap < n) throw input_error("ht_expect: jet cap below observable degree");
    Jet<T> eY = jet_exp(jet_log_potential_op(r.dense, cap));
    T val = trace_derivative_op(a, eY, r.N);
    T pref = int_pow(scalar_traits<T>::one() / scalar_traits<T>::i(), n);
    return pref * val;
}

// Reduced-order version: invariants of the order-(D-1) field with the
// identity carried on the leading color inside the potential.
template <class T> T ht_expect_reduced(const MultiPermutation& a_hat, const TensorCov<T>& r, int cap = -1) {
    int n = a_hat.degree();
    if (cap < 0) cap = n;
    if (cap < n) throw input_error("ht_expect_reduced: jet cap below observable degree");
    Jet<T> eY = jet_exp(jet_log_potential_op(r.dense, cap, r.D - 1));
    T val = trace_derivative_op(a_hat, eY, r.N);
    T pref = int_pow(scalar_traits<T>::one() / scalar_traits<T>::i(), n);
    return pref * val;
}

// Full <A_{ij} A_{kl}> table from second derivatives of e^Y at 0:
//   -N^{-2} d^2 e^Y / dB_{ji} dB_{lk}.
template <class T> std::vector<T> two_point_from_y_matrix(const Jet<T>& eY, int N) {
    std::vector<T> table(size_t(N) * N * N * N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            Jet<T> d1 = eY.derivative(std::uint32_t(j * N + i));
            for (int k = 0; k < N; ++k)
                for (int l = 0; l < N; ++l) {
                    T v = d1.derivative(std::uint32_t(l * N + k)).constant_term();
                    T pref = scalar_traits<T>::from_ratio(-1, long(N) * N);
                    table[((size_t(i) * N + j) * N + k) * N + l] = pref * v;
                }
        }
    return table;
}

// Tensor analog: <Phi^a_b Phi^c_d> = - d^2 e^Y / dPsi^b_a dPsi^d_c at 0.
template <class T> std::vector<T> two_point_from_y_op(const Jet<T>& eY, int dim) {
    std::vector<T> table(size_t(dim) * dim * dim * dim);
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
            Jet<T> d1 = eY.derivative(std::uint32_t(b * dim + a));
            for (int c = 0; c < dim; ++c)
                for (int d = 0; d < dim; ++d) {
                    T v = d1.derivative(std::uint32_t(d * dim + c)).constant_term();
                    table[((size_t(a) * dim + b) * dim + c) * dim + d] = -v;
                }
        }
    return table;
}

}  // namespace equiv
