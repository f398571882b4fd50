#pragma once

#include <string>

#include "equiv/closed_forms.hpp"
#include "equiv/jet.hpp"
#include "equiv/report.hpp"
#include "equiv/wick.hpp"

namespace equiv {

// One interaction term: coefficient * coupling^cpow * (trace invariant).
template <class T> struct PotTerm {
    bool is_matrix = true;
    Permutation sigma;      // matrix-model invariant Tr_[sigma](M^dagger M)
    MultiPermutation bub;   // tensor bubble otherwise
    T coeff = scalar_traits<T>::one();
    int cpow = 1;

    int degree() const { return is_matrix ? sigma.degree() : bub.degree(); }
};

template <class T> struct BubblePotential {
    std::string name;
    std::vector<PotTerm<T>> terms;
    // Evaluate the linked-field side on the order-(D-1) space; set for
    // potentials whose invariants reach the first color only through a
    // partial trace.
    bool reduce = false;
};

// Coefficients c_0..c_K of Z[V]/Z[0] (c_0 = 1) or its log (c_0 = 0).
template <class T> struct RatioSeries {
    std::vector<T> c;
    int order() const { return int(c.size()) - 1; }
};

template <class T> RatioSeries<T> log_of_ratio_series(const RatioSeries<T>& r) {
    size_t len = r.c.size();
    std::vector<T> u(len, scalar_traits<T>::zero());
    for (size_t p = 1; p < len; ++p) u[p] = r.c[p];
    std::vector<T> acc(len, scalar_traits<T>::zero());
    std::vector<T> cur = u;
    int sign = 1;
    for (size_t m = 1; m < len; ++m) {
        T pref = scalar_traits<T>::from_ratio(sign, long(m));
        for (size_t p = m; p < len; ++p) acc[p] += pref * cur[p];
        std::vector<T> next(len, scalar_traits<T>::zero());
        for (size_t p1 = 1; p1 < len; ++p1)
            for (size_t p2 = 1; p1 + p2 < len; ++p2) next[p1 + p2] += cur[p1] * u[p2];
        cur = std::move(next);
        sign = -sign;
    }
    RatioSeries<T> out;
    out.c = std::move(acc);
    return out;
}

// Gauge-reduced invariant: (a_1, ..., a_D) -> a_1^{-1} (a_2, ..., a_D).
inline MultiPermutation reduce_bubble(const MultiPermutation& a) {
    Permutation inv = a.component(0).inverse();
    std::vector<Permutation> comps;
    for (int c = 1; c < a.order(); ++c) comps.push_back(inv * a.component(c));
    return MultiPermutation(std::move(comps));
}

// A pick is one multiset of potential terms from expanding exp(V);
// its invariant is the block direct sum of the chosen invariants.
template <class T> struct Pick {
    T coeff = scalar_traits<T>::one();  // prod_i c_i^{m_i} / m_i!
    int cpow = 0;
    int degree = 0;
    bool is_matrix = true;
    Permutation sigma;
    MultiPermutation bub;
};

template <class T>
void enumerate_picks_rec(const BubblePotential<T>& v, size_t idx, const Pick<T>& cur, int max_cpow,
                         int max_degree, std::vector<Pick<T>>& out) {
    if (idx == v.terms.size()) {
        if (cur.cpow > 0) out.push_back(cur);
        return;
    }
    enumerate_picks_rec(v, idx + 1, cur, max_cpow, max_degree, out);
    const auto& term = v.terms[idx];
    Pick<T> with = cur;
    for (int m = 1;; ++m) {
        if (cur.cpow + m * term.cpow > max_cpow || cur.degree + m * term.degree() > max_degree)
            break;
        with.cpow += term.cpow;
        with.coeff = with.coeff * term.coeff * scalar_traits<T>::from_ratio(1, m);
        if (term.is_matrix) {
            with.sigma = (with.degree == 0) ? term.sigma : dsum(with.sigma, term.sigma);
        } else {
            with.is_matrix = false;
            with.bub = (with.degree == 0) ? term.bub : dsum(with.bub, term.bub);
        }
        with.degree += term.degree();
        enumerate_picks_rec(v, idx + 1, with, max_cpow, max_degree, out);
    }
}

template <class T>
std::vector<Pick<T>> enumerate_picks(const BubblePotential<T>& v, int max_cpow, int max_degree) {
    std::vector<Pick<T>> out;
    enumerate_picks_rec(v, 0, Pick<T>{}, max_cpow, max_degree, out);
    return out;
}

// exp(V) weights per cycle-type class at field degree n for matrix
// potentials: exp(V)|_n = (1/n!) sum_{sigma in S_n} w_[type sigma] Tr_[sigma].
template <class T>
std::map<Partition, T> exp_potential_weights(const BubblePotential<T>& v, int n, int max_cpow = 8) {
    std::map<Partition, T> u;  // coefficient of Tr_lambda
    for (const auto& pick : enumerate_picks(v, max_cpow, n)) {
        if (!pick.is_matrix) throw input_error("exp_potential_weights: matrix potentials only");
        if (pick.degree != n) continue;
        Partition lam = cycle_type(pick.sigma);
        auto [it, fresh] = u.try_emplace(lam, pick.coeff);
        if (!fresh) it->second += pick.coeff;
    }
    std::map<Partition, T> w;
    for (auto& [lam, coeff] : u)
        w.emplace(lam, coeff * scalar_traits<T>::from_int(long(centralizer_order(lam))));
    return w;
}

enum class SeriesSide { ComplexGaussian, LinkedField };

constexpr int kSeriesMaxOrder = 3;
constexpr int kSeriesMaxDegree = 6;

// Coefficients of Z[V]/Z[0] through coupling order K. The complex side sums
// the Gaussian multi-trace formula; the linked-field side applies trace
// derivatives to exp of the logarithmic potential. Identical pick structure
// on both sides makes the comparison coefficient-by-coefficient.
template <class T>
RatioSeries<T> z_ratio_series(const BubblePotential<T>& v, const Mat<T>& P, const Mat<T>& Q,
                              int K, SeriesSide side) {
    if (K > kSeriesMaxOrder) throw resource_error("z_ratio_series: order exceeds budget");
    auto picks = enumerate_picks(v, K, kSeriesMaxDegree);
    RatioSeries<T> out;
    out.c.assign(size_t(K) + 1, scalar_traits<T>::zero());
    out.c[0] = scalar_traits<T>::one();
    int cap = 0;
    for (const auto& p : picks) cap = std::max(cap, p.degree);
    Jet<T> eY;
    if (side == SeriesSide::LinkedField) eY = jet_exp(jet_log_potential_matrix(P, Q, cap));
    for (const auto& pick : picks) {
        T val;
        if (side == SeriesSide::ComplexGaussian) {
            val = dual_weight_sum(pick.sigma, P, Q);
        } else {
            T pref = int_pow(scalar_traits<T>::one() /
                                 (scalar_traits<T>::i() * scalar_traits<T>::from_int(P.n)),
                             pick.degree);
            val = pref * trace_derivative_matrix(pick.sigma, eY, P.n);
        }
        out.c[pick.cpow] += pick.coeff * val;
    }
    return out;
}

template <class T>
RatioSeries<T> z_ratio_series_tensor(const BubblePotential<T>& v, const TensorCov<T>& r, int K,
                                     SeriesSide side) {
    if (K > kSeriesMaxOrder) throw resource_error("z_ratio_series: order exceeds budget");
    auto picks = enumerate_picks(v, K, kSeriesMaxDegree);
    RatioSeries<T> out;
    out.c.assign(size_t(K) + 1, scalar_traits<T>::zero());
    out.c[0] = scalar_traits<T>::one();
    int cap = 0;
    for (const auto& p : picks) cap = std::max(cap, p.degree);
    Jet<T> eY;
    if (side == SeriesSide::LinkedField)
        eY = jet_exp(jet_log_potential_op(r.dense, cap, v.reduce ? r.D - 1 : 0));
    for (const auto& pick : picks) {
        T val;
        if (side == SeriesSide::ComplexGaussian) {
            val = tensor_dual_weight_sum(pick.bub, r);
        } else {
            T pref = int_pow(scalar_traits<T>::one() / scalar_traits<T>::i(), pick.degree);
            MultiPermutation inv_index = v.reduce ? reduce_bubble(pick.bub) : pick.bub;
            val = pref * trace_derivative_op(inv_index, eY, r.N);
        }
        out.c[pick.cpow] += pick.coeff * val;
    }
    return out;
}

// log Z[V]/Z[0] coefficients from moments of a single-term matrix potential:
// f_p = coeff^p kappa_p / p!. Moments come from the pairing oracle by
// default; the closed-form route is available for cross-checks.
template <class T>
RatioSeries<T> free_energy_series_matrix(const Permutation& sigma, const T& vertex_coeff,
                                         const Mat<T>& P, const Mat<T>& Q, int K,
                                         bool use_oracle = true) {
    std::vector<T> moments;
    Permutation op;
    for (int p = 1; p <= K; ++p) {
        op = (p == 1) ? sigma : dsum(op, sigma);
        moments.push_back(use_oracle ? cm_expect(op, P, Q) : dual_weight_sum(op, P, Q));
    }
    auto kappa = connected_from_moments(moments);
    RatioSeries<T> out;
    out.c.assign(size_t(K) + 1, scalar_traits<T>::zero());
    T cp = scalar_traits<T>::one();
    for (int p = 1; p <= K; ++p) {
        cp *= vertex_coeff;
        out.c[p] = cp * kappa[p - 1] * scalar_traits<T>::from_ratio(1, long(factorial(p)));
    }
    return out;
}

template <class T>
VerdictReport series_compare(const RatioSeries<T>& a, const RatioSeries<T>& b, double rel_tol,
                             const std::string& label = "series") {
    if (a.c.size() != b.c.size()) throw input_error("series_compare: length mismatch");
    VerdictReport rep;
    rep.suite = label;
    for (size_t p = 0; p < a.c.size(); ++p) {
        std::string inputs = "order=" + std::to_string(p);
        if constexpr (scalar_traits<T>::exact) {
            rep.add(make_case_exact(inputs, a.c[p], b.c[p]));
        } else {
            rep.add(make_case_rel(inputs, scalar_traits<T>::to_cplx(a.c[p]),
                                  scalar_traits<T>::to_cplx(b.c[p]), rel_tol));
        }
    }
    return rep;
}

// --- Preset potentials -----------------------------------------------------

// Quartic one-coupling matrix potential -(N/2) t Tr((M^dagger M)^2).
template <class T> BubblePotential<T> preset_quartic_matrix(int N) {
    BubblePotential<T> v;
    v.name = "quartic-matrix";
    PotTerm<T> t;
    t.is_matrix = true;
    t.sigma = Permutation::from_cycles(2, {{0, 1}});
    t.coeff = scalar_traits<T>::from_ratio(-N, 2);
    t.cpow = 1;
    v.terms.push_back(std::move(t));
    return v;
}

// Same vertex in the squared-coupling parametrization +(N/2) t^2 Tr((M^dagger M)^2),
// the form with the opposite sign and the coupling entering through its square.
template <class T> BubblePotential<T> preset_quartic_matrix_squared(int N) {
    BubblePotential<T> v;
    v.name = "quartic-matrix-squared";
    PotTerm<T> t;
    t.is_matrix = true;
    t.sigma = Permutation::from_cycles(2, {{0, 1}});
    t.coeff = scalar_traits<T>::from_ratio(N, 2);
    t.cpow = 2;
    v.terms.push_back(std::move(t));
    return v;
}

// Pillow bubbles: a transposition in one color, identity elsewhere; vertex
// weight (N/2) t per color. The reduced flavor routes the linked-field side
// through the order-(D-1) space.
template <class T> BubblePotential<T> preset_pillow(int D, int N, bool reduce) {
    BubblePotential<T> v;
    v.name = reduce ? "low-pillow" : "pillow";
    v.reduce = reduce;
    for (int c = 0; c < D; ++c) {
        PotTerm<T> t;
        t.is_matrix = false;
        std::vector<Permutation> comps(D, Permutation::identity(2));
        comps[c] = Permutation::from_cycles(2, {{0, 1}});
        t.bub = MultiPermutation(std::move(comps));
        t.coeff = scalar_traits<T>::from_ratio(N, 2);
        t.cpow = 1;
        v.terms.push_back(std::move(t));
    }
    return v;
}

// The seven sextic bubbles at D = 3, every coupling tied to one grading
// parameter with weight 1/2.
template <class T> BubblePotential<T> preset_sextic() {
    BubblePotential<T> v;
    v.name = "sextic";
    v.reduce = true;
    auto e = Permutation::identity(3);
    auto cyc = Permutation::from_cycles(3, {{0, 1, 2}});
    auto cyc2 = cyc * cyc;
    auto swap01 = Permutation::from_cycles(3, {{0, 1}});
    auto add = [&](std::vector<Permutation> comps) {
        PotTerm<T> t;
        t.is_matrix = false;
        t.bub = MultiPermutation(std::move(comps));
        t.coeff = scalar_traits<T>::from_ratio(1, 2);
        t.cpow = 1;
        v.terms.push_back(std::move(t));
    };
    add({cyc2, e, e});
    add({e, cyc2, e});
    add({e, e, cyc2});
    add({swap01, e, cyc2});
    add({cyc2, swap01, e});
    add({e, cyc2, swap01});
    add({e, cyc2, cyc});
    return v;
}

}  // namespace equiv
