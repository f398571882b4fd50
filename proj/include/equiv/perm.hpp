#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace equiv {

// Thrown when an input violates a documented precondition.
struct input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
// Thrown when a request exceeds a configured enumeration/contraction budget.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Thrown on numerically degenerate inputs (singular operator, domain edge).
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Composition convention, fixed once for the whole project:
//   (p*q)(i) = p(q(i)).
// Every permutation-sum formula elsewhere is written against this choice and
// locked by cross-checks between independent evaluation paths.
class Permutation {
  public:
    Permutation() = default;
    explicit Permutation(std::vector<int> images) : img_(std::move(images)) {
        std::vector<bool> seen(img_.size(), false);
        for (int v : img_) {
            if (v < 0 || v >= int(img_.size()) || seen[v])
                throw input_error("permutation images must be a bijection on 0..n-1");
            seen[v] = true;
        }
    }
    static Permutation identity(int n) {
        std::vector<int> im(n);
        std::iota(im.begin(), im.end(), 0);
        return Permutation(std::move(im));
    }
    // Cycle notation helper: from_cycles(3, {{0,1}}) is the transposition (0 1) in S_3.
    static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
        std::vector<int> im(n);
        std::iota(im.begin(), im.end(), 0);
        for (const auto& c : cycles)
            for (size_t j = 0; j < c.size(); ++j) {
                if (c[j] < 0 || c[j] >= n) throw input_error("from_cycles: index out of range");
                im[c[j]] = c[(j + 1) % c.size()];
            }
        return Permutation(std::move(im));
    }

    int degree() const { return int(img_.size()); }
    int operator()(int i) const { return img_[i]; }
    const std::vector<int>& images() const { return img_; }

    Permutation inverse() const {
        std::vector<int> im(img_.size());
        for (int i = 0; i < degree(); ++i) im[img_[i]] = i;
        return Permutation(std::move(im));
    }

    friend Permutation operator*(const Permutation& p, const Permutation& q) {
        if (p.degree() != q.degree()) throw input_error("compose: degree mismatch");
        std::vector<int> im(p.degree());
        for (int i = 0; i < p.degree(); ++i) im[i] = p.img_[q.img_[i]];
        return Permutation(std::move(im));
    }
    friend bool operator==(const Permutation& a, const Permutation& b) { return a.img_ == b.img_; }
    friend bool operator<(const Permutation& a, const Permutation& b) { return a.img_ < b.img_; }

    // Block direct sum: acts as p on 0..n-1 and q shifted to n..n+m-1.
    friend Permutation dsum(const Permutation& p, const Permutation& q) {
        std::vector<int> im = p.img_;
        for (int v : q.img_) im.push_back(v + p.degree());
        return Permutation(std::move(im));
    }

    int n_cycles() const {
        int n = degree(), c = 0;
        std::vector<bool> seen(n, false);
        for (int s = 0; s < n; ++s) {
            if (seen[s]) continue;
            ++c;
            for (int j = s; !seen[j]; j = img_[j]) seen[j] = true;
        }
        return c;
    }

  private:
    std::vector<int> img_;
};

inline Permutation compose(const Permutation& p, const Permutation& q) { return p * q; }

// Weakly decreasing positive parts, sum n.
class Partition {
  public:
    Partition() = default;
    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        std::sort(parts_.begin(), parts_.end(), std::greater<int>());
        for (int p : parts_)
            if (p < 1) throw input_error("partition parts must be positive");
    }
    int size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
    int length() const { return int(parts_.size()); }
    const std::vector<int>& parts() const { return parts_; }
    int part(int j) const { return parts_[j]; }

    friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }
    friend bool operator<(const Partition& a, const Partition& b) { return a.parts_ < b.parts_; }

    std::string str() const {
        std::string s = "[";
        for (size_t j = 0; j < parts_.size(); ++j)
            s += (j ? "," : "") + std::to_string(parts_[j]);
        return s + "]";
    }

  private:
    std::vector<int> parts_;
};

inline Partition cycle_type(const Permutation& p) {
    int n = p.degree();
    std::vector<bool> seen(n, false);
    std::vector<int> parts;
    for (int s = 0; s < n; ++s) {
        if (seen[s]) continue;
        int len = 0;
        for (int j = s; !seen[j]; j = p(j)) {
            seen[j] = true;
            ++len;
        }
        parts.push_back(len);
    }
    return Partition(std::move(parts));
}

inline std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int j = 2; j <= n; ++j) f *= std::uint64_t(j);
    return f;
}

// z_lambda = prod_j m_j! * j^{m_j}; class size is n!/z_lambda.
inline std::uint64_t centralizer_order(const Partition& lam) {
    std::map<int, int> mult;
    for (int p : lam.parts()) mult[p]++;
    std::uint64_t z = 1;
    for (auto [len, m] : mult) {
        for (int j = 1; j <= m; ++j) z *= std::uint64_t(j);
        for (int j = 0; j < m; ++j) z *= std::uint64_t(len);
    }
    return z;
}

inline std::uint64_t class_size(const Partition& lam) {
    return factorial(lam.size()) / centralizer_order(lam);
}

// Canonical class representative: consecutive cycles of the given lengths.
inline Permutation class_representative(const Partition& lam) {
    std::vector<std::vector<int>> cycles;
    int pos = 0;
    for (int len : lam.parts()) {
        std::vector<int> c(len);
        std::iota(c.begin(), c.end(), pos);
        cycles.push_back(std::move(c));
        pos += len;
    }
    return Permutation::from_cycles(lam.size(), cycles);
}

inline std::vector<Partition> partitions_of(int n) {
    std::vector<Partition> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int rem, int maxp) {
        if (rem == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int p = std::min(rem, maxp); p >= 1; --p) {
            cur.push_back(p);
            rec(rem - p, p);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

int max_perm_degree();  // n-bound for full S_n sums; EQUIV_MAX_PERM_DEGREE overrides.

// Every element of S_n exactly once, lexicographic image order.
std::vector<Permutation> enumerate_sn(int n);
// All elements of one conjugacy class.
std::vector<Permutation> enumerate_class(const Partition& lam);

// D-tuple of equal-degree permutations indexing a tensor trace invariant.
class MultiPermutation {
  public:
    MultiPermutation() = default;
    explicit MultiPermutation(std::vector<Permutation> comps) : comps_(std::move(comps)) {
        if (comps_.empty()) throw input_error("multi-permutation needs D >= 1 components");
        for (const auto& c : comps_)
            if (c.degree() != comps_[0].degree())
                throw input_error("multi-permutation components must share one degree");
    }
    static MultiPermutation identity(int D, int n) {
        return MultiPermutation(std::vector<Permutation>(D, Permutation::identity(n)));
    }
    int order() const { return int(comps_.size()); }
    int degree() const { return comps_[0].degree(); }
    const Permutation& component(int c) const { return comps_[c]; }
    const std::vector<Permutation>& components() const { return comps_; }

    MultiPermutation dropped(int c) const {
        std::vector<Permutation> out;
        for (int j = 0; j < order(); ++j)
            if (j != c) out.push_back(comps_[j]);
        return MultiPermutation(std::move(out));
    }

    friend bool operator==(const MultiPermutation& a, const MultiPermutation& b) {
        return a.comps_ == b.comps_;
    }

    friend MultiPermutation dsum(const MultiPermutation& a, const MultiPermutation& b) {
        if (a.order() != b.order()) throw input_error("dsum: order mismatch");
        std::vector<Permutation> out;
        for (int c = 0; c < a.order(); ++c) out.push_back(dsum(a.comps_[c], b.comps_[c]));
        return MultiPermutation(std::move(out));
    }

  private:
    std::vector<Permutation> comps_;
};

enum class Side { Left, Right };

// mu*a = (mu a_1, ..., mu a_D) and a*mu componentwise.
inline MultiPermutation scalar_distribute(const Permutation& mu, const MultiPermutation& a,
                                          Side side = Side::Left) {
    if (mu.degree() != a.degree()) throw input_error("scalar_distribute: degree mismatch");
    std::vector<Permutation> comps;
    for (int c = 0; c < a.order(); ++c)
        comps.push_back(side == Side::Left ? mu * a.component(c) : a.component(c) * mu);
    return MultiPermutation(std::move(comps));
}

// n x D array of indices in 0..N-1; row i is the multi-index of slot i.
struct IndexArray {
    int n = 0, D = 0;
    std::vector<int> k;  // row-major, k[i*D + j]

    IndexArray() = default;
    IndexArray(int n_, int D_) : n(n_), D(D_), k(size_t(n_) * D_, 0) {}
    int& at(int i, int j) { return k[size_t(i) * D + j]; }
    int at(int i, int j) const { return k[size_t(i) * D + j]; }
    friend bool operator==(const IndexArray& a, const IndexArray& b) {
        return a.n == b.n && a.D == b.D && a.k == b.k;
    }
};

// (a_* k)_{ij} = k_{alpha_j^{-1}(i), j}: component j permutes the slot index.
inline IndexArray act_on_index_array(const MultiPermutation& a, const IndexArray& arr) {
    if (a.degree() != arr.n || a.order() != arr.D)
        throw input_error("act_on_index_array: shape mismatch");
    IndexArray out(arr.n, arr.D);
    std::vector<Permutation> inv;
    for (int c = 0; c < a.order(); ++c) inv.push_back(a.component(c).inverse());
    for (int i = 0; i < arr.n; ++i)
        for (int j = 0; j < arr.D; ++j) out.at(i, j) = arr.at(inv[j](i), j);
    return out;
}

}  // namespace equiv
