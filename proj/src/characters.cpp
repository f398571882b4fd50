#include "equiv/characters.hpp"

#include <mutex>
#include <sstream>

#include "equiv/covariance.hpp"

namespace equiv {

namespace {

// Border-strip recursion on beta-numbers. Removing a strip of length l means
// lowering one beta value by l onto an unoccupied spot; the sign is (-1)^h
// with h the number of occupied values jumped over.
std::int64_t mn_recurse(std::vector<int> beta, const std::vector<int>& mu, size_t mi,
                        std::map<std::pair<std::vector<int>, size_t>, std::int64_t>& memo) {
    if (mi == mu.size()) return 1;
    auto key = std::make_pair(beta, mi);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    int l = mu[mi];
    std::int64_t acc = 0;
    for (size_t r = 0; r < beta.size(); ++r) {
        int target = beta[r] - l;
        if (target < 0) continue;
        bool occupied = false;
        int height = 0;
        for (size_t s = 0; s < beta.size(); ++s) {
            if (s == r) continue;
            if (beta[s] == target) {
                occupied = true;
                break;
            }
            if (beta[s] > target && beta[s] < beta[r]) ++height;
        }
        if (occupied) continue;
        std::vector<int> nb = beta;
        nb[r] = target;
        std::sort(nb.begin(), nb.end(), std::greater<int>());
        std::int64_t sub = mn_recurse(std::move(nb), mu, mi + 1, memo);
        acc += (height % 2 == 0) ? sub : -sub;
    }
    memo[key] = acc;
    return acc;
}

std::vector<int> beta_numbers(const Partition& lam, int slots) {
    std::vector<int> beta(slots, 0);
    for (int r = 0; r < slots; ++r) {
        int part = r < lam.length() ? lam.part(r) : 0;
        beta[r] = part + (slots - 1 - r);
    }
    return beta;
}

}  // namespace

SnCharacterTable::SnCharacterTable(int n) : n_(n), one_type_(std::vector<int>(n, 1)) {
    if (n < 0 || n > 10) throw input_error("character table: degree out of range");
    parts_ = partitions_of(n);
    for (size_t i = 0; i < parts_.size(); ++i) index_[parts_[i]] = int(i);
    values_.assign(parts_.size(), std::vector<std::int64_t>(parts_.size(), 0));
    for (size_t li = 0; li < parts_.size(); ++li) {
        auto beta = beta_numbers(parts_[li], std::max(n, 1));
        for (size_t mi = 0; mi < parts_.size(); ++mi) {
            std::map<std::pair<std::vector<int>, size_t>, std::int64_t> memo;
            values_[li][mi] = mn_recurse(beta, parts_[mi].parts(), 0, memo);
        }
    }
    if (n == 0) {
        parts_ = {Partition(std::vector<int>{})};
        index_.clear();
        index_[parts_[0]] = 0;
        values_ = {{1}};
    }
}

std::int64_t SnCharacterTable::value(const Partition& lam, const Partition& mu) const {
    auto li = index_.find(lam);
    auto mi = index_.find(mu);
    if (li == index_.end() || mi == index_.end())
        throw input_error("character table: partition size mismatch");
    return values_[li->second][mi->second];
}

const SnCharacterTable& SnCharacterTable::instance(int n) {
    static std::mutex mtx;
    static std::map<int, SnCharacterTable> tables;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = tables.find(n);
    if (it == tables.end()) it = tables.emplace(n, SnCharacterTable(n)).first;
    return it->second;
}

std::int64_t sn_character(const Partition& lam, const Partition& mu) {
    if (lam.size() != mu.size()) throw input_error("sn_character: size mismatch");
    return SnCharacterTable::instance(lam.size()).value(lam, mu);
}

VerdictReport schur_weyl_check(const Permutation& sigma, const CMatrix& m, double rel_tol) {
    int n = sigma.degree();
    if (n > m.n) throw input_error("schur_weyl_check: stated form needs n <= N");
    VerdictReport rep;
    rep.suite = "schur-weyl";
    rep.anchors = {"schur-weyl-duality"};
    const auto& table = SnCharacterTable::instance(n);
    Cplx lhs = multi_trace(sigma, m);
    Cplx rhs(0.0, 0.0);
    Partition type = cycle_type(sigma);
    for (const auto& lam : table.partitions())
        rhs += Cplx(double(table.value(lam, type)), 0.0) * gl_character(lam, m);
    std::ostringstream in;
    in << "n=" << n << " type=" << type.str();
    rep.add(make_case_rel(in.str(), lhs, rhs, rel_tol));
    return rep;
}

VerdictReport c1_form_check(const Partition& r, const CMatrix& P, const CMatrix& Q, int N,
                            double rel_tol) {
    VerdictReport rep;
    rep.suite = "character-c1-form";
    rep.anchors = {"character-expectation", "character-c1-form"};
    if (r.size() > N) throw input_error("c1_form_check: representation size must not exceed N");
    CkMatrix c1 = build_ck(1, N);
    Cplx denom = gl_character(r, c1.matrix);
    if (std::abs(denom) < 1e-12) throw domain_error("c1_form_check: chi_r(C_1) vanishes");
    Cplx lhs = gl_character(r, P) * gl_character(r, Q) / denom;
    Cplx rhs = character_expectation(r, P, Q, N);
    rep.add(make_case_rel("r=" + r.str() + " N=" + std::to_string(N), lhs, rhs, rel_tol));
    return rep;
}

VerdictReport cauchy_cm_check(const CMatrix& A, int m, int degree_cap, double rel_tol) {
    int N = A.n;
    if (degree_cap > N) throw input_error("cauchy_cm_check: degree cap must not exceed N");
    if (degree_cap > 6) throw input_error("cauchy_cm_check: degree cap must not exceed 6");
    VerdictReport rep;
    rep.suite = "cauchy-cm";
    rep.anchors = {"cauchy-ck-expansion"};
    CkMatrix cm = build_ck(m, N);
    auto atr = power_traces(A, std::max(degree_cap, m));
    for (int n = 1; n <= degree_cap; ++n) {
        // degree-n Taylor coefficient of exp((N/m) Tr(A^m))
        Cplx lhs(0.0, 0.0);
        if (n % m == 0) {
            int j = n / m;
            Cplx base = Cplx(double(N) / double(m), 0.0) * atr[m];
            lhs = int_pow(base, j) / Cplx(double(factorial(j)), 0.0);
        }
        Cplx rhs(0.0, 0.0);
        for (const auto& r : partitions_of(n)) rhs += gl_character(r, cm.matrix) * gl_character(r, A);
        CaseRecord rec;
        rec.inputs = "degree=" + std::to_string(n);
        rec.lhs = lhs;
        rec.rhs = rhs;
        rec.abs_err = std::abs(lhs - rhs);
        double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
        rec.rel_err = rec.abs_err / scale;
        rec.pass = rec.rel_err <= rel_tol;
        rep.add(rec);
    }
    return rep;
}

}  // namespace equiv
