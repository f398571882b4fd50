#include "doctest.h"
#include "equiv/covariance.hpp"
#include "equiv/mc.hpp"
#include "equiv/suites.hpp"
#include "equiv/tensor.hpp"

using namespace equiv;

namespace {

TOp<Cplx> random_op(int D, int N, std::uint64_t seed) {
    SeededStream rng = SeededStream::make(seed, 101);
    TOp<Cplx> p(D, N);
    for (auto& v : p.a) v = Cplx(2.0 * rng.uniform01() - 1.0, 2.0 * rng.uniform01() - 1.0);
    return p;
}

Tensor<Cplx> random_tensor(int D, int N, std::uint64_t seed) {
    SeededStream rng = SeededStream::make(seed, 102);
    Tensor<Cplx> t(D, N);
    for (auto& v : t.a) v = Cplx(2.0 * rng.uniform01() - 1.0, 2.0 * rng.uniform01() - 1.0);
    return t;
}

}  // namespace

TEST_CASE("multi_trace basics") {
    CMatrix I3 = CMatrix::identity(3);
    CHECK(multi_trace(Permutation::identity(2), I3) == Cplx(9.0, 0.0));
    CMatrix d = CMatrix::diagonal({Cplx(1, 0), Cplx(2, 0)});
    CHECK(multi_trace(Permutation::from_cycles(2, {{0, 1}}), d) == Cplx(5.0, 0.0));

    // homogeneity: Tr_lambda(zM) = z^n Tr_lambda(M)
    CMatrix m = random_complex_matrix(3, 3, 1);
    Cplx z(0.3, -0.8);
    CMatrix zm = m;
    for (auto& v : zm.a) v *= z;
    for (int n = 1; n <= 4; ++n)
        for (const auto& lam : partitions_of(n)) {
            Permutation sigma = class_representative(lam);
            Cplx lhs = multi_trace(sigma, zm);
            Cplx rhs = int_pow(z, n) * multi_trace(sigma, m);
            CHECK(std::abs(lhs - rhs) < 1e-10);
        }
}

TEST_CASE("multi_trace equals its defining sum and is a class function") {
    CMatrix m = random_complex_matrix(3, 5, 2);
    for (int n = 1; n <= 4; ++n)
        for (const auto& sigma : enumerate_sn(n)) {
            Cplx fast = multi_trace(sigma, m);
            Cplx slow = multi_trace_defining_sum(sigma, m);
            CHECK(std::abs(fast - slow) <= 1e-10 * std::max(1.0, std::abs(fast)));
        }
}

TEST_CASE("trace invariant of an operator") {
    // n = 1 identity reduces to the full trace
    auto p = random_op(2, 2, 7);
    auto one = MultiPermutation::identity(2, 1);
    CHECK(std::abs(trace_invariant_naive(one, p) - p.trace()) < 1e-12);

    // D = 1 reduces to the matrix multi-trace with the same permutation
    auto q = random_op(1, 3, 8);
    CMatrix qm = q.as_matrix();
    for (int n = 1; n <= 3; ++n)
        for (const auto& sigma : enumerate_sn(n)) {
            MultiPermutation a(std::vector<Permutation>{sigma});
            Cplx lhs = trace_invariant_naive(a, q);
            Cplx rhs = multi_trace(sigma, qm);
            CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));
        }
}

TEST_CASE("factorized operators contract color by color") {
    std::vector<CMatrix> factors{random_complex_matrix(2, 11, 3), random_complex_matrix(2, 11, 4)};
    auto dense = kron_all(factors);
    auto s2 = enumerate_sn(2);
    for (const auto& a1 : s2)
        for (const auto& a2 : s2) {
            MultiPermutation a(std::vector<Permutation>{a1, a2});
            Cplx lhs = trace_invariant_naive(a, dense);
            Cplx rhs = trace_invariant_factorized(a, factors);
            CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
        }
}

TEST_CASE("pair invariant equals the operator invariant of phi psi^dagger") {
    auto phi = random_tensor(2, 2, 13);
    auto psi = random_tensor(2, 2, 14);
    auto op = outer(phi, psi);
    auto s2 = enumerate_sn(2);
    for (const auto& a1 : s2)
        for (const auto& a2 : s2) {
            MultiPermutation a(std::vector<Permutation>{a1, a2});
            Cplx lhs = trace_invariant_pair(a, psi, phi);
            Cplx rhs = trace_invariant_naive(a, op);
            CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
        }
}

TEST_CASE("pillow bubble against a hand-rolled loop nest") {
    int N = 2, D = 3;
    auto phi = random_tensor(D, N, 15);
    // color-0 pillow: sum over a,b of conj(phi_a) phi^{a with b0} conj(phi_b) phi^{b with a0}
    Cplx direct(0.0, 0.0);
    std::vector<int> ad(D), bd(D), xd(D), yd(D);
    for (int a = 0; a < phi.dim; ++a)
        for (int b = 0; b < phi.dim; ++b) {
            decode_multi(a, D, N, ad.data());
            decode_multi(b, D, N, bd.data());
            xd = ad;
            xd[0] = bd[0];
            yd = bd;
            yd[0] = ad[0];
            direct += conj(phi.a[a]) * phi.a[encode_multi(xd.data(), D, N)] * conj(phi.a[b]) *
                      phi.a[encode_multi(yd.data(), D, N)];
        }
    std::vector<Permutation> comps(D, Permutation::identity(2));
    comps[0] = Permutation::from_cycles(2, {{0, 1}});
    MultiPermutation a(comps);
    Cplx inv = trace_invariant_pair(a, phi, phi);
    CHECK(std::abs(inv - direct) <= 1e-12 * std::max(1.0, std::abs(direct)));
}

TEST_CASE("pair invariants are invariant under left and right distribution") {
    auto phi = random_tensor(2, 2, 16);
    auto s2 = enumerate_sn(2);
    for (const auto& a1 : s2)
        for (const auto& a2 : s2) {
            MultiPermutation a(std::vector<Permutation>{a1, a2});
            Cplx base = trace_invariant_pair(a, phi, phi);
            for (const auto& mu : s2)
                for (const auto& nu : s2) {
                    auto moved = scalar_distribute(mu, scalar_distribute(nu, a, Side::Right));
                    Cplx v = trace_invariant_pair(moved, phi, phi);
                    CHECK(std::abs(v - base) <= 1e-10 * std::max(1.0, std::abs(base)));
                }
        }
}

TEST_CASE("operator invariants under permutation conjugation, n = 2,3") {
    auto p = random_op(2, 2, 17);
    for (int n = 2; n <= 3; ++n) {
        auto sn = enumerate_sn(n);
        for (const auto& a1 : sn)
            for (const auto& a2 : sn) {
                MultiPermutation a(std::vector<Permutation>{a1, a2});
                Cplx base = trace_invariant_naive(a, p);
                for (size_t mi = 0; mi < sn.size(); mi += 2) {
                    const auto& mu = sn[mi];
                    auto conj_a = scalar_distribute(
                        mu, scalar_distribute(mu.inverse(), a, Side::Right));
                    Cplx v = trace_invariant_naive(conj_a, p);
                    CHECK(std::abs(v - base) <= 1e-10 * std::max(1.0, std::abs(base)));
                }
            }
    }
}

TEST_CASE("operator invariants under per-color unitary conjugation") {
    auto p = random_op(2, 2, 23);
    SeededStream rng = SeededStream::make(24, 1);
    // independent rotation with phase per color: U = u0 (x) u1
    auto rot = [&](double th, double ph) {
        CMatrix u(2);
        Cplx z = std::exp(Cplx(0.0, ph));
        u.at(0, 0) = z * std::cos(th);
        u.at(0, 1) = -z * std::sin(th);
        u.at(1, 0) = std::sin(th);
        u.at(1, 1) = std::cos(th);
        return u;
    };
    CMatrix u0 = rot(rng.uniform01(), rng.uniform01());
    CMatrix u1 = rot(rng.uniform01(), rng.uniform01());
    auto U = kron_all({u0, u1});
    auto conj_p =
        TOp<Cplx>::from_matrix(2, 2, U.as_matrix() * p.as_matrix() * U.as_matrix().dagger());
    auto s2 = enumerate_sn(2);
    for (const auto& a1 : s2)
        for (const auto& a2 : s2) {
            MultiPermutation a(std::vector<Permutation>{a1, a2});
            Cplx base = trace_invariant_op(a, p);
            Cplx moved = trace_invariant_op(a, conj_p);
            CHECK(std::abs(moved - base) <= 1e-10 * std::max(1.0, std::abs(base)));
        }
}

TEST_CASE("partial trace") {
    // D = 1 partial trace is the full trace
    auto q = random_op(1, 3, 18);
    auto scalar = partial_trace(0, q);
    CHECK(scalar.D == 0);
    CHECK(std::abs(scalar.at(0, 0) - q.trace()) < 1e-12);

    // factorized case: tracing color 0 of X (x) Y gives Tr(X) Y
    CMatrix X = random_complex_matrix(2, 19, 5), Y = random_complex_matrix(2, 19, 6);
    auto dense = kron_all({X, Y});
    auto traced = partial_trace(0, dense);
    for (int u = 0; u < 2; ++u)
        for (int l = 0; l < 2; ++l)
            CHECK(std::abs(traced.at(u, l) - X.trace() * Y.at(u, l)) < 1e-12);
}

TEST_CASE("gauge identity: pair invariant via partial trace, exhaustive n=2 D=2 N=2") {
    auto phi = random_tensor(2, 2, 20);
    auto op = outer(phi, phi);
    auto s2 = enumerate_sn(2);
    for (const auto& a1 : s2)
        for (const auto& a2 : s2) {
            MultiPermutation a(std::vector<Permutation>{a1, a2});
            Cplx lhs = trace_invariant_pair(a, phi, phi);
            // drop color 0 after multiplying through by its inverse
            auto reduced_perm = a1.inverse() * a2;
            MultiPermutation reduced(std::vector<Permutation>{reduced_perm});
            Cplx rhs = trace_invariant_naive(reduced, partial_trace(0, op));
            CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));
        }
}

TEST_CASE("partial trace commutes with unitary conjugation on remaining colors") {
    auto p = random_op(2, 2, 21);
    // unitary on color 1 only: U = 1 (x) u
    SeededStream rng = SeededStream::make(22, 1);
    double th = rng.uniform01();
    CMatrix u(2);
    u.at(0, 0) = Cplx(std::cos(th), 0.0);
    u.at(0, 1) = Cplx(-std::sin(th), 0.0);
    u.at(1, 0) = Cplx(std::sin(th), 0.0);
    u.at(1, 1) = Cplx(std::cos(th), 0.0);
    auto U = kron_all({CMatrix::identity(2), u});
    Mat<Cplx> conj_full = U.as_matrix() * p.as_matrix() * U.as_matrix().dagger();
    auto conj_op = TOp<Cplx>::from_matrix(2, 2, conj_full);

    auto t1 = partial_trace(0, p);
    auto t2 = partial_trace(0, conj_op);
    // tracing color 0 of (1 x u) P (1 x u)^dag equals u Tr_0(P) u^dag
    Mat<Cplx> expect = u * t1.as_matrix() * u.dagger();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(std::abs(t2.at(i, j) - expect.at(i, j)) < 1e-10);
}

TEST_CASE("logarithmic potential: closed form vs series") {
    int N = 2;
    CMatrix Q = random_complex_matrix(N, 23, 7);
    CMatrix P = random_complex_matrix(N, 23, 8);
    CMatrix B = random_complex_matrix(N, 23, 9);
    for (auto& v : B.a) v *= 0.05;  // keep the spectral radius small
    Cplx closed = log_potential_eval(Q, P, B);
    Cplx series = log_potential_series(Q, P, B, 24);
    CHECK(std::abs(closed - series) <= 1e-10 * std::max(1.0, std::abs(closed)));

    CMatrix zero(N);
    CHECK(std::abs(log_potential_eval(Q, P, zero)) < 1e-14);
}

TEST_CASE("rigidity weight keeps only the quadratic series term, exact") {
    // Q = diag(1,-1): power traces vanish at odd k and equal 2 at even k, so
    // with a degree-3 truncation only k = 2 contributes.
    RMatrix Q = RMatrix::diagonal({CRat(1), CRat(-1)});
    RMatrix P = RMatrix::identity(2);
    RMatrix B(2);
    B.at(0, 0) = CRat(1);
    B.at(0, 1) = CRat(2);
    B.at(1, 0) = CRat(Rational(1), Rational(3));
    B.at(1, 1) = CRat(-1);
    CRat v3 = log_potential_series(Q, P, B, 3);
    RMatrix BB = B * B;
    CRat want = CRat(-1) * BB.trace();  // (i^2/2) * 2 * Tr((PB)^2)
    CHECK(v3 == want);
}

TEST_CASE("tensor log potential agrees with the matrix embedding at D = 2") {
    int N = 2;
    CMatrix Q = random_complex_matrix(N, 29, 1);
    CMatrix Phat = random_complex_matrix(N, 29, 2);
    CMatrix Psihat = random_complex_matrix(N, 29, 3);
    for (auto& v : Psihat.a) v *= 0.05;
    // R = Q (x) Phat, Psi = 1 (x) Psihat reproduces the two-factor series
    auto R = kron_all({Q, Phat});
    auto Psi = kron_all({CMatrix::identity(N), Psihat});
    Cplx lhs = log_potential_tensor(R, Psi);
    Cplx rhs = log_potential_eval(Q, Phat, Psihat);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));

    TOp<Cplx> zero(2, N);
    CHECK(std::abs(log_potential_tensor(R, zero)) < 1e-14);
}

TEST_CASE("self-adjointness flagging") {
    auto phi = random_tensor(2, 2, 33);
    auto op = outer(phi, phi);  // rank-one pairs are self-adjoint
    CHECK(self_adjoint_defect(op) < 1e-15);
    CHECK(assert_self_adjoint(op).flagged);

    auto skew = op;
    skew.at(0, 1) += Cplx(0.0, 0.5);
    CHECK(self_adjoint_defect(skew) > 0.4);
    CHECK_THROWS_AS(assert_self_adjoint(skew), input_error);
}

TEST_CASE("invariant budget is a hard error") {
    auto p = random_op(3, 2, 31);
    CHECK_THROWS_AS(trace_invariant_naive(MultiPermutation::identity(3, 8), p), resource_error);
}
