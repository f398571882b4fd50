#include <algorithm>

#include "doctest.h"
#include "equiv/covariance.hpp"
#include "equiv/mc.hpp"
#include "equiv/suites.hpp"

using namespace equiv;

TEST_CASE("build_ck small cases") {
    // k=2, N=2: eigenvalues {1, -1}
    auto c22 = build_ck(2, 2);
    CHECK(c22.eigenvalues[0] == Cplx(1.0, 0.0));
    CHECK(c22.eigenvalues[1] == Cplx(-1.0, 0.0));

    // k=1, N=2: eigenvalues {1+i, 1-i}
    auto c12 = build_ck(1, 2);
    CHECK(std::abs(c12.eigenvalues[0] - Cplx(1.0, 1.0)) < 1e-10);
    CHECK(std::abs(c12.eigenvalues[1] - Cplx(1.0, -1.0)) < 1e-10);

    // k=2, N=3: {sqrt(3/2), 0, -sqrt(3/2)}; singular at odd N
    auto c23 = build_ck(2, 3);
    double r = std::sqrt(1.5);
    CHECK(std::abs(c23.eigenvalues[0] - Cplx(r, 0.0)) < 1e-10);
    CHECK(std::abs(c23.eigenvalues[1]) < 1e-10);
    CHECK(std::abs(c23.eigenvalues[2] + Cplx(r, 0.0)) < 1e-10);
    CHECK(!ck_invertible(c23));
    CHECK(ck_invertible(c22));

    CHECK_THROWS_AS(build_ck(3, 2), input_error);
}

TEST_CASE("verify_ck residuals") {
    CHECK(verify_ck(build_ck(2, 2)).overall);
    CHECK(verify_ck(build_ck(2, 6)).overall);
    CHECK(verify_ck(build_ck(4, 7)).overall);
    for (int n = 2; n <= 8; ++n) {
        auto rep = verify_ck(build_ck(2, n));
        for (const auto& c : rep.cases) CHECK(c.abs_err <= 1e-8);
    }

    // hand-made counterexample: diag(1,1) against k=2 fails at p=1
    CkMatrix fake;
    fake.N = 2;
    fake.k = 2;
    fake.eigenvalues = {Cplx(1.0, 0.0), Cplx(1.0, 0.0)};
    fake.matrix = CMatrix::diagonal(fake.eigenvalues);
    auto rep = verify_ck(fake);
    CHECK(!rep.overall);
    CHECK(!rep.cases[0].pass);
}

TEST_CASE("convergence criterion") {
    CMatrix I2 = CMatrix::identity(2);
    CHECK(convergence_check({I2, I2}).convergent);

    CMatrix neg = CMatrix::identity(2);
    neg.at(1, 1) = Cplx(-1.0, 0.0);
    auto v = convergence_check({I2, neg});
    CHECK(!v.convergent);
    CHECK(std::abs(v.witness_q - Cplx(-1.0, 0.0)) < 1e-12);
    CHECK(std::abs(v.witness_p - Cplx(1.0, 0.0)) < 1e-12);

    // boundary Re = 0 counts as convergent
    Cplx ph = std::exp(Cplx(0.0, M_PI / 4));
    CMatrix rot(2);
    rot.at(0, 0) = ph;
    rot.at(1, 1) = ph;
    CHECK(convergence_check({rot, rot}).convergent);

    // non-normal input is rejected
    CMatrix bad(2);
    bad.at(0, 1) = Cplx(1.0, 0.0);
    CHECK_THROWS_AS(convergence_check({bad, I2}), input_error);
}

TEST_CASE("convergence is P <-> Q symmetric") {
    SeededStream rng = SeededStream::make(33, 1);
    for (int t = 0; t < 20; ++t) {
        std::vector<Cplx> pe(3), qe(3);
        for (auto& z : pe) z = std::exp(Cplx(0.0, 2.0 * M_PI * rng.uniform01()));
        for (auto& z : qe) z = std::exp(Cplx(0.0, 2.0 * M_PI * rng.uniform01()));
        CovariancePair pq{CMatrix::diagonal(pe), CMatrix::diagonal(qe)};
        CovariancePair qp{CMatrix::diagonal(qe), CMatrix::diagonal(pe)};
        CHECK(convergence_check(pq).convergent == convergence_check(qp).convergent);
    }
}

TEST_CASE("sampler factorization") {
    CMatrix I2 = CMatrix::identity(2);
    auto f = factorize_for_sampling({I2, I2});
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(std::abs(f.A.at(i, j) - (i == j ? 1.0 : 0.0)) < 1e-12);

    CMatrix d = CMatrix::diagonal({Cplx(4.0, 0.0), Cplx(1.0, 0.0)});
    auto fd = factorize_for_sampling({CMatrix::identity(2), d});
    CHECK(std::abs(fd.A.at(0, 0) - 2.0) < 1e-12);
    CHECK(std::abs(fd.A.at(1, 1) - 1.0) < 1e-12);

    CMatrix P = random_pd_matrix(3, 37, 1), Q = random_pd_matrix(3, 37, 2);
    auto fr = factorize_for_sampling({P, Q});
    CMatrix qa = fr.A * fr.A.dagger();
    CMatrix pb = fr.B.dagger() * fr.B;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            CHECK(std::abs(qa.at(i, j) - Q.at(i, j)) < 1e-10);
            CHECK(std::abs(pb.at(i, j) - P.at(i, j)) < 1e-10);
        }

    CMatrix notpd = CMatrix::diagonal({Cplx(1.0, 0.0), Cplx(-1.0, 0.0)});
    CHECK_THROWS_AS(factorize_for_sampling({notpd, I2}), domain_error);
}

TEST_CASE("factorized tensor covariance matches its dense form") {
    std::vector<CMatrix> factors{random_complex_matrix(2, 39, 1), random_complex_matrix(2, 39, 2),
                                 random_complex_matrix(2, 39, 3)};
    auto cov = TensorCov<Cplx>::from_factors(factors, Cplx(0.5, 0.0));
    auto s2 = enumerate_sn(2);
    for (const auto& a1 : s2)
        for (const auto& a2 : s2)
            for (const auto& a3 : s2) {
                MultiPermutation a(std::vector<Permutation>{a1, a2, a3});
                Cplx fast = cov_trace_invariant(a, cov);
                Cplx slow = trace_invariant_naive(a, cov.dense);
                CHECK(std::abs(fast - slow) <= 1e-12 * std::max(1.0, std::abs(slow)));
            }
}
