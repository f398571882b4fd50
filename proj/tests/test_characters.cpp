#include <Eigen/Dense>

#include "doctest.h"
#include "equiv/characters.hpp"
#include "equiv/mc.hpp"
#include "equiv/suites.hpp"

using namespace equiv;

TEST_CASE("trivial and sign rows") {
    for (int n = 1; n <= 6; ++n) {
        Partition sign_label(std::vector<int>(n, 1));
        for (const auto& mu : partitions_of(n)) {
            CHECK(sn_character(Partition({n}), mu) == 1);
            int transpositions = mu.size() - mu.length();
            std::int64_t sgn = (transpositions % 2 == 0) ? 1 : -1;
            CHECK(sn_character(sign_label, mu) == sgn);
        }
    }
}

TEST_CASE("standard representation of S_3") {
    Partition lam({2, 1});
    CHECK(sn_character(lam, Partition({1, 1, 1})) == 2);
    CHECK(sn_character(lam, Partition({2, 1})) == 0);
    CHECK(sn_character(lam, Partition({3})) == -1);
    // row orthogonality fixes these values: sum |C_mu| chi^2 = 3!
    std::int64_t acc = 0;
    for (const auto& mu : partitions_of(3)) {
        std::int64_t v = sn_character(lam, mu);
        acc += std::int64_t(class_size(mu)) * v * v;
    }
    CHECK(acc == 6);
}

TEST_CASE("row orthogonality and dimension sum, n <= 6") {
    for (int n = 1; n <= 6; ++n) {
        const auto& table = SnCharacterTable::instance(n);
        std::int64_t dimsq = 0;
        for (const auto& lam : table.partitions()) {
            CHECK(table.dim(lam) >= 1);
            dimsq += table.dim(lam) * table.dim(lam);
            for (const auto& kap : table.partitions()) {
                std::int64_t acc = 0;
                for (const auto& mu : partitions_of(n))
                    acc += std::int64_t(class_size(mu)) * table.value(lam, mu) * table.value(kap, mu);
                CHECK(acc == (lam == kap ? std::int64_t(factorial(n)) : 0));
            }
        }
        CHECK(dimsq == std::int64_t(factorial(n)));
    }
}

TEST_CASE("column orthogonality, n <= 6") {
    for (int n = 1; n <= 6; ++n) {
        const auto& table = SnCharacterTable::instance(n);
        for (const auto& mu : partitions_of(n))
            for (const auto& nu : partitions_of(n)) {
                std::int64_t acc = 0;
                for (const auto& lam : table.partitions())
                    acc += table.value(lam, mu) * table.value(lam, nu);
                std::int64_t want = (mu == nu) ? std::int64_t(factorial(n) / class_size(mu)) : 0;
                CHECK(acc == want);
            }
    }
}

TEST_CASE("gl_character basics") {
    CMatrix I2 = CMatrix::identity(2);
    CHECK(gl_character(Partition({1}), I2) == Cplx(2.0, 0.0));
    CHECK(std::abs(gl_character(Partition({2}), I2) - Cplx(3.0, 0.0)) < 1e-12);
    CHECK(std::abs(gl_character(Partition({1, 1, 1}), I2)) < 1e-12);  // too many rows

    CMatrix m = random_complex_matrix(3, 7, 1);
    CHECK(std::abs(gl_character(Partition({1}), m) - m.trace()) < 1e-12);
}

TEST_CASE("gl_character conjugation invariance") {
    CMatrix m = random_complex_matrix(3, 11, 2);
    // a deterministic unitary from a QR factorization
    Eigen::MatrixXcd g(3, 3);
    SeededStream rng = SeededStream::make(13, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) g(i, j) = Cplx(rng.uniform01() - 0.5, rng.uniform01() - 0.5);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd u = qr.householderQ();
    CMatrix um(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Cplx acc(0.0, 0.0);
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) acc += u(i, a) * m.at(a, b) * std::conj(u(j, b));
            um.at(i, j) = acc;
        }
    for (const auto& lam : partitions_of(3)) {
        Cplx x = gl_character(lam, m), y = gl_character(lam, um);
        CHECK(std::abs(x - y) <= 1e-10 * std::max(1.0, std::abs(x)));
    }
}

TEST_CASE("gl_character matches diagonal Schur evaluation") {
    // independent route for diagonal arguments: the bialternant ratio
    auto schur_diag = [](const Partition& lam, const std::vector<Cplx>& x) {
        int N = int(x.size());
        Eigen::MatrixXcd num(N, N), den(N, N);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                int lam_j = j < lam.length() ? lam.part(j) : 0;
                num(i, j) = std::pow(x[i], double(lam_j + N - 1 - j));
                den(i, j) = std::pow(x[i], double(N - 1 - j));
            }
        return num.determinant() / den.determinant();
    };
    std::vector<Cplx> x{{0.7, 0.1}, {1.3, -0.4}, {-0.5, 0.9}};
    CMatrix m = CMatrix::diagonal(x);
    for (int n = 1; n <= 4; ++n)
        for (const auto& lam : partitions_of(n)) {
            if (lam.length() > 3) continue;
            Cplx a = gl_character(lam, m);
            Cplx b = schur_diag(lam, x);
            CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)));
        }
}

TEST_CASE("schur_weyl_check across S_n, n <= 3, N = 3") {
    CMatrix m = random_complex_matrix(3, 17, 4);
    for (int n = 1; n <= 3; ++n)
        for (const auto& sigma : enumerate_sn(n)) CHECK(schur_weyl_check(sigma, m).overall);
    CMatrix I3 = CMatrix::identity(3);
    auto rep = schur_weyl_check(Permutation::identity(3), I3);
    CHECK(rep.cases[0].lhs == Cplx(27.0, 0.0));
}

TEST_CASE("character_expectation closed form") {
    // r = [1]: N^-1 Tr(P) Tr(Q)
    CMatrix P = random_int_matrix(4, 5, 6), Q = random_int_matrix(4, 5, 7);
    Cplx lhs = character_expectation(Partition({1}), P, Q, 4);
    CHECK(std::abs(lhs - P.trace() * Q.trace() / 4.0) < 1e-12);

    // r = [1,1], P = Q = I_N: 2! N^-2 (N(N-1)/2)^2 / 1
    int N = 4;
    CMatrix I = CMatrix::identity(N);
    double want = 2.0 / (double(N) * N) * std::pow(N * (N - 1) / 2.0, 2.0);
    CHECK(std::abs(character_expectation(Partition({1, 1}), I, I, N) - want) < 1e-10);
}

TEST_CASE("c1_form_check") {
    int N = 4;
    CMatrix P = random_int_matrix(N, 23, 8), Q = random_int_matrix(N, 23, 9);
    for (int n = 1; n <= 3; ++n)
        for (const auto& r : partitions_of(n)) CHECK(c1_form_check(r, P, Q, N).overall);
    CHECK_THROWS_AS(c1_form_check(Partition({1, 1, 1}), CMatrix::identity(2),
                                  CMatrix::identity(2), 2),
                    input_error);
}

TEST_CASE("cauchy expansion with m = 2") {
    CMatrix A = random_complex_matrix(4, 29, 10);
    auto rep = cauchy_cm_check(A, 2, 4);
    CHECK(rep.overall);
    // odd degrees vanish on both sides
    CHECK(std::abs(rep.cases[0].lhs) < 1e-12);
    CHECK(std::abs(rep.cases[0].rhs) < 1e-12);
    CHECK(std::abs(rep.cases[2].lhs) < 1e-12);

    // degree 2: (N/2) Tr(A^2) equals (N/2)(chi_[2] - chi_[1,1])
    Cplx lhs = 2.0 * (A * A).trace();
    Cplx rhs = 2.0 * (gl_character(Partition({2}), A) - gl_character(Partition({1, 1}), A));
    CHECK(std::abs(lhs - rhs) < 1e-10);
}

TEST_CASE("graded character expansion at other target powers") {
    CMatrix A = random_complex_matrix(4, 31, 11);
    CHECK(cauchy_cm_check(A, 1, 4).overall);
    CHECK(cauchy_cm_check(A, 3, 3).overall);
    CHECK_THROWS_AS(cauchy_cm_check(A, 2, 5), input_error);  // cap beyond N
}
