#include "equiv/covariance.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <sstream>

namespace equiv {

namespace {

Eigen::MatrixXcd to_eigen(const CMatrix& m) {
    Eigen::MatrixXcd e(m.n, m.n);
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) e(i, j) = m.at(i, j);
    return e;
}

CMatrix from_eigen(const Eigen::MatrixXcd& e) {
    CMatrix m(int(e.rows()));
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) m.at(i, j) = e(i, j);
    return m;
}

double normality_defect(const CMatrix& m) {
    Eigen::MatrixXcd e = to_eigen(m);
    return (e * e.adjoint() - e.adjoint() * e).cwiseAbs().maxCoeff();
}

std::vector<Cplx> sorted_eigenvalues(const CMatrix& m) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(to_eigen(m), false);
    std::vector<Cplx> ev(m.n);
    for (int i = 0; i < m.n; ++i) ev[i] = es.eigenvalues()(i);
    std::sort(ev.begin(), ev.end(), [](const Cplx& a, const Cplx& b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
    return ev;
}

}  // namespace

CkMatrix build_ck(int k, int N) {
    if (k < 1 || k > N || N > 12) throw input_error("build_ck: need 1 <= k <= N <= 12");
    // Newton's identities with p_j = N*delta_{jk} give j e_j = (-1)^{k-1} N e_{j-k}.
    std::vector<double> e(size_t(N) + 1, 0.0);
    e[0] = 1.0;
    double sign = (k % 2 == 1) ? 1.0 : -1.0;
    for (int j = 1; j <= N; ++j)
        if (j >= k) e[j] = sign * double(N) * e[j - k] / double(j);

    // Companion matrix of x^N + sum_j (-1)^j e_j x^{N-j}, roots = eigenvalues.
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(N, N);
    for (int i = 1; i < N; ++i) comp(i, i - 1) = 1.0;
    for (int j = 1; j <= N; ++j) {
        double cj = ((j % 2 == 0) ? 1.0 : -1.0) * e[j];  // coefficient of x^{N-j}
        comp(N - j, N - 1) = -cj;
    }

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    if (es.info() != Eigen::Success) throw domain_error("build_ck: eigenvalue solver failed");

    CkMatrix out;
    out.N = N;
    out.k = k;
    out.eigenvalues.resize(N);
    for (int i = 0; i < N; ++i) out.eigenvalues[i] = es.eigenvalues()(i);
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), [](const Cplx& a, const Cplx& b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
    // Snap values that are exact by construction (k=2 at even small N gives +-1 patterns).
    for (auto& v : out.eigenvalues) {
        if (std::abs(v.imag()) < 1e-12) v = Cplx(v.real(), 0.0);
        double r = std::round(v.real());
        if (std::abs(v.real() - r) < 1e-12) v = Cplx(r, v.imag());
        double ri = std::round(v.imag());
        if (std::abs(v.imag() - ri) < 1e-12) v = Cplx(v.real(), ri);
    }
    out.matrix = CMatrix::diagonal(out.eigenvalues);
    return out;
}

VerdictReport verify_ck(const CkMatrix& c, double tol) {
    VerdictReport rep;
    rep.suite = "verify-ck";
    rep.anchors = {"ck-power-sums"};
    auto ptr = power_traces(c.matrix, c.N);
    for (int p = 1; p <= c.N; ++p) {
        Cplx want = (p == c.k) ? Cplx(double(c.N), 0.0) : Cplx(0.0, 0.0);
        CaseRecord rec;
        rec.inputs = "p=" + std::to_string(p);
        rec.lhs = ptr[p];
        rec.rhs = want;
        rec.abs_err = std::abs(ptr[p] - want);
        rec.pass = rec.abs_err <= tol;
        rep.add(rec);
    }
    return rep;
}

bool ck_invertible(const CkMatrix& c, double tol) {
    for (const auto& v : c.eigenvalues)
        if (std::abs(v) <= tol) return false;
    return true;
}

ConvergenceVerdict convergence_check(const CovariancePair& pair, double normality_tol) {
    if (pair.P.n != pair.Q.n) throw input_error("convergence_check: size mismatch");
    if (normality_defect(pair.P) > normality_tol || normality_defect(pair.Q) > normality_tol)
        throw input_error("convergence_check: inputs must be normal matrices");
    auto pe = sorted_eigenvalues(pair.P);
    auto qe = sorted_eigenvalues(pair.Q);
    ConvergenceVerdict v;
    v.convergent = true;
    for (const auto& q : qe)
        for (const auto& p : pe)
            if ((q * p).real() < -1e-12) {
                v.convergent = false;
                v.witness_q = q;
                v.witness_p = p;
                return v;
            }
    return v;
}

CMatrix hermitian_sqrt(const CMatrix& m, double pd_tol) {
    Eigen::MatrixXcd e = to_eigen(m);
    if ((e - e.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw domain_error("hermitian_sqrt: input not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(e);
    for (int i = 0; i < m.n; ++i)
        if (es.eigenvalues()(i) < pd_tol)
            throw domain_error("hermitian_sqrt: input not positive definite");
    Eigen::MatrixXcd s = es.operatorSqrt();
    return from_eigen(s);
}

SamplerFactors factorize_for_sampling(const CovariancePair& pair, double pd_tol) {
    SamplerFactors f;
    f.A = hermitian_sqrt(pair.Q, pd_tol);
    f.B = hermitian_sqrt(pair.P, pd_tol);
    return f;
}

}  // namespace equiv
