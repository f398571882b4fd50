#include <Eigen/Dense>
#include <complex>

#include "equiv/tensor.hpp"

namespace equiv {

namespace {

Eigen::MatrixXcd to_eigen(const CMatrix& m) {
    Eigen::MatrixXcd e(m.n, m.n);
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) e(i, j) = m.at(i, j);
    return e;
}

}  // namespace

// log det via LU, taking the principal branch of each pivot's log and summing.
// The branch of the total is therefore fixed by the pivot sequence, which makes
// the evaluator deterministic; callers that exponentiate never see the choice.
Cplx log_det_principal(const CMatrix& m) {
    Eigen::MatrixXcd e = to_eigen(m);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(e);
    Cplx acc(0.0, 0.0);
    const auto& u = lu.matrixLU();
    for (int i = 0; i < u.rows(); ++i) {
        Cplx piv = u(i, i);
        if (piv == Cplx(0.0, 0.0)) throw domain_error("log_det: singular matrix");
        acc += std::log(piv);
    }
    int sign = lu.permutationP().determinant();
    if (sign < 0) acc += Cplx(0.0, M_PI);
    return acc;
}

Cplx log_potential_eval(const CMatrix& Q, const CMatrix& P, const CMatrix& B) {
    if (Q.n != P.n || P.n != B.n) throw input_error("log potential: size mismatch");
    int N = Q.n;
    CMatrix pb = P * B;
    CMatrix m(N * N);  // 1 (x) 1 - i Q (x) (P B)
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            for (int c = 0; c < N; ++c)
                for (int d = 0; d < N; ++d) {
                    Cplx v = (a == b && c == d ? Cplx(1.0, 0.0) : Cplx(0.0, 0.0));
                    v -= Cplx(0.0, 1.0) * Q.at(a, b) * pb.at(c, d);
                    m.at(a * N + c, b * N + d) = v;
                }
    return -log_det_principal(m);
}

Cplx log_potential_tensor(const TOp<Cplx>& R, const TOp<Cplx>& Psi) {
    if (R.dim != Psi.dim) throw input_error("log potential: dimension mismatch");
    CMatrix prod = R.as_matrix() * Psi.as_matrix();
    CMatrix m = CMatrix::identity(R.dim);
    for (size_t i = 0; i < m.a.size(); ++i) m.a[i] -= Cplx(0.0, 1.0) * prod.a[i];
    return -log_det_principal(m);
}

}  // namespace equiv
