#include "equiv/closed_forms.hpp"

#include <Eigen/Dense>
#include <mutex>

namespace equiv {

const PairClassTable& PairClassTable::get(const Partition& sigma_type) {
    static std::mutex mtx;
    static std::map<Partition, PairClassTable> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(sigma_type);
    if (it != cache.end()) return it->second;

    PairClassTable table;
    Permutation sigma = class_representative(sigma_type);
    for (const auto& mu : enumerate_sn(sigma_type.size()))
        table.counts_[{cycle_type(mu), cycle_type(mu * sigma)}]++;
    return cache.emplace(sigma_type, std::move(table)).first->second;
}

double quartic_cm_logz(double g, int N) {
    if (g <= -1.0) throw domain_error("quartic_cm_logz: needs g > -1");
    return -0.5 * double(N) * double(N) * std::log1p(g);
}

double quartic_connected_amplitude(int k, int N) {
    double v = 1.0;
    for (int j = 1; j < k; ++j) v *= double(j);
    v *= std::pow(2.0, k - 1);
    v *= std::pow(double(N), double(-2 * k + k + 2));
    return v;
}

double pillow_logz(double lambda, int N) {
    if (lambda >= 1.0 / double(1 + 2 * N)) throw domain_error("pillow_logz: coupling out of range");
    double n2 = double(N) * N;
    return -0.5 * (n2 - 1) * (n2 - 1) * std::log(1.0 - lambda)
           - (n2 - 1) * std::log(1.0 - (1 + N) * lambda)
           - 0.5 * std::log(1.0 - (1 + 2 * N) * lambda);
}

double pillow_det_blocks(double lambda, int N) {
    double n = N;
    double log_neq_neq = n * n * (n - 1) * (n - 1) * std::log(1.0 - lambda);
    double log_eq_neq = n * (n - 1) * ((n - 1) * std::log(1.0 - lambda) + std::log(1.0 - (1 + n) * lambda));
    double log_eq_eq = (n - 1) * (n - 1) * std::log(1.0 - lambda)
                       + 2 * (n - 1) * std::log(1.0 - (1 + n) * lambda)
                       + std::log(1.0 - (1 + 2 * n) * lambda);
    return -0.5 * (log_neq_neq + 2 * log_eq_neq + log_eq_eq);
}

double pillow_det_dense(double lambda, int N) {
    // Quadratic kernel on 4-index objects X^{a2 a3}_{b2 b3}; rows pair an
    // upper and a lower 2-index block.
    int d = N * N;
    int dim = d * d;
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(dim, dim);
    auto idx = [&](int u2, int u3, int l2, int l3) { return ((u2 * N + u3) * N + l2) * N + l3; };
    for (int c2 = 0; c2 < N; ++c2)
        for (int c3 = 0; c3 < N; ++c3)
            for (int d2 = 0; d2 < N; ++d2)
                for (int d3 = 0; d3 < N; ++d3)
                    for (int a2 = 0; a2 < N; ++a2)
                        for (int a3 = 0; a3 < N; ++a3)
                            for (int b2 = 0; b2 < N; ++b2)
                                for (int b3 = 0; b3 < N; ++b3) {
                                    double v = 0.0;
                                    if (c2 == a2 && c3 == a3 && d2 == b2 && d3 == b3) v += 1.0 - lambda;
                                    if (c2 == a2 && b3 == a3 && d2 == b2 && d3 == c3) v -= lambda;
                                    if (b2 == a2 && c3 == a3 && d2 == c2 && d3 == b3) v -= lambda;
                                    if (v != 0.0) C(idx(c2, c3, d2, d3), idx(a2, a3, b2, b3)) = v;
                                }
    // The kernel is real symmetric and positive definite inside the coupling
    // window, so the spectrum gives the log-determinant directly.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(C, Eigen::EigenvaluesOnly);
    double logdet = 0.0;
    for (int i = 0; i < dim; ++i) {
        double ev = es.eigenvalues()(i);
        if (ev <= 0.0) throw domain_error("pillow_det: kernel not positive definite");
        logdet += std::log(ev);
    }
    return -0.5 * logdet;
}

double rt_logz(double lambda, int N) {
    if (std::abs(lambda) >= 1.0) throw domain_error("rt_logz: needs |lambda| < 1");
    double ap = double(N) * (N + 1) / 2.0, am = double(N) * (N - 1) / 2.0;
    return -0.5 * ap * ap * std::log1p(lambda) - 0.5 * am * am * std::log1p(-lambda);
}

double st_logz(double lambda, int N) { return rt_logz(lambda, N); }

double st_det(double lambda, int N) {
    // Kernel 1 + lambda*T on 4-index reals, T swapping the middle slots,
    // restricted to the self-transpose subspace X_{ijkl} = X_{lkji}.
    if (std::abs(lambda) >= 1.0) throw domain_error("st_det: needs |lambda| < 1");
    int dim = N * N * N * N;
    auto pack = [&](int i, int j, int k, int l) { return ((i * N + j) * N + k) * N + l; };
    std::vector<int> tau(dim), swap_mid(dim);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                for (int l = 0; l < N; ++l) {
                    tau[pack(i, j, k, l)] = pack(l, k, j, i);
                    swap_mid[pack(i, j, k, l)] = pack(i, k, j, l);
                }
    // Orthonormal basis of the subspace: singletons u = tau(u), pairs u < tau(u).
    std::vector<std::pair<int, int>> basis;
    for (int u = 0; u < dim; ++u) {
        if (tau[u] == u) basis.emplace_back(u, u);
        else if (u < tau[u]) basis.emplace_back(u, tau[u]);
    }
    int m = int(basis.size());
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(m, m);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    auto coeff = [&](int bi, int u) -> double {
        auto [x, y] = basis[bi];
        double norm = (x == y) ? 1.0 : inv_sqrt2;
        return (u == x || u == y) ? norm : 0.0;
    };
    for (int bj = 0; bj < m; ++bj) {
        auto [x, y] = basis[bj];
        double norm = (x == y) ? 1.0 : inv_sqrt2;
        std::vector<std::pair<int, double>> image;  // (1 + lambda T) applied to basis bj
        auto push = [&](int u, double w) { image.emplace_back(u, w); };
        push(x, norm);
        push(swap_mid[x], lambda * norm);
        if (y != x) {
            push(y, norm);
            push(swap_mid[y], lambda * norm);
        }
        for (int bi = 0; bi < m; ++bi) {
            double v = 0.0;
            for (auto [u, w] : image) v += coeff(bi, u) * w;
            if (v != 0.0) C(bi, bj) = v;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(C, Eigen::EigenvaluesOnly);
    double logdet = 0.0;
    for (int i = 0; i < m; ++i) {
        double ev = es.eigenvalues()(i);
        if (ev <= 0.0) throw domain_error("st_det: kernel not positive definite");
        logdet += std::log(ev);
    }
    return -0.5 * logdet;
}

GaussianReduction gaussian_reduction_params(const CMatrix& P) {
    Eigen::MatrixXcd e(P.n, P.n);
    for (int i = 0; i < P.n; ++i)
        for (int j = 0; j < P.n; ++j) e(i, j) = P.at(i, j);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(e);
    if (std::abs(lu.determinant()) < 1e-12)
        throw domain_error("gaussian_reduction_params: singular kernel matrix");
    Eigen::MatrixXcd inv = lu.inverse();
    GaussianReduction g;
    g.N = P.n;
    g.kernel_p = P;
    g.kernel_p_inv = CMatrix(P.n);
    for (int i = 0; i < P.n; ++i)
        for (int j = 0; j < P.n; ++j) g.kernel_p_inv.at(i, j) = inv(i, j);
    return g;
}

GaussianReductionOp gaussian_reduction_params(const TOp<Cplx>& R, double stiffness) {
    if (stiffness <= 0.0) throw input_error("gaussian_reduction_params: stiffness must be positive");
    Eigen::MatrixXcd e(R.dim, R.dim);
    for (int u = 0; u < R.dim; ++u)
        for (int l = 0; l < R.dim; ++l) e(u, l) = R.at(u, l);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(e);
    if (std::abs(lu.determinant()) < 1e-12)
        throw domain_error("gaussian_reduction_params: singular kernel operator");
    Eigen::MatrixXcd inv = lu.inverse();
    GaussianReductionOp g;
    g.stiffness = stiffness;
    g.kernel_r = R;
    g.kernel_r_inv = TOp<Cplx>(R.D, R.N);
    for (int u = 0; u < R.dim; ++u)
        for (int l = 0; l < R.dim; ++l) g.kernel_r_inv.at(u, l) = inv(u, l);
    return g;
}

double catalan(int m) {
    double v = 1.0;
    for (int j = 0; j < m; ++j) v = v * 2.0 * (2 * j + 1) / double(j + 2);
    return v;
}

}  // namespace equiv
