#include "equiv/mc.hpp"
#include "equiv/wick.hpp"

#include <cmath>
#include <sstream>

namespace equiv {

namespace {
constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;

std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
}
}  // namespace

SeededStream SeededStream::make(std::uint64_t seed, std::uint64_t stream) {
    SeededStream s;
    s.seed = seed;
    s.stream = stream;
    s.counter = 0;
    return s;
}

std::uint64_t SeededStream::next_u64() {
    std::uint64_t key = mix64(seed ^ mix64(stream + 0x5851f42d4c957f2dull));
    return mix64(key + kGamma * ++counter);
}

double SeededStream::uniform01() {
    return (double(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double SeededStream::gaussian() {
    double u = uniform01(), v = uniform01();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * M_PI * v);
}

Cplx SeededStream::gaussian_c() {
    double u = uniform01(), v = uniform01();
    double r = std::sqrt(-std::log(u));
    return {r * std::cos(2.0 * M_PI * v), r * std::sin(2.0 * M_PI * v)};
}

ComplexMatrixSampler::ComplexMatrixSampler(const CovariancePair& pair) : N(pair.N()) {
    auto f = factorize_for_sampling(pair);
    sqrt_q = f.A;
    sqrt_p = f.B;
}

CMatrix ComplexMatrixSampler::draw(SeededStream& rng) const {
    CMatrix g(N);
    for (auto& v : g.a) v = rng.gaussian_c();
    CMatrix m = sqrt_q * g * sqrt_p;
    double scale = 1.0 / std::sqrt(double(N));
    for (auto& v : m.a) v *= scale;
    return m;
}

ComplexTensorSampler::ComplexTensorSampler(const TensorCov<Cplx>& cov)
    : D(cov.D), N(cov.N), dim(cov.dense.dim) {
    sqrt_r = hermitian_sqrt(cov.dense.as_matrix());
}

Tensor<Cplx> ComplexTensorSampler::draw(SeededStream& rng) const {
    Tensor<Cplx> t(D, N);
    std::vector<Cplx> g(dim);
    for (auto& v : g) v = rng.gaussian_c();
    for (int u = 0; u < dim; ++u) {
        Cplx acc(0.0, 0.0);
        for (int l = 0; l < dim; ++l) acc += sqrt_r.at(u, l) * g[l];
        t.a[u] = acc;
    }
    return t;
}

Estimate estimate_observable(const std::function<Cplx(const CMatrix&)>& obs,
                             const ComplexMatrixSampler& sampler, std::uint64_t n_samples,
                             SeededStream rng) {
    Accumulator acc;
    for (std::uint64_t s = 0; s < n_samples; ++s) acc.add(obs(sampler.draw(rng)));
    return acc.estimate();
}

Estimate estimate_observable(const ObservableSpec& obs, const ComplexMatrixSampler& sampler,
                             std::uint64_t n_samples, SeededStream rng) {
    Accumulator acc;
    for (std::uint64_t s = 0; s < n_samples; ++s) {
        CMatrix m = sampler.draw(rng);
        acc.add(obs.evaluate(m.dagger() * m));
    }
    return acc.estimate();
}

Estimate z_ratio_reweighted(const std::function<double(const CMatrix&)>& log_weight,
                            const ComplexMatrixSampler& sampler, std::uint64_t n_samples,
                            SeededStream rng) {
    Accumulator acc;
    for (std::uint64_t s = 0; s < n_samples; ++s) {
        double lw = log_weight(sampler.draw(rng));
        if (lw > 50.0) throw domain_error("z_ratio_reweighted: unbounded weight, rejecting");
        acc.add(Cplx(std::exp(lw), 0.0));
    }
    return acc.estimate();
}

VerdictReport appendix_b_check(const CMatrix& C, double g, int N, std::uint64_t n_samples,
                               std::uint64_t seed, double n_sigmas) {
    if (g < 0.0) throw input_error("appendix_b_check: needs g >= 0");
    VerdictReport rep;
    rep.suite = "appendix-b";
    rep.anchors = {"quartic-variable-change"};
    if (C.n != N) throw input_error("appendix_b_check: C size mismatch");
    for (int i = 0; i < N; ++i)
        if (C.at(i, i).real() <= 0.0 || C.at(i, i).imag() != 0.0)
            throw domain_error("appendix_b_check: C must be positive definite diagonal");

    // Left form: Gaussian exp(-(N/2) Tr M'dag M'), vertex carries C.
    CMatrix two_id = CMatrix::identity(N);
    for (auto& v : two_id.a) v *= 2.0;
    CovariancePair left_pair{two_id, CMatrix::identity(N)};
    ComplexMatrixSampler left(left_pair);
    auto left_weight = [&](const CMatrix& m) {
        CMatrix mm = C * m.dagger() * m;
        return -double(N) * g / 2.0 * (mm * mm).trace().real();
    };
    // Right form: Gaussian exp(-(N/2) Tr C^{-1} Mdag M), plain quartic vertex.
    CMatrix pcov(N);
    for (int i = 0; i < N; ++i) pcov.at(i, i) = 2.0 * C.at(i, i);
    CovariancePair right_pair{pcov, CMatrix::identity(N)};
    ComplexMatrixSampler right(right_pair);
    auto right_weight = [&](const CMatrix& m) {
        CMatrix mm = m.dagger() * m;
        return -double(N) * g / 2.0 * (mm * mm).trace().real();
    };

    Estimate el = z_ratio_reweighted(left_weight, left, n_samples, SeededStream::make(seed, 1));
    Estimate er = z_ratio_reweighted(right_weight, right, n_samples, SeededStream::make(seed, 2));

    CaseRecord rec;
    std::ostringstream in;
    in << "N=" << N << " g=" << g << " samples=" << n_samples;
    rec.inputs = in.str();
    rec.lhs = el.mean;
    rec.rhs = er.mean;
    rec.abs_err = std::abs(el.mean - er.mean);
    double comb = std::sqrt(el.stderr_ * el.stderr_ + er.stderr_ * er.stderr_);
    rec.sigma_distance = comb > 0 ? rec.abs_err / comb : (rec.abs_err == 0 ? 0.0 : INFINITY);
    rec.pass = rec.sigma_distance <= n_sigmas;
    rep.add(rec);
    return rep;
}

}  // namespace equiv
