#pragma once

#include <cstdint>
#include <functional>

#include "equiv/covariance.hpp"
#include "equiv/report.hpp"
#include "equiv/tensor.hpp"

namespace equiv {

// Counter-based stream: word j of stream (seed, idx) is a fixed mix of
// (key + j*gamma), so draws are reproducible and streams split freely
// across workers without coordination.
struct SeededStream {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    std::uint64_t counter = 0;

    static constexpr const char* algorithm = "splitmix64/box-muller";

    static SeededStream make(std::uint64_t seed, std::uint64_t stream = 0);
    SeededStream split(std::uint64_t idx) const { return make(seed, stream * 0x100000001ull + idx + 1); }

    std::uint64_t next_u64();
    double uniform01();   // in (0, 1]
    double gaussian();    // real standard normal
    Cplx gaussian_c();    // complex, E|z|^2 = 1
};

struct Estimate {
    Cplx mean{0.0, 0.0};
    double stderr_ = 0.0;
    std::uint64_t n = 0;
};

// Single-pass accumulator over complex samples; spread is tracked through
// |x - running mean|^2 so merging stays associative in the usual way.
struct Accumulator {
    std::uint64_t n = 0;
    Cplx mean{0.0, 0.0};
    double m2 = 0.0;

    void add(Cplx x) {
        ++n;
        Cplx delta = x - mean;
        mean += delta / double(n);
        m2 += (delta * std::conj(x - mean)).real();
    }
    void merge(const Accumulator& o) {
        if (o.n == 0) return;
        if (n == 0) {
            *this = o;
            return;
        }
        Cplx delta = o.mean - mean;
        std::uint64_t tot = n + o.n;
        m2 += o.m2 + std::norm(delta) * double(n) * double(o.n) / double(tot);
        mean += delta * (double(o.n) / double(tot));
        n = tot;
    }
    Estimate estimate() const {
        if (n < 2) throw input_error("estimate: needs at least two samples");
        Estimate e;
        e.mean = mean;
        e.n = n;
        e.stderr_ = std::sqrt(m2 / double(n - 1) / double(n));
        return e;
    }
};

// M = N^{-1/2} Q^{1/2} G P^{1/2} gives <M^dag_{ij} M_{kl}> = N^-1 P_{il} Q_{kj}.
struct ComplexMatrixSampler {
    int N;
    CMatrix sqrt_q;
    CMatrix sqrt_p;

    ComplexMatrixSampler(const CovariancePair& pair);
    CMatrix draw(SeededStream& rng) const;
};

// phi = R^{1/2} g over the flattened N^D space.
struct ComplexTensorSampler {
    int D, N, dim;
    CMatrix sqrt_r;

    ComplexTensorSampler(const TensorCov<Cplx>& cov);
    Tensor<Cplx> draw(SeededStream& rng) const;
};

Estimate estimate_observable(const std::function<Cplx(const CMatrix&)>& obs,
                             const ComplexMatrixSampler& sampler, std::uint64_t n_samples,
                             SeededStream rng);

struct ObservableSpec;  // wick.hpp
Estimate estimate_observable(const ObservableSpec& obs, const ComplexMatrixSampler& sampler,
                             std::uint64_t n_samples, SeededStream rng);

// <exp V> over the Gaussian ensemble; V must stay bounded above on samples.
Estimate z_ratio_reweighted(const std::function<double(const CMatrix&)>& log_weight,
                            const ComplexMatrixSampler& sampler, std::uint64_t n_samples,
                            SeededStream rng);

// Both normalized quartic ratios of the variable-change identity estimated by
// reweighting: Gaussian(1) with vertex matrix C against Gaussian(C) without.
VerdictReport appendix_b_check(const CMatrix& C, double g, int N, std::uint64_t n_samples,
                               std::uint64_t seed, double n_sigmas = 4.0);

}  // namespace equiv
