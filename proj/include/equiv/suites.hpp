#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "equiv/matrix.hpp"
#include "equiv/report.hpp"

namespace equiv {

enum class Backend { Float, Exact };

// Everything a verification job can carry; each suite reads the fields it
// needs and falls back to its committed defaults.
struct JobSpec {
    std::string suite;
    Backend backend = Backend::Float;
    int N = -1;
    int n_max = -1;
    int D = -1;
    int K = -1;
    std::uint64_t seed = 20240901;
    std::uint64_t samples = 200000;
    double rel_tol = -1.0;    // per-suite default when negative
    double sigma_tol = 4.0;
    std::vector<double> couplings;
    std::optional<CMatrix> P;  // explicit ensembles, or via presets in JSON
    std::optional<CMatrix> Q;
};

JobSpec parse_job(const std::string& json_text);
JobSpec parse_job_file(const std::string& path);

VerdictReport run_job(const JobSpec& job);

// Individual suites, callable directly (the acceptance harness drives these).
VerdictReport suite_prop41(int N, int n_max, std::uint64_t seed, Backend backend, double rel_tol);
VerdictReport suite_prop42(int N_max, int n_max, std::uint64_t seed, Backend backend, double rel_tol);
VerdictReport suite_prop51(int N, int D, int n_max, std::uint64_t seed, double rel_tol);
VerdictReport suite_prop52(int N, int D, int n_max, std::uint64_t seed, Backend backend, double rel_tol);
VerdictReport suite_thm43_series(int N, int K, std::uint64_t seed, Backend backend, double rel_tol);
VerdictReport suite_thm53_series(int N, int K, Backend backend, double rel_tol);
VerdictReport suite_thm54_reduction(int N, int K, Backend backend, double rel_tol);
VerdictReport suite_characters(int N, int n_max, std::uint64_t seed, double rel_tol);
VerdictReport suite_cauchy_cm(int N, int m, int degree_cap, std::uint64_t seed, double rel_tol);
VerdictReport suite_ck_catalan(int N_large);
VerdictReport suite_appendix_e_quartic();
VerdictReport suite_appendix_e_pillow(double rel_tol, std::vector<double> couplings = {});
VerdictReport suite_sec55_real();
VerdictReport suite_sec55_selftranspose(double rel_tol, std::vector<double> couplings = {});
VerdictReport suite_appendix_b(std::uint64_t samples, std::uint64_t seed, double sigma_tol);
VerdictReport suite_convergence(std::uint64_t seed);
VerdictReport suite_mc_calibration(int N, std::uint64_t samples, std::uint64_t seed, double sigma_tol);

// Deterministic Gaussian-integer test matrices with entries in [-2, 2].
CMatrix random_int_matrix(int N, std::uint64_t seed, std::uint64_t stream);
CMatrix random_complex_matrix(int N, std::uint64_t seed, std::uint64_t stream);
CMatrix random_pd_matrix(int N, std::uint64_t seed, std::uint64_t stream);

}  // namespace equiv
