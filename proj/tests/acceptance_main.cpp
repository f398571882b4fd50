// Acceptance harness: one committed criterion per numeric argument, a single
// pass/fail line each, exit 0 only on pass. Run without arguments to execute
// all thirteen.

#include <chrono>
#include <iostream>
#include <sstream>

#include "equiv/characters.hpp"
#include "equiv/closed_forms.hpp"
#include "equiv/jet.hpp"
#include "equiv/mc.hpp"
#include "equiv/series.hpp"
#include "equiv/suites.hpp"
#include "equiv/wick.hpp"

using namespace equiv;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome criterion_1() {
    Outcome out;
    auto t0 = std::chrono::steady_clock::now();
    auto exact = suite_prop41(3, 4, 20240901, Backend::Exact, 0.0);
    out.require(exact.overall, "exact backend mismatch");
    auto flt = suite_prop41(3, 4, 20240901, Backend::Float, 1e-10);
    out.require(flt.overall, "float backend beyond 1e-10");
    double dt = seconds_since(t0);
    out.require(dt < 10.0, "runtime " + std::to_string(dt) + "s exceeds 10s");
    return out;
}

Outcome criterion_2() {
    Outcome out;
    auto t0 = std::chrono::steady_clock::now();
    auto rep = suite_prop42(3, 3, 20240901, Backend::Exact, 0.0);
    out.require(rep.overall, "exact jet route mismatch");
    double dt = seconds_since(t0);
    out.require(dt < 60.0, "runtime " + std::to_string(dt) + "s exceeds 60s");
    return out;
}

Outcome criterion_3() {
    Outcome out;
    auto rep = suite_prop51(2, 3, 3, 20240901, 1e-10);
    out.require(rep.overall, "tensor oracle mismatch beyond 1e-10");
    return out;
}

Outcome criterion_4() {
    Outcome out;
    auto rep = suite_prop52(2, 2, 2, 20240901, Backend::Exact, 0.0);
    out.require(rep.overall, "exact operator jet route mismatch");
    return out;
}

Outcome criterion_5() {
    Outcome out;
    auto thm43 = suite_thm43_series(2, 2, 20240901, Backend::Exact, 0.0);
    out.require(thm43.overall, "quartic series mismatch");
    auto thm53 = suite_thm53_series(2, 2, Backend::Exact, 0.0);
    out.require(thm53.overall, "pillow series mismatch");
    auto thm54 = suite_thm54_reduction(2, 2, Backend::Exact, 0.0);
    out.require(thm54.overall, "low-pillow/sextic reduction mismatch");
    return out;
}

Outcome criterion_6() {
    Outcome out;
    auto rep = suite_characters(4, 4, 20240901, 1e-9);
    out.require(rep.overall, "character expectation mismatch beyond 1e-9");
    return out;
}

Outcome criterion_7() {
    Outcome out;
    auto rep = suite_appendix_e_quartic();
    for (const auto& c : rep.cases)
        out.require(c.pass, c.inputs + " (got " + std::to_string(c.lhs.real()) + ", want " +
                                std::to_string(c.rhs.real()) + ")");
    return out;
}

Outcome criterion_8() {
    Outcome out;
    auto rep = suite_appendix_e_pillow(1e-12);
    for (const auto& c : rep.cases)
        out.require(c.pass, c.inputs + " (got " + std::to_string(c.lhs.real()) + ", want " +
                                std::to_string(c.rhs.real()) + ")");
    return out;
}

Outcome criterion_9() {
    Outcome out;
    auto real = suite_sec55_real();
    for (const auto& c : real.cases)
        out.require(c.pass, c.inputs + " (got " + std::to_string(c.lhs.real()) + ", want " +
                                std::to_string(c.rhs.real()) + ")");
    auto st = suite_sec55_selftranspose(1e-12);
    out.require(st.overall, "self-transpose determinant mismatch beyond 1e-12");
    return out;
}

Outcome criterion_10() {
    Outcome out;
    auto rep = suite_cauchy_cm(4, 2, 4, 20240901, 1e-9);
    out.require(rep.overall, "graded expansion mismatch beyond 1e-9");
    return out;
}

Outcome criterion_11() {
    Outcome out;
    auto rep = suite_ck_catalan(20);
    out.require(rep.overall, "Catalan bound violated");
    return out;
}

Outcome criterion_12() {
    Outcome out;
    auto t0 = std::chrono::steady_clock::now();
    auto rep = suite_mc_calibration(4, 200000, 20240901, 4.0);
    for (const auto& c : rep.cases)
        out.require(c.pass, c.inputs + " off by " + std::to_string(c.sigma_distance) + " sigma");
    double dt = seconds_since(t0);
    out.require(dt < 30.0, "runtime " + std::to_string(dt) + "s exceeds 30s");
    return out;
}

Outcome criterion_13() {
    Outcome out;
    auto rep = suite_appendix_b(1000000, 20240901, 4.0);
    for (const auto& c : rep.cases)
        out.require(c.pass, c.inputs + " off by " + std::to_string(c.sigma_distance) + " sigma");
    return out;
}

struct Criterion {
    int id;
    const char* summary;
    Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "pairing oracle = permutation sum, matrix side, n <= 4, N = 3", criterion_1},
    {2, "trace-derivative route = permutation sum, n <= 3, N <= 3", criterion_2},
    {3, "tensor pairing oracle = bubble sum, n <= 3, D = 3, N = 2", criterion_3},
    {4, "operator trace-derivative route = bubble sum, n <= 2, D = 2, N = 2", criterion_4},
    {5, "graded ratio equality: quartic, pillow, low-pillow, sextic at N = 2", criterion_5},
    {6, "character expectation closed forms, r of size <= 4 at N = 4", criterion_6},
    {7, "quartic free energy vs -(N^2/2) log(1+g) at N = 2, orders <= 3", criterion_7},
    {8, "pillow determinant vs closed form, plus series coefficients at N = 2", criterion_8},
    {9, "real-tensor series vs closed form and self-transpose determinant", criterion_9},
    {10, "graded character expansion, m = 2, N = 4, degrees <= 4", criterion_10},
    {11, "Catalan limit bound at N = 20, n in {2,4,6}", criterion_11},
    {12, "Monte Carlo calibration at N = 4, 2e5 samples, 4 sigma", criterion_12},
    {13, "variable-change identity by reweighting, N in {1,2}, 4 sigma", criterion_13},
};

int run_one(const Criterion& c) {
    Outcome out;
    try {
        out = c.run();
    } catch (const std::exception& e) {
        out.pass = false;
        out.detail = std::string("exception: ") + e.what();
    }
    std::cout << "criterion " << c.id << ": " << (out.pass ? "PASS" : "FAIL") << " - "
              << c.summary;
    if (!out.pass) std::cout << " [" << out.detail << "]";
    std::cout << std::endl;
    return out.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) {
        int id = std::atoi(argv[1]);
        for (const auto& c : kCriteria)
            if (c.id == id) return run_one(c);
        std::cerr << "unknown criterion " << id << "\n";
        return 2;
    }
    int failures = 0;
    for (const auto& c : kCriteria) failures += run_one(c);
    std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria failing")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
