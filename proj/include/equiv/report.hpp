#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "equiv/scalar.hpp"

namespace equiv {

// One two-sided comparison. sigma_distance is used instead of rel_err for
// Monte Carlo cases; whichever is unused stays NaN.
struct CaseRecord {
    std::string inputs;
    Cplx lhs{0.0, 0.0};
    Cplx rhs{0.0, 0.0};
    double abs_err = 0.0;
    double rel_err = std::nan("");
    double sigma_distance = std::nan("");
    bool exact = false;  // compared in the rational backend
    bool pass = false;
};

struct VerdictReport {
    std::string suite;
    std::string backend = "float";
    std::vector<CaseRecord> cases;
    bool overall = true;
    double wall_ms = 0.0;
    std::vector<std::string> anchors;  // formula-registry names exercised

    void add(CaseRecord c) {
        overall = overall && c.pass;
        cases.push_back(std::move(c));
    }
};

// Relative comparison with a unit floor on the scale, so quantities that are
// mathematically zero pass on their absolute error instead of tripping the
// 0/0 pathology. Every committed comparison in the suites is O(1) or larger.
inline CaseRecord make_case_rel(std::string inputs, Cplx lhs, Cplx rhs, double rel_tol) {
    CaseRecord c;
    c.inputs = std::move(inputs);
    c.lhs = lhs;
    c.rhs = rhs;
    c.abs_err = std::abs(lhs - rhs);
    double scale = std::max(std::abs(lhs), std::abs(rhs));
    c.rel_err = scale > 0 ? c.abs_err / scale : 0.0;
    c.pass = c.abs_err <= rel_tol * std::max(scale, 1.0);
    return c;
}

inline CaseRecord make_case_exact(std::string inputs, const CRat& lhs, const CRat& rhs) {
    CaseRecord c;
    c.inputs = std::move(inputs);
    c.lhs = scalar_traits<CRat>::to_cplx(lhs);
    c.rhs = scalar_traits<CRat>::to_cplx(rhs);
    c.exact = true;
    c.pass = (lhs == rhs);
    c.abs_err = c.pass ? 0.0 : std::abs(c.lhs - c.rhs);
    c.rel_err = c.pass ? 0.0 : std::nan("");
    return c;
}

inline CaseRecord make_case_sigma(std::string inputs, Cplx estimate, Cplx truth, double stderr_,
                                  double n_sigmas) {
    CaseRecord c;
    c.inputs = std::move(inputs);
    c.lhs = estimate;
    c.rhs = truth;
    c.abs_err = std::abs(estimate - truth);
    c.sigma_distance = stderr_ > 0 ? c.abs_err / stderr_ : (c.abs_err == 0 ? 0.0 : INFINITY);
    c.pass = c.sigma_distance <= n_sigmas;
    return c;
}

std::string report_to_json(const VerdictReport& r);
void write_report(const VerdictReport& r, const std::string& path);

}  // namespace equiv
