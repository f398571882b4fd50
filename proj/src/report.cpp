#include "equiv/report.hpp"

#include <fstream>

#include "json.hpp"

namespace equiv {

namespace {

nlohmann::json cplx_json(const Cplx& z) { return nlohmann::json::array({z.real(), z.imag()}); }

nlohmann::json case_json(const CaseRecord& c) {
    nlohmann::json j;
    j["inputs"] = c.inputs;
    j["lhs"] = cplx_json(c.lhs);
    j["rhs"] = cplx_json(c.rhs);
    j["abs_err"] = c.abs_err;
    if (!std::isnan(c.rel_err)) j["rel_err"] = c.rel_err;
    if (!std::isnan(c.sigma_distance)) j["sigma_distance"] = c.sigma_distance;
    j["exact"] = c.exact;
    j["pass"] = c.pass;
    return j;
}

}  // namespace

// Timing stays out of the serialized report so its bytes depend only on
// (job, seed, build); the CLI reports wall time on stderr instead.
std::string report_to_json(const VerdictReport& r) {
    nlohmann::json j;
    j["suite"] = r.suite;
    j["backend"] = r.backend;
    j["overall"] = r.overall;
    j["anchors"] = r.anchors;
    nlohmann::json cases = nlohmann::json::array();
    for (const auto& c : r.cases) cases.push_back(case_json(c));
    j["cases"] = cases;
    return j.dump(2) + "\n";
}

void write_report(const VerdictReport& r, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open report path: " + path);
    out << report_to_json(r);
}

}  // namespace equiv
