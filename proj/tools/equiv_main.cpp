#include <iostream>

#include "CLI11.hpp"
#include "equiv/covariance.hpp"
#include "equiv/registry.hpp"
#include "equiv/report.hpp"
#include "equiv/suites.hpp"

namespace {

// Exit codes: 0 all pass, 1 a comparison failed, 2 invalid input, 3 budget.
constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitBudget = 3;

int cmd_run(const std::string& job_path, const std::string& out_path,
            const std::string& backend_override) {
    equiv::JobSpec job = equiv::parse_job_file(job_path);
    if (backend_override == "exact") job.backend = equiv::Backend::Exact;
    else if (backend_override == "float") job.backend = equiv::Backend::Float;
    else if (!backend_override.empty()) throw equiv::input_error("backend must be float or exact");
    equiv::VerdictReport rep = equiv::run_job(job);
    std::string text = equiv::report_to_json(rep);
    if (!out_path.empty()) equiv::write_report(rep, out_path);
    std::cout << text;
    std::cerr << rep.suite << ": " << (rep.overall ? "pass" : "FAIL") << " in " << rep.wall_ms
              << " ms\n";
    return rep.overall ? kExitPass : kExitFail;
}

int cmd_suites() {
    for (const auto& s : equiv::suite_catalog()) {
        std::cout << s.name << "\n  " << s.description << "\n  anchors:";
        for (const auto& a : s.anchors) std::cout << " " << a;
        std::cout << "\n";
    }
    return kExitPass;
}

int cmd_ck(int k, int n) {
    equiv::CkMatrix c = equiv::build_ck(k, n);
    std::cout << "C_" << k << " at N=" << n << " eigenvalues:\n";
    for (const auto& v : c.eigenvalues)
        std::cout << "  " << v.real() << (v.imag() >= 0 ? "+" : "") << v.imag() << "i\n";
    equiv::VerdictReport rep = equiv::verify_ck(c);
    for (const auto& rec : rep.cases)
        std::cout << rec.inputs << " residual=" << rec.abs_err << (rec.pass ? " ok" : " FAIL")
                  << "\n";
    return rep.overall ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification workbench for complex/self-adjoint ensemble equivalences"};
    app.require_subcommand(1);

    std::string job_path, out_path, backend;
    auto* run = app.add_subcommand("run", "run a verification job from a JSON file");
    run->add_option("job", job_path, "job JSON path")->required();
    run->add_option("--out", out_path, "write the report JSON here");
    run->add_option("--backend", backend, "override the job backend (exact|float)");

    auto* suites = app.add_subcommand("suites", "list suites and the identities they exercise");

    int ck_k = 2, ck_n = 6;
    auto* ck = app.add_subcommand("ck", "build a rigidity matrix and print residuals");
    ck->add_option("--k", ck_k, "target power");
    ck->add_option("--n", ck_n, "matrix size N");

    try {
        app.parse(argc, argv);
        if (run->parsed()) return cmd_run(job_path, out_path, backend);
        if (suites->parsed()) return cmd_suites();
        if (ck->parsed()) return cmd_ck(ck_k, ck_n);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? kExitInvalid : kExitPass;
    } catch (const equiv::resource_error& e) {
        std::cerr << "resource budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const equiv::input_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitPass;
}
