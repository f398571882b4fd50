#include "equiv/registry.hpp"

#include <map>

namespace equiv {

const std::vector<FormulaInfo>& formula_registry() {
    static const std::vector<FormulaInfo> table = {
        {"cm-gaussian-multitrace",
         "Gaussian multi-trace average of the complex model as a permutation sum over "
         "N^-n Tr(Q-cycles) Tr(P-cycles)",
         {"prop41", "mc-calibration"}},
        {"hm-derivative-multitrace",
         "the same multi-trace average produced by trace derivatives of the logarithmic "
         "auxiliary potential",
         {"prop42"}},
        {"ct-gaussian-bubble", "Gaussian bubble average of the complex tensor model as a sum over "
                               "left-distributed permutations",
         {"prop51"}},
        {"ht-derivative-bubble",
         "bubble average from trace derivatives on the operator space", {"prop52"}},
        {"gaussian-reduction",
         "quadratic auxiliary potential collapses the linked pair to one Gaussian field",
         {"prop42", "prop52"}},
        {"partition-ratio-equivalence-matrix",
         "coupling-graded equality of the complex and linked-field partition ratios, matrix case",
         {"thm43-series"}},
        {"partition-ratio-equivalence-tensor",
         "coupling-graded equality of the complex and linked-field ratios on the full operator space",
         {"thm53-series"}},
        {"partial-trace-reduction",
         "invariants touching one color only through a partial trace evaluate on the reduced space",
         {"thm54-reduction"}},
        {"schur-weyl-duality", "multi-trace as a character-weighted sum of Schur characters",
         {"characters"}},
        {"character-expectation",
         "expected Schur character n! N^-n chi_r(P) chi_r(Q) / chi^r(e)", {"characters"}},
        {"character-c1-form", "the same expectation with chi_r(C_1) as the denominator",
         {"characters"}},
        {"cauchy-ck-expansion",
         "graded expansion of exp((N/m) Tr A^m) in Schur characters weighted by chi_r(C_m)",
         {"cauchy-cm"}},
        {"ck-power-sums", "defining power-sum constraints of the rigidity matrices C_k",
         {"ck-catalan"}},
        {"ck-class-sum", "class-restricted permutation sum left by a C_k weight",
         {"ck-catalan"}},
        {"catalan-limit", "normalized even-trace moments approach Catalan numbers at large N",
         {"ck-catalan"}},
        {"quartic-necklace-free-energy",
         "free energy of the rigidity-weighted quartic matrix model, -(N^2/2) log(1+g)",
         {"appendix-e-quartic"}},
        {"pillow-closed-form", "product closed form of the quartic pillow partition ratio",
         {"appendix-e-pillow"}},
        {"pillow-kernel-determinant",
         "the same ratio from the dense quadratic kernel and its block determinants",
         {"appendix-e-pillow"}},
        {"real-tensor-free-energy",
         "log ratio of the rigidity-weighted real tensor model from connected moments",
         {"sec55-real"}},
        {"self-transpose-determinant",
         "partition ratio of the self-transpose quartic model from the restricted determinant",
         {"sec55-selftranspose"}},
        {"quartic-variable-change",
         "normalized quartic ratios agree after moving the vertex matrix into the propagator",
         {"appendix-b"}},
        {"convergence-criterion", "Gaussian convergence iff Re(q p) >= 0 over eigenvalue pairs",
         {"convergence"}},
        {"covariance-calibration", "sampled moments match the two-index covariance",
         {"mc-calibration"}},
    };
    return table;
}

const std::vector<SuiteInfo>& suite_catalog() {
    static const std::vector<SuiteInfo> table = [] {
        std::map<std::string, SuiteInfo> suites;
        auto describe = [&](const std::string& name, const std::string& desc) {
            suites[name].name = name;
            suites[name].description = desc;
        };
        describe("prop41", "pairing oracle vs permutation sum, complex matrix Gaussian averages");
        describe("prop42", "trace-derivative route vs permutation sum, linked matrix pair");
        describe("prop51", "pairing oracle vs permutation sum, complex tensor bubbles");
        describe("prop52", "trace-derivative route vs permutation sum, linked operator pair");
        describe("thm43-series", "graded partition-ratio equality, quartic matrix potential");
        describe("thm53-series", "graded partition-ratio equality, pillow potential, full space");
        describe("thm54-reduction", "graded equality through the reduced operator space");
        describe("characters", "expected Schur characters in closed form");
        describe("cauchy-cm", "graded character expansion against exp((N/m) Tr A^m)");
        describe("ck-catalan", "C_k construction, class-restricted sums, Catalan limit");
        describe("appendix-e-quartic", "quartic free-energy coefficients vs -(N^2/2) log(1+g)");
        describe("appendix-e-pillow", "pillow determinant routes and series coefficients");
        describe("sec55-real", "real tensor free-energy series from the pairing oracle");
        describe("sec55-selftranspose", "self-transpose determinant vs closed form");
        describe("appendix-b", "reweighted Monte Carlo check of the variable-change identity");
        describe("convergence", "eigenvalue-pair convergence criterion and witnesses");
        describe("mc-calibration", "seeded sampler moments vs permutation-sum predictions");
        for (const auto& f : formula_registry())
            for (const auto& s : f.suites)
                if (suites.count(s)) suites[s].anchors.push_back(f.name);
        std::vector<SuiteInfo> out;
        for (auto& [name, info] : suites) out.push_back(std::move(info));
        return out;
    }();
    return table;
}

}  // namespace equiv
