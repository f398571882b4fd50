#pragma once

#include <string>
#include <vector>

namespace equiv {

// Machine-readable index of every closed-form identity the workbench checks,
// with the suites that exercise it. The CLI suite listing is generated from
// this table, and a self-audit test asserts full coverage.
struct FormulaInfo {
    std::string name;
    std::string description;
    std::vector<std::string> suites;
};

const std::vector<FormulaInfo>& formula_registry();

struct SuiteInfo {
    std::string name;
    std::string description;
    std::vector<std::string> anchors;  // registry names exercised
};

const std::vector<SuiteInfo>& suite_catalog();

}  // namespace equiv
