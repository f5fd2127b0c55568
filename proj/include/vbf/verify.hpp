#pragma once

#include "vbf/gf2n.hpp"

#include <string>
#include <vector>

namespace vbf {

struct CheckResult {
    std::string suite;
    std::string check;
    std::string status;  // "pass", "fail", "skip" or "flag" (a documented discrepancy, not a failure)
    std::string detail;
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"field", "boolfun", "quadratic", "stick", "padic", "ell", "classify", "image"};
    return names;
}

/// Runs one suite (or "all") against K. Throws UsageError for an unknown suite.
std::vector<CheckResult> run_suite(const FieldPtr& K, const std::string& suite, unsigned jobs = 0, bool allow_large = false);

}  // namespace vbf
