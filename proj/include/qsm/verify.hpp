#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qsm {

struct CriterionResult {
    std::string id;
    bool pass = false;
    std::string detail;
};

// Runs every acceptance criterion at its pinned tolerance, printing one
// "<id>  PASS|FAIL  <detail>" line per criterion plus the out-of-scope notes.
std::vector<CriterionResult> run_acceptance_suite(std::ostream& out);

bool all_passed(const std::vector<CriterionResult>& results);

} // namespace qsm
