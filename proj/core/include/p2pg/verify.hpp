#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace p2pg::verify {

struct CriterionResult {
  std::string id;
  std::string title;
  bool passed = false;
  std::vector<std::string> details;  // failure descriptions
};

struct SuiteResult {
  std::vector<CriterionResult> criteria;
  bool all_passed() const;
};

/// Runs the acceptance table. `deep` adds the two large instances. Progress
/// lines go to `progress` when given.
SuiteResult run_acceptance(bool deep, std::ostream* progress = nullptr);

/// One pass/fail line per criterion plus a summary.
std::string format_results(const SuiteResult& r);

}  // namespace p2pg::verify
