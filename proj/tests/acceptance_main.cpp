// Prints one line per acceptance criterion; nonzero exit if any fails.
#include <iostream>

#include "suites.hpp"

int main() {
  const auto reports = eqindex::acceptance_reports();
  int failed = 0;
  for (const auto& r : reports) {
    const bool ok = r.passed();
    failed += ok ? 0 : 1;
    std::cout << (ok ? "PASS " : "FAIL ") << r.title;
    std::string sep = " | ";
    for (const auto& c : r.checks) {
      if (!c.detail.empty() || !c.passed) {
        std::cout << sep << (c.passed ? "" : "FAILED ") << c.name << (c.detail.empty() ? "" : ": " + c.detail);
        sep = "; ";
      }
    }
    std::cout << "\n";
  }
  std::cout << (reports.size() - failed) << "/" << reports.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
