// Acceptance binary: one PASS/FAIL line per criterion, nonzero exit on failure.
// Set CHEV_ACCEPTANCE_JSON=path to also write the full report.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "chevalley/acceptance.hpp"

int main() {
  chev::AcceptanceConfig cfg;
  auto run = chev::accept::run_acceptance(cfg, [](const chev::CriterionResult& r) {
    std::cout << chev::accept::result_line(r) << std::endl;
  });
  if (const char* path = std::getenv("CHEV_ACCEPTANCE_JSON")) {
    std::ofstream out(path);
    out << run.report(cfg).dump(2) << "\n";
  }
  std::cout << (run.pass() ? "acceptance PASS" : "acceptance FAIL") << std::endl;
  return run.pass() ? 0 : 1;
}
