// Acceptance gate: runs every criterion suite and prints one verdict line per
// criterion. Exit status is 0 exactly when all of them pass.

#include <iostream>

#include "announce/suite.hpp"

#ifndef ANNOUNCE_ASSET_DIR
#define ANNOUNCE_ASSET_DIR ""
#endif

int main() {
  announce::SuiteOptions opt;
  opt.asset_dir = ANNOUNCE_ASSET_DIR;
  std::vector<announce::CriterionResult> results = announce::run_acceptance(opt, std::cerr);

  bool ok = true;
  for (const announce::CriterionResult& r : results) {
    ok = ok && r.pass;
    std::cout << (r.pass ? "PASS" : "FAIL") << " - criterion " << r.id << ": " << r.name;
    if (r.recorded_only) std::cout << " [recorded]";
    std::cout << " (" << static_cast<long long>(r.elapsed_ms) << " ms)\n";
    for (const std::string& note : r.notes) std::cout << "       " << note << "\n";
  }
  std::cout << (ok ? "ACCEPTANCE: all criteria passed" : "ACCEPTANCE: FAILURES above") << "\n";
  return ok ? 0 : 1;
}
