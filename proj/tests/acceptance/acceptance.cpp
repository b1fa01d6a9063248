// Runs the full verification suite at small scale and prints one line per criterion.
#include <iomanip>
#include <iostream>

#include "pebblekit/verify.hpp"

using namespace pebblekit;

int main(int argc, char** argv) {
  Scale scale = Scale::small;
  if (argc > 1) scale = parse_scale(argv[1]);
  const VerificationReport r = run_verification(scale);
  for (int i = 1; i <= kCriterionCount; ++i) {
    const bool ok = r.criterion_passed(i);
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << std::setw(2) << i << ": " << criterion_title(i) << "\n";
    if (ok) continue;
    for (const auto& c : r.checks)
      if (c.criterion == i && !c.passed)
        std::cout << "       " << c.id << ": expected " << c.expected << ", got " << c.computed << "\n";
  }
  std::cout << r.checks.size() - r.failures() << "/" << r.checks.size() << " checks passed in " << std::fixed
            << std::setprecision(2) << r.seconds << " s\n";
  return r.passed() ? 0 : 1;
}
