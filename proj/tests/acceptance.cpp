// One line per acceptance criterion; exits nonzero if any criterion fails or
// a suite exceeds its time budget.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "perhom/suites.hpp"

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 7;
  constexpr double budget_seconds = 60.0;
  int failures = 0;
  const auto& names = perhom::suite_names();
  for (std::size_t k = 0; k < names.size(); ++k) {
    const std::string& name = names[k];
    const auto start = std::chrono::steady_clock::now();
    perhom::SuiteReport r;
    std::string error;
    try {
      r = perhom::run_suite(name, seed);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = error.empty() && r.holds() && seconds < budget_seconds;
    failures += ok ? 0 : 1;
    std::printf("criterion %2d  %-18s %s  %zu/%zu  %.2fs%s%s\n", static_cast<int>(k) + 1, name.c_str(),
                ok ? "PASS" : "FAIL", r.passed, r.cases, seconds, error.empty() ? "" : "  error: ", error.c_str());
  }
  std::printf("%s: %d of %zu criteria failed (seed %llu)\n", failures ? "FAILED" : "OK", failures,
              names.size(), static_cast<unsigned long long>(seed));
  return failures ? 1 : 0;
}
