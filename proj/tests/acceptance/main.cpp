#include <cstdio>
#include <cstdlib>

#include "tcforge/core/rng.hpp"
#include "tcforge/verify/suites.hpp"

// Runs every property suite once and prints one PASS/FAIL line per suite.
int main(int argc, char** argv) {
  using namespace tcforge;
  const Nat seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : default_seed();
  int failed = 0;
  Nat index = 0;
  for (const auto& info : verify::suites()) {
    const verify::SuiteReport r = verify::run_suite(info, seed);
    ++index;
    std::printf("%s %2llu %-16s %s (%.1f s)\n", r.passed() ? "PASS" : "FAIL", static_cast<unsigned long long>(index),
                r.id.c_str(), r.title.c_str(), r.seconds);
    if (!r.passed()) {
      ++failed;
      std::fputs(verify::to_text(r).c_str(), stdout);
    }
    std::fflush(stdout);
  }
  std::printf("%d of %llu criteria failed\n", failed, static_cast<unsigned long long>(index));
  return failed == 0 ? 0 : 1;
}
