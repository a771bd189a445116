// One line per acceptance criterion; nonzero exit if any fails.
#include <cstdio>
#include <string>
#include <vector>

#include "hypercox/checks.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> filter(argv + 1, argv + argc);
  bool verbose = false;
  std::erase_if(filter, [&](const std::string& s) { return s == "-v" ? (verbose = true) : false; });

  int failed = 0;
  for (const auto& r : hypercox::run_acceptance(filter)) {
    std::printf("[%s] %d %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str());
    for (const auto& d : r.details)
      if (verbose || !r.pass) std::printf("       %s\n", d.c_str());
    failed += r.pass ? 0 : 1;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
