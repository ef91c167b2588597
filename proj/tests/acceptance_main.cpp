// Runs every acceptance criterion and prints one line per criterion.

#include <cstdio>
#include <cstdlib>
#include <string>

#include "ekr/acceptance.hpp"

int main(int argc, char** argv) {
  ekr::AcceptanceOptions opts;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--verbose")
      continue;
    if (a == "--only" && i + 1 < argc)
      opts.only = argv[++i];
    else if (a == "--seed" && i + 1 < argc)
      opts.seed = std::strtoull(argv[++i], nullptr, 10);
  }
  bool verbose = false;
  for (int i = 1; i < argc; ++i)
    verbose = verbose || std::string(argv[i]) == "--verbose";

  int failed = 0;
  ekr::run_acceptance(opts, [&](const ekr::CriterionResult& r) {
    std::printf("%s\n", ekr::format_result_line(r).c_str());
    if (verbose || !r.passed)
      for (const auto& d : r.details)
        std::printf("      %s\n", d.c_str());
    std::fflush(stdout);
    failed += !r.passed;
  });
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
