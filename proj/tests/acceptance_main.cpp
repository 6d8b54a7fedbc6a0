// Runs every acceptance criterion and prints one PASS/FAIL line each.
// Usage: acceptance [--quick] [--threads N] [--seed S] [ids...]

#include <cstdio>
#include <cstdlib>
#include <string>
#include <thread>

#include "logistic/acceptance.hpp"

int main(int argc, char** argv) {
  logistic::SuiteOptions opt;
  opt.threads = std::max(1u, std::thread::hardware_concurrency());
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--quick") {
      opt.quick = true;
    } else if (arg == "--threads" && i + 1 < argc) {
      opt.threads = static_cast<unsigned>(std::stoul(argv[++i]));
    } else if (arg == "--seed" && i + 1 < argc) {
      opt.seed = std::stoull(argv[++i]);
    } else {
      opt.only.push_back(arg);
    }
  }
  int failures = 0;
  logistic::run_acceptance(opt, [&](const logistic::CriterionResult& r) {
    std::printf("%s\n", logistic::format_result_line(r).c_str());
    std::fflush(stdout);
    failures += !r.passed;
  });
  std::printf("%d criterion line(s) failed\n", failures);
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
