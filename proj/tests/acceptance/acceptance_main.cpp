#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "fraclap/selftest.hpp"

// Usage: fraclap_acceptance [id ...]
int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  const auto results = fraclap::run_selftest(ids, [](const std::string& line) {
    std::printf("%s\n", line.c_str());
    std::fflush(stdout);
  });
  int failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  std::printf("%zu criteria, %d failed\n", results.size(), failed);
  return failed == 0 ? 0 : 1;
}
