// Runs the acceptance criteria and prints one line per criterion.
// Usage: scp_acceptance [id ...]
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "scp/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  int failed = 0;
  scp::acceptance::run_all(ids, [&](const scp::acceptance::CriterionResult& r) {
    std::printf("%s\n", scp::acceptance::format_line(r).c_str());
    std::fflush(stdout);
    if (!r.passed) ++failed;
  });
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
