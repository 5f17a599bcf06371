// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Usage: acceptance [--no-timing] [--tables] [--seed N] [id ...]
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "smoothpoly/acceptance.hpp"

int main(int argc, char** argv) {
  smoothpoly::AcceptanceOptions options;
  bool timing = true, tables = false;
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--no-timing") {
      timing = false;
    } else if (arg == "--tables") {
      tables = true;
    } else if (arg == "--seed" && i + 1 < argc) {
      options.seed = std::stoull(argv[++i]);
    } else {
      const int id = std::atoi(arg.c_str());
      if (id < 1 || id > smoothpoly::kCriteria) {
        std::cerr << "unknown argument: " << arg << "\n";
        return 1;
      }
      ids.push_back(id);
    }
  }
  if (ids.empty())
    for (int id = 1; id <= smoothpoly::kCriteria; ++id) ids.push_back(id);

  int failed = 0;
  for (int id : ids) {
    const auto r = smoothpoly::run_criterion(id, options);
    std::cout << smoothpoly::format_result(r, timing) << std::endl;
    if (tables || !r.pass)
      for (const auto& row : r.table) std::cout << "    " << row << "\n";
    failed += !r.pass;
  }
  return failed == 0 ? 0 : 1;
}
