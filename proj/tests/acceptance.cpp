// Acceptance suite: one pass/fail line per criterion. With an argument, runs only that criterion.
#include <iostream>

#include "strathom/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::stoi(argv[i]));
  if (ids.empty())
    for (int id = 1; id <= strathom::kCriteria; ++id) ids.push_back(id);
  bool ok = true;
  for (int id : ids) {
    strathom::CriterionResult r = strathom::run_criterion(id);
    std::cout << strathom::format_criterion(r) << std::endl;
    ok = ok && r.pass;
  }
  return ok ? 0 : 1;
}
