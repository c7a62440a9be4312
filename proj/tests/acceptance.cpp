#include <cstdlib>
#include <iostream>

#include "latgraph/selftest.hpp"

int main(int argc, char** argv) {
  int max_edges = 6;
  if (argc > 1) max_edges = std::atoi(argv[1]);
  try {
    auto results = latgraph::run_acceptance(max_edges);
    return latgraph::report_acceptance(results, std::cout) ? 0 : 1;
  } catch (const std::exception& e) {
    std::cout << "FAIL acceptance (" << e.what() << ")\n";
    return 1;
  }
}
