#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "latgraph/links.hpp"

namespace latgraph {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;  // counts on success, first failure otherwise
};

// The acceptance suites, in order.  max_edges scales the graph corpora
// (criterion sizes in the defaults: 6 for the partition suites, 7 for
// Kirchhoff, 8 for switch pairs and two-bridge specs).
std::vector<SuiteResult> run_acceptance(int max_edges = 6);

// True iff every suite passed; prints one line per suite.
bool report_acceptance(const std::vector<SuiteResult>& results,
                       std::ostream& out);

}  // namespace latgraph
