#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "latgraph/selftest.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw latgraph::parse_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string records_format(const latgraph::DInvariant& d,
                           const std::string& lattice,
                           const std::string& method) {
  std::ostringstream out;
  out << "lattice:" << lattice << "\n";
  out << "method:" << method << "\n";
  out << "base:canonical\n";
  out << "factors:";
  for (std::size_t i = 0; i < d.factors.size(); ++i)
    out << (i ? "," : "") << d.factors[i];
  out << "\n";
  for (const auto& [cls, v] : d.values) {
    out << "class:";
    for (std::size_t i = 0; i < cls.smith_coords.size(); ++i)
      out << (i ? "," : "") << cls.smith_coords[i];
    out << ";d:" << latgraph::rat_str(v) << "\n";
  }
  return out.str();
}

int run(int argc, char** argv) {
  CLI::App app{"Cut/flow lattice d-invariants, 2-isomorphism, and mutation"};
  app.require_subcommand(1);
  int jobs = 1;
  app.add_option("--jobs", jobs,
                 "worker count (results are identical at any value)");

  auto* dinv = app.add_subcommand("dinv", "d-invariant of a graph lattice");
  std::string dinv_path, lattice = "flow", method = "orientations",
              format = "text";
  dinv->add_option("path", dinv_path, "edge-list file")->required();
  dinv->add_option("--lattice", lattice, "cut|flow")
      ->check(CLI::IsMember({"cut", "flow"}));
  dinv->add_option("--method", method, "orientations|cvp")
      ->check(CLI::IsMember({"orientations", "cvp"}));
  dinv->add_option("--format", format, "text|records")
      ->check(CLI::IsMember({"text", "records"}));

  auto* compare = app.add_subcommand("compare", "decide 2-isomorphism");
  std::string path_a, path_b;
  compare->add_option("pathA", path_a, "edge-list file")->required();
  compare->add_option("pathB", path_b, "edge-list file")->required();

  auto* mutant = app.add_subcommand("mutant", "decide mutation equivalence");
  std::string pd_path1, pd_path2;
  bool reduce = false;
  mutant->add_option("pd1", pd_path1, "PD code file")->required();
  mutant->add_option("pd2", pd_path2, "PD code file")->required();
  mutant->add_flag("--reduce", reduce, "remove nugatory crossings first");

  auto* selftest = app.add_subcommand("selftest", "run the acceptance suites");
  int max_edges = 6;
  selftest->add_option("--max-edges", max_edges, "corpus size scale")
      ->check(CLI::Range(0, 6));

  CLI11_PARSE(app, argc, argv);

  if (*dinv) {
    latgraph::MultiGraph g = latgraph::parse_edge_list(read_file(dinv_path));
    latgraph::DInvariant d;
    if (lattice == "flow") {
      d = latgraph::flow_d_invariant(g, method == "cvp"
                                            ? latgraph::FlowMethod::cvp
                                            : latgraph::FlowMethod::orientations);
    } else if (method == "cvp") {
      d = latgraph::d_invariant(latgraph::cut_lattice(g));
    } else {
      d = latgraph::cut_d_invariant_via_orientations(g);
    }
    if (format == "records")
      std::cout << records_format(d, lattice, method);
    else
      std::cout << latgraph::format_d_invariant(d);
    return 0;
  }

  if (*compare) {
    latgraph::MultiGraph g = latgraph::parse_edge_list(read_file(path_a));
    latgraph::MultiGraph h = latgraph::parse_edge_list(read_file(path_b));
    auto f = latgraph::reconstruct_two_isomorphism(g, h);
    if (f) {
      std::cout << "EQUIVALENT\n";
      for (auto [a, b] : f->pairs)
        std::cout << "map " << a << " " << b << "\n";
      return 0;
    }
    std::cout << "DISTINCT\n";
    latgraph::DInvariant dg = latgraph::flow_d_invariant(
        latgraph::contract_cut_edges(g).graph);
    latgraph::DInvariant dh = latgraph::flow_d_invariant(
        latgraph::contract_cut_edges(h).graph);
    if (dg.factors != dh.factors) {
      std::cout << "stage: discriminant groups differ\n";
    } else {
      auto values = [](const latgraph::DInvariant& d) {
        std::vector<latgraph::Rat> v;
        for (const auto& [c, x] : d.values) v.push_back(x);
        std::sort(v.begin(), v.end());
        return v;
      };
      std::cout << (values(dg) != values(dh)
                        ? "stage: d-value multisets differ\n"
                        : "stage: no torsor isomorphism\n");
    }
    return 1;
  }

  if (*mutant) {
    latgraph::PDCode pd1 = latgraph::parse_pd(read_file(pd_path1));
    latgraph::PDCode pd2 = latgraph::parse_pd(read_file(pd_path2));
    latgraph::MutantVerdict v =
        latgraph::mutation_equivalent(pd1, pd2, reduce);
    if (!v.equivalent) {
      std::cout << "NOT MUTANTS\n";
      return 1;
    }
    std::cout << "MUTANTS\n";
    for (auto [a, b] : v.crossing_map->pairs)
      std::cout << "map " << a << " " << b << "\n";
    return 0;
  }

  auto results = latgraph::run_acceptance(max_edges);
  return latgraph::report_acceptance(results, std::cout) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const latgraph::budget_error& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const latgraph::parse_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
