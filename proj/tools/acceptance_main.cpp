#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria: one line per criterion"};
  std::vector<int> ids;
  app.add_option("--criterion", ids, "Criteria to run (default all)")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  std::vector<dyb::cli::CriterionResult> results;
  try {
    results = dyb::cli::run_acceptance(ids);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return dyb::cli::classify(e);
  }
  bool all = true;
  for (auto& r : results) {
    std::printf("criterion %2d %s  %-62s %7.2fs  %s\n", r.id, r.pass ? "PASS" : "FAIL", r.title.c_str(), r.seconds,
                r.detail.c_str());
    all = all && r.pass;
  }
  std::printf("%s\n", all ? "all criteria pass" : "some criteria FAIL");
  return all ? 0 : 1;
}
