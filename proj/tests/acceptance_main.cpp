// Prints one pass/fail line per acceptance criterion; exit 1 if any fails.
#include <cstdlib>
#include <iostream>
#include <string>

#include "tropweil/acceptance.hpp"

int main(int argc, char** argv) {
  tropweil::AcceptanceOptions options;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--seed" && i + 1 < argc)
      options.seed = std::stoull(argv[++i]);
    else
      options.only.push_back(std::stoi(arg));
  }
  bool all = true;
  tropweil::run_acceptance(options, [&](const tropweil::CriterionResult& r) {
    std::cout << tropweil::format_line(r) << std::endl;
    all = all && r.pass;
  });
  return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
