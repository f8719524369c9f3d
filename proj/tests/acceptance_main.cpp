#include <cstring>
#include <iostream>

#include "compsearch/acceptance.hpp"

int main(int argc, char** argv) {
  compsearch::acceptance::SuiteOptions options;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--quick") == 0) options.quick = true;
  }
  const auto results = compsearch::acceptance::run_suite(options);
  compsearch::acceptance::print_results(std::cout, results);
  return compsearch::acceptance::all_passed(results) ? 0 : 1;
}
