// Runs every acceptance criterion and prints one PASS/FAIL line each.

#include <cstdlib>
#include <iostream>

#include "ghkit/selftest.hpp"

int main(int argc, char** argv) {
  ghkit::selftest::Options opts;
  if (argc > 1) opts.seed = std::strtoull(argv[1], nullptr, 10);
  bool ok = true;
  for (const auto& r : ghkit::selftest::run_all(opts)) {
    std::cout << ghkit::selftest::format_line(r) << std::endl;
    ok = ok && r.passed;
  }
  return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
