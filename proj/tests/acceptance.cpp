// Runs the acceptance battery and prints one PASS/FAIL line per criterion.
// Exit status is 0 only when every criterion passes.
//
//   acceptance [seed] [C1,C4,...]

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "degseq/verify.hpp"

int main(int argc, char** argv) {
  degseq::verify::VerifyOptions options;
  if (argc > 1) options.seed = std::strtoull(argv[1], nullptr, 10);
  std::vector<std::string> ids;
  if (argc > 2) {
    std::stringstream s(argv[2]);
    for (std::string id; std::getline(s, id, ',');) ids.push_back(id);
  }

  bool all = true;
  try {
    for (const auto& r : degseq::verify::run_criteria(options, ids)) {
      std::cout << (r.passed ? "PASS " : "FAIL ") << r.id << "  " << r.detail << "  (" << r.seconds << " s)"
                << std::endl;
      all = all && r.passed;
    }
  } catch (const std::exception& e) {
    std::cout << "FAIL error: " << e.what() << std::endl;
    return 2;
  }
  return all ? 0 : 1;
}
