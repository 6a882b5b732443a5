#include <exception>
#include <iostream>

#include "campaigns.hpp"

// One line per acceptance criterion, then a nonzero exit if any failed.
int main() {
  using namespace gl2lab::cli;
  int failed = 0;
  for (const auto& c : acceptance_criteria()) {
    bool pass = false;
    std::string detail;
    try {
      const auto rep = run_criterion(c.id);
      pass = rep.pass();
      detail = std::to_string(rep.checks().size() - rep.failures()) + "/" + std::to_string(rep.checks().size()) +
               " checks";
      for (const auto& ch : rep.checks()) {
        if (!ch.pass) {
          detail += "; first failure: " + ch.name + " " + ch.inputs.dump();
          break;
        }
      }
    } catch (const std::exception& e) {
      detail = std::string("error: ") + e.what();
    }
    if (!pass) ++failed;
    std::cout << (pass ? "[PASS]" : "[FAIL]") << " AC" << c.id << " " << c.title << " (gl2lab " << c.command
              << "): " << detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
