#pragma once

#include <string>
#include <vector>

#include "polydep/census.hpp"

namespace polydep::cli {

struct Clause {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Asymptotic bands and census invariants for one (degree, family) pair.
std::vector<Clause> paper_suite(int degree, Family family, int threads);

}  // namespace polydep::cli
