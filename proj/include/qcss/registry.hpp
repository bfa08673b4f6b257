#pragma once

#include <string>
#include <vector>

#include "qcss/constructions.hpp"

namespace qcss {

// Parameter formulas of one sequence-set family, in terms of p and n.
struct RegistryRow {
  std::string family;
  std::string mode;
  std::string M;
  std::string K;
  std::string N;
  std::string max_corr;
  std::string alphabet;
  std::string constraint;
  bool built_here = true;
};

const std::vector<RegistryRow>& construction_registry();
// Rows of previously known families with comparable parameters; metadata only.
const std::vector<RegistryRow>& known_families();
const RegistryRow& registry_row(Construction c);

std::string render_table(bool include_known);

}  // namespace qcss
