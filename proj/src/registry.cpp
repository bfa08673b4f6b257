#include "qcss/registry.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace qcss {

const std::vector<RegistryRow>& construction_registry() {
  static const std::vector<RegistryRow> rows = {
      {"C", "periodic", "p^{2n}", "p^n-1", "p^n-1", "p^n+1", "p", "p prime, n>1", true},
      {"A", "aperiodic", "(p^n+1)^2", "p^n", "p^n", "p^n", "p^{n+1}+p", "p prime", true},
      {"B", "aperiodic", "p^{2n}+p^n", "p^n", "p^n", "p^n", "p", "p prime", true},
      {"D", "aperiodic", "p^{2n}+p^n-2", "p^n", "p^n+1", "p^n", "p^{n+1}+2p", "p prime", true},
      {"E", "aperiodic", "(p^n-1)^2", "p^n-1", "p^n-1", "p^n-1", "p^n-1", "p prime, p^n>2", true},
      {"F", "aperiodic", "p^{2n}-p^n", "p^n", "p^n-2", "p^n", "p^{n+1}-p", "p prime, p^n>2", true},
  };
  return rows;
}

const std::vector<RegistryRow>& known_families() {
  static const std::vector<RegistryRow> rows = {
      {"known", "periodic", "p^{2n}", "p^n", "p^n-1", "p^n", "p", "p odd prime", false},
      {"known", "periodic", "p^{2n}-p^n", "p^n-1", "p^n-1", "p^n", "p(p^n-1)", "p prime", false},
      {"known", "periodic", "p^{2n}-p^n", "p^n", "p^n-1", "p^n", "p", "p prime, n>1", false},
      {"known", "periodic", "p^{2n}-p^n", "p^n-1", "p^n-1", "p^n+1", "p", "p prime, n>1", false},
      {"known", "aperiodic", "p^{2n}+p^n", "p^n", "p^n", "p^n", "p^n", "p prime", false},
      {"known", "aperiodic", "p^{2n}-p^n", "p^n-1", "p^n", "p^n-1", "p^{2n}-p^n", "p prime, p^n>=3", false},
      {"known", "aperiodic", "p^{2n}", "p^n", "p^n-1", "p^n", "p^n", "p prime, p^n>=3", false},
      {"known", "aperiodic", "p^{2n}+p^n", "p^n", "p^n-1", "p^n", "p", "p prime", false},
      {"known", "aperiodic", "p^{2n}-p^n", "p^n", "p^n", "p^n", "p", "p^n>3", false},
      {"known", "aperiodic", "p^{2n}-p^n", "p^n", "p^n+1", "p^n", "p", "p^n>3", false},
  };
  return rows;
}

const RegistryRow& registry_row(Construction c) {
  const auto& rows = construction_registry();
  const std::string key(1, to_char(c));
  return *std::find_if(rows.begin(), rows.end(), [&](const RegistryRow& r) { return r.family == key; });
}

std::string render_table(bool include_known) {
  std::vector<RegistryRow> rows;
  if (include_known) {
    for (const auto& r : known_families()) rows.push_back(r);
  }
  for (const auto& r : construction_registry()) rows.push_back(r);
  std::string out = fmt::format("{:<7} {:<10} {:<14} {:<7} {:<7} {:<7} {:<12} {}\n", "family", "mode", "M", "K",
                                "N", "max", "alphabet", "constraints");
  for (const auto& r : rows) {
    out += fmt::format("{:<7} {:<10} {:<14} {:<7} {:<7} {:<7} {:<12} {}\n", r.family, r.mode, r.M, r.K, r.N,
                       r.max_corr, r.alphabet, r.constraint);
  }
  return out;
}

}  // namespace qcss
