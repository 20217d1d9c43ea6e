#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "perhom/document.hpp"

namespace perhom {

/// Outcome of one seeded verification suite. `findings` lists the failing
/// cases; `details` carries per-suite summary data. Both are deterministic
/// functions of the suite name and seed.
struct SuiteReport {
  std::string suite;
  int criterion = 0;
  std::uint64_t seed = 0;
  std::size_t cases = 0;
  std::size_t passed = 0;
  json details = json::object();
  json findings = json::array();
  bool holds() const { return cases > 0 && passed == cases; }
};

/// Suite names in criterion order (criterion k is names[k - 1]).
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

/// Throws InvalidInput on an unknown name.
SuiteReport run_suite(const std::string& name, std::uint64_t seed);

json to_json(const SuiteReport& r);
/// Rows of flat objects as an indented text table; columns are the union of
/// keys in sorted order.
std::string aligned_table(const json& rows);

/// Aligned plain-text rendering for --format table.
std::string to_table(const SuiteReport& r);

}  // namespace perhom
