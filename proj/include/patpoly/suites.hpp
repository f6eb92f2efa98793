#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "patpoly/polytope.hpp"

namespace patpoly {

enum class Format { json, csv, markdown };
Format parse_format(std::string_view text);  // throws InvalidArgument

/// Settings shared by every command and suite.
struct RunConfig {
  std::string spec;
  std::string op;
  std::uint64_t budget = 1'000'000'000ULL;
  unsigned workers = 0;
  Format format = Format::markdown;
  std::uint64_t seed = 1;
  std::string data_dir;  // golden JSON; defaults to the compiled-in path
  int m = 1;             // dilate for `interior`
  int max_m = 4;         // IDP dilates
  bool include_skipped = false;

  CountOptions count() const;
  /// Throws InvalidArgument on budget 0 or a missing data directory.
  void validate() const;
  std::string golden_path(std::string_view file) const;
};

/// Budget from PATPOLY_BUDGET when set, else `fallback`. Throws InvalidArgument on junk.
std::uint64_t budget_from_env(std::uint64_t fallback);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string render(Format f) const;
  nlohmann::json to_json() const;
};

struct Check {
  std::string group;
  std::string name;
  bool pass = false;
  std::string detail;
  bool informational = false;  // reported, never fails the run
};

struct Report {
  std::string title;
  std::vector<Check> checks;
  Table table;  // optional recomputed rows

  Check& add(std::string group, std::string name, bool pass, std::string detail = {});
  Check& info(std::string group, std::string name, bool pass, std::string detail = {});
  void append(const Report& other);
  bool pass() const;
  bool has_group(std::string_view group) const;
  Report only(std::string_view group) const;
  nlohmann::json to_json() const;
  std::string render(Format f) const;
};

std::vector<std::string> table_names();
std::vector<std::string> suite_names();

/// Recomputes a table and diffs it against data/golden.
Report table_report(std::string_view name, const RunConfig& cfg);
/// Runs a named property suite.
Report verify_suite(std::string_view name, const RunConfig& cfg);

// Individual suites; the acceptance binary picks groups out of these.
Report suite_permutohedra(const RunConfig& cfg);
Report suite_birkhoff(const RunConfig& cfg);
Report suite_posets(const RunConfig& cfg);
Report suite_triangulation(const RunConfig& cfg);
Report suite_gorenstein(const RunConfig& cfg);
/// IDP sweep and the recorded non-IDP witness, as hard checks.
Report suite_idp(const RunConfig& cfg);
/// Everything open or experimental; all entries informational.
Report suite_conjectures(const RunConfig& cfg);

}  // namespace patpoly
