#pragma once

#include <string>
#include <vector>

#include "cpheat/io.hpp"

namespace cpheat {

// One stage of a scenario. `runtime` counts integrand evaluations, which keeps
// the output identical from run to run.
struct ScenarioRow {
  std::string scenario_id;
  std::string stage;
  std::string verdict;
  double value = 0.0;
  double error = 0.0;
  long runtime = 0;
  std::string expected;
  bool matched = true;
};

struct ScenarioConfig {
  std::string space = "H3";
  double t = 0.5;
};

// Sorted ids: cor4.2, cor4.4, cor4.5, degree-bound, sl2c-example, thm3.3-trichotomy,
// thm4.3-contamination, thm4.3-heat, thm5.3-ktype.
const std::vector<std::string>& scenario_ids();

// Throws InvalidArgument for an unknown id; "all" runs every scenario in id order.
std::vector<ScenarioRow> run_scenario(const std::string& id, const ScenarioConfig& cfg = {});

bool all_matched(const std::vector<ScenarioRow>& rows);

// Columns scenario_id, stage, verdict, value, error, runtime, expected, matched.
CsvTable scenario_table(const std::vector<ScenarioRow>& rows);

}  // namespace cpheat
