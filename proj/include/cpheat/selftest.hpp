#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cpheat/io.hpp"

namespace cpheat {

struct SelftestOptions {
  std::uint64_t seed = 7;
  // Replaces every tolerance when set.
  std::optional<double> tolerance;
};

// One invariant check: `value` is the measured discrepancy (or violation count),
// passing when value <= tolerance.
struct SelftestRow {
  std::string module;
  std::string invariant;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// Invariant suite of every module. Random draws come from mt19937_64(seed), so the
// same seed gives the same rows.
std::vector<SelftestRow> run_selftest(const SelftestOptions& opt = {});

// Columns module, invariant, value, tolerance, pass.
CsvTable selftest_table(const std::vector<SelftestRow>& rows);

}  // namespace cpheat
