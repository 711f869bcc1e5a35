#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "cpheat/numkernel.hpp"

namespace cpheat {

// 17 significant digits, '.' decimal separator; "inf", "-inf", "nan" for non-finite values.
std::string format_double(double x);
// Inverse of format_double; throws InvalidArgument on trailing garbage.
double parse_double(const std::string& s);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column index by name; throws InvalidArgument if absent.
  std::size_t column(const std::string& name) const;
};

// Fields holding a comma, quote or line break are quoted; quotes are doubled.
std::string csv_field(const std::string& s);
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);
void write_csv(std::ostream& out, const CsvTable& table);
// Header row first. Every row must have as many fields as the header.
CsvTable read_csv(std::istream& in);
CsvTable read_csv(const std::string& text);

// key = value lines; '#' starts a comment; blank lines ignored. Throws InvalidArgument
// with the line number on a line without '=' or with an empty key.
std::map<std::string, std::string> parse_config(std::istream& in);

struct RunConfig {
  std::string command;
  std::string space = "H3";
  double t = 0.5;
  double r_max = 12.0;
  double r_step = 0.05;
  double lambda_max = 5.0;
  double lambda_step = 0.05;
  QuadratureSpec quad;
  std::string output_path;  // empty: standard output
  std::uint64_t seed = 7;

  // Applies keys space, t, r_max, r_step, lambda_max, lambda_step, abs_tol, rel_tol,
  // max_subdivisions, tail_cutoff_sigma, output, seed. Unknown keys throw InvalidArgument.
  void apply(const std::map<std::string, std::string>& kv);
  // All numeric fields positive; throws InvalidArgument.
  void validate() const;
};

}  // namespace cpheat
