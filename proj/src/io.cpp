#include "cpheat/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

namespace cpheat {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(const std::string& s) {
  const std::string v = trim(s);
  if (v == "nan") return std::nan("");
  if (v == "inf") return kInf;
  if (v == "-inf") return kNegInf;
  if (v.empty()) fail(ErrorCode::InvalidArgument, "empty number");
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end != v.c_str() + v.size()) fail(ErrorCode::InvalidArgument, "not a number: " + v);
  return x;
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  fail(ErrorCode::InvalidArgument, "no CSV column " + name);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << csv_field(fields[i]);
  }
  out << '\n';
}

void write_csv(std::ostream& out, const CsvTable& table) {
  write_csv_row(out, table.header);
  for (const auto& r : table.rows) write_csv_row(out, r);
}

CsvTable read_csv(std::istream& in) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> rec;
  std::string field;
  bool quoted = false, any = false;
  char c;
  auto end_record = [&]() {
    rec.push_back(field);
    records.push_back(rec);
    rec.clear();
    field.clear();
    any = false;
  };
  while (in.get(c)) {
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      if (!field.empty()) fail(ErrorCode::InvalidArgument, "stray quote in CSV field");
      quoted = true;
      any = true;
    } else if (c == ',') {
      rec.push_back(field);
      field.clear();
      any = true;
    } else if (c == '\n') {
      end_record();
    } else if (c != '\r') {
      field += c;
      any = true;
    }
  }
  if (quoted) fail(ErrorCode::InvalidArgument, "unterminated quoted CSV field");
  if (any || !rec.empty()) end_record();

  CsvTable t;
  if (records.empty()) return t;
  t.header = records.front();
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].size() != t.header.size())
      fail(ErrorCode::InvalidArgument, "CSV row " + std::to_string(i) + " has the wrong field count");
    t.rows.push_back(std::move(records[i]));
  }
  return t;
}

CsvTable read_csv(const std::string& text) {
  std::istringstream in(text);
  return read_csv(in);
}

std::map<std::string, std::string> parse_config(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::InvalidArgument, "config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) fail(ErrorCode::InvalidArgument, "config line " + std::to_string(lineno) + ": empty key");
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

void RunConfig::apply(const std::map<std::string, std::string>& kv) {
  for (const auto& [k, v] : kv) {
    if (k == "space") space = v;
    else if (k == "t") t = parse_double(v);
    else if (k == "r_max") r_max = parse_double(v);
    else if (k == "r_step") r_step = parse_double(v);
    else if (k == "lambda_max") lambda_max = parse_double(v);
    else if (k == "lambda_step") lambda_step = parse_double(v);
    else if (k == "abs_tol") quad.abs_tol = parse_double(v);
    else if (k == "rel_tol") quad.rel_tol = parse_double(v);
    else if (k == "max_subdivisions") quad.max_subdivisions = static_cast<int>(parse_double(v));
    else if (k == "tail_cutoff_sigma") quad.tail_cutoff_sigma = parse_double(v);
    else if (k == "output") output_path = v;
    else if (k == "seed") seed = std::stoull(v);
    else fail(ErrorCode::InvalidArgument, "unknown config key " + k);
  }
}

void RunConfig::validate() const {
  for (double x : {t, r_max, r_step, lambda_max, lambda_step})
    if (!(x > 0.0) || !std::isfinite(x)) fail(ErrorCode::InvalidArgument, "numeric settings must be positive");
  quad.validate();
}

}  // namespace cpheat
