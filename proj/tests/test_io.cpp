#include <sstream>

#include "cpheat/io.hpp"
#include "doctest.h"

using namespace cpheat;

TEST_CASE("format_double round-trips") {
  for (double x : {0.0, -0.0, 1.0 / 3.0, 1e-300, 6.02214076e23, -2.5, 5e-324}) CHECK(parse_double(format_double(x)) == x);
  CHECK(format_double(kInf) == "inf");
  CHECK(std::isnan(parse_double("nan")));
  CHECK(parse_double("-inf") == kNegInf);
  CHECK_THROWS_AS(parse_double("1.0x"), NumericError);
  CHECK_THROWS_AS(parse_double(" "), NumericError);
}

TEST_CASE("CSV quoting and reading") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");

  CsvTable t;
  t.header = {"id", "text", "x"};
  t.rows = {{"1", "a,b", "0.5"}, {"2", "line\nbreak", "-1"}, {"3", "", "\"q\""}};
  std::ostringstream out;
  write_csv(out, t);
  const CsvTable back = read_csv(out.str());
  CHECK(back.header == t.header);
  CHECK(back.rows == t.rows);
  CHECK(back.column("x") == 2);
  CHECK_THROWS_AS(back.column("missing"), NumericError);
  CHECK_THROWS_AS(read_csv("a,b\n1\n"), NumericError);
  CHECK_THROWS_AS(read_csv("a\n\"open\n"), NumericError);
  CHECK(read_csv("a,b\r\n1,2\r\n").rows.front() == std::vector<std::string>{"1", "2"});
}

TEST_CASE("config files") {
  std::istringstream in("# comment\nspace = Hn_complex(2)\n\n t=0.25  # inline\nseed = 11\noutput = out.csv\n");
  RunConfig cfg;
  cfg.apply(parse_config(in));
  CHECK(cfg.space == "Hn_complex(2)");
  CHECK(cfg.t == 0.25);
  CHECK(cfg.seed == 11);
  CHECK(cfg.output_path == "out.csv");
  CHECK_NOTHROW(cfg.validate());

  std::istringstream bad("t = 1\nnot a pair\n");
  try {
    parse_config(bad);
    FAIL("expected an error");
  } catch (const NumericError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  RunConfig c2;
  CHECK_THROWS_AS(c2.apply({{"colour", "red"}}), NumericError);
  c2.apply({{"t", "-1"}});
  CHECK_THROWS_AS(c2.validate(), NumericError);
}
