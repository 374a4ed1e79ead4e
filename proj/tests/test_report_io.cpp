#include <algorithm>
#include <cmath>

#include "besselft/report_io.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace besselft;

TEST_CASE("complex literals") {
  CHECK(parse_complex("0.3") == cplx(0.3, 0.0));
  CHECK(parse_complex("0.3+0.2i") == cplx(0.3, 0.2));
  CHECK(parse_complex("0.3-0.2i") == cplx(0.3, -0.2));
  CHECK(parse_complex("-2i") == cplx(0.0, -2.0));
  CHECK(parse_complex("i") == cplx(0.0, 1.0));
  CHECK(parse_complex("-i") == cplx(0.0, -1.0));
  CHECK(parse_complex("1e-3+2.5e+2i") == cplx(1e-3, 250.0));
  CHECK(parse_complex("-1E-3-1e-2i") == cplx(-1e-3, -1e-2));
  CHECK(parse_complex(" 1 + 2i ") == cplx(1.0, 2.0));
  CHECK(parse_complex("+4") == cplx(4.0, 0.0));
  for (const char* bad : {"", "abc", "1+", "1+2j", "1..2", "2ii", "0x10"})
    CHECK_THROWS_AS(parse_complex(bad), ParseError);

  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(1e-20) == "9.9999999999999995e-21");
  CHECK(format_complex(cplx(1.0, -0.5)) == "1-0.5i");
  CHECK(format_complex(cplx(0.25, 0.0)) == "0.25+0i");
  for (cplx z : {cplx(0.1, -1.0 / 3.0), cplx(-1e-300, 6.02e23), cplx(kPi, 0.0)})
    CHECK(parse_complex(format_complex(z)) == z);
}

TEST_CASE("json reports round-trip") {
  VerificationReport r;
  r.identity_name = "lemma1";
  r.params = {{"nu", cplx(0.3, 0.1)}, {"a", std::polar(1.0, kPi / 8.0)}, {"c", 2.0}, {"sign", -1.0}};
  r.lhs = cplx(0.1, 0.2);
  r.rhs = cplx(0.1, 0.2 + 1e-9);
  r.abs_err = 1e-9;
  r.rel_err = 4.47e-9;
  r.tol = 1e-4;
  r.pass = true;
  r.diagnostics = {"lhs_method=regularized", "note=\"quoted\""};
  std::string json = report_to_json(r);
  CHECK(json.rfind("{\"schema_version\":1,\"identity\":\"lemma1\"", 0) == 0);
  VerificationReport back = report_from_json(json);
  CHECK(back.params == r.params);
  CHECK(back.lhs == r.lhs);
  CHECK(back.rhs == r.rhs);
  CHECK(back.rel_err == r.rel_err);
  CHECK(back.pass);
  CHECK(back.diagnostics == r.diagnostics);
  CHECK(report_to_json(back) == json);

  r.lhs = cplx(std::nan(""), std::nan(""));
  r.rel_err = std::nan("");
  r.pass = false;
  VerificationReport failed = report_from_json(report_to_json(r));
  CHECK(std::isnan(failed.rel_err));
  CHECK_FALSE(failed.pass);

  CHECK_THROWS_AS(report_from_json("{\"schema_version\":2}"), ParseError);
  CHECK_THROWS_AS(report_from_json("not json"), ParseError);
}

TEST_CASE("csv sweeps") {
  SweepSummary none;
  CHECK(sweep_to_csv("weber", none) ==
        "schema_version,identity,nu,y,sign,lhs_re,lhs_im,rhs_re,rhs_im,abs_err,rel_err,tol,pass,failure\n");

  ParamGrid grid;
  grid.axes = {{"mu", {0.3, cplx(0.0, 0.1)}}, {"y", {1.0}}, {"theta", {0.7}}};
  SweepSummary s = sweep(grid, "consistency");
  std::string csv = sweep_to_csv("consistency", s);
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < csv.size()) {
    std::size_t end = csv.find('\n', start);
    lines.push_back(csv.substr(start, end - start));
    start = end + 1;
  }
  REQUIRE(lines.size() == 4);
  auto columns = [](const std::string& line) { return std::count(line.begin(), line.end(), ',') + 1; };
  for (const auto& line : lines) CHECK(columns(line) == columns(lines[0]));
  CHECK(lines[1].rfind("1,consistency,0.29999999999999999+0i,1+0i,0.69999999999999996+0i,", 0) == 0);
  CHECK(lines[3] == "1,summary,,,,,,,,," + format_number(s.max_rel_err) + ",,2/2,");
  CHECK(sweep_to_csv("consistency", sweep(grid, "consistency")) == csv);

  VerificationReport broken;
  broken.identity_name = "main";
  broken.diagnostics = {"failure=inner integral failed, at phi=1"};
  CHECK(failure_reason(broken) == "inner integral failed, at phi=1");
  SweepSummary one;
  one.reports = {broken};
  std::string row = sweep_to_csv("main", one);
  CHECK(row.find("inner integral failed; at phi=1") != std::string::npos);
}

TEST_CASE("evaluation records echo their inputs") {
  EvalRecord e{"J", {{"nu", 0.5}, {"z", 2.0}}, 0.0, {cplx(0.5, -0.25), 1e-16, Method::series}};
  CHECK(eval_to_json(e) ==
        "{\"schema_version\":1,\"function\":\"J\",\"inputs\":{\"nu\":\"0.5+0i\",\"z\":\"2+0i\"},\"arg\":0,"
        "\"value\":\"0.5-0.25i\",\"err_estimate\":9.9999999999999998e-17,\"method\":\"series\"}");
  CHECK(eval_to_csv(e) ==
        "schema_version,function,nu,z,arg,value_re,value_im,err_estimate,method\n"
        "1,J,0.5+0i,2+0i,0,0.5,-0.25,9.9999999999999998e-17,series\n");
  CHECK(eval_to_text(e).find("  value: 0.5-0.25i\n") != std::string::npos);
  auto parsed = nlohmann::ordered_json::parse(eval_to_json(e));
  CHECK(parse_complex(parsed["inputs"]["nu"].get<std::string>()) == cplx(0.5));
}
