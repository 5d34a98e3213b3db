#include <algorithm>
#include <sstream>

#include "charshift/cli.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace charshift;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<nlohmann::json> json_lines(const std::string& text) {
  std::vector<nlohmann::json> lines;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) lines.push_back(nlohmann::json::parse(line));
  return lines;
}

}  // namespace

TEST_CASE("slsp batch") {
  const Run r = run({"slsp", "--p", "7", "--shift", "3", "--trials", "100", "--seed", "1"});
  REQUIRE(r.code == 0);
  const auto lines = json_lines(r.out);
  REQUIRE(lines.size() == 101);
  for (std::size_t t = 0; t < 100; ++t) {
    CHECK(lines[t]["trial"] == t);
    CHECK(lines[t]["recovered_s"] == 3);
    CHECK(lines[t]["correct"] == true);
  }
  const auto& summary = lines.back();
  CHECK(summary["command"] == "slsp");
  CHECK(summary["success_rate"] == 1.0);
  CHECK(summary["exact_attempt_probability"].get<double>() == doctest::Approx(6.0 / 7.0).epsilon(1e-12));
  CHECK(summary["wall_time_ms"].is_null());
  CHECK(summary.contains("coherent_queries_total"));
  CHECK(summary.contains("mean_attempts"));
}

TEST_CASE("other solver commands") {
  const Run sq = run({"sqcp", "--p", "3", "--r", "2", "--trials", "10"});
  REQUIRE(sq.code == 0);
  CHECK(json_lines(sq.out).back()["exact_attempt_probability"].get<double>() == doctest::Approx(1.0));
  const Run fixed = run({"sqcp", "--p", "3", "--r", "2", "--shift", "2,1", "--trials", "3"});
  REQUIRE(fixed.code == 0);
  CHECK(json_lines(fixed.out)[0]["recovered_s"] == "2,1");

  const Run sj = run({"sjsp", "--n", "15", "--shift", "7", "--trials", "5", "--workers", "3"});
  REQUIRE(sj.code == 0);
  const auto lines = json_lines(sj.out);
  for (std::size_t t = 0; t < 5; ++t) CHECK(lines[t]["trial"] == t);
  CHECK(lines.back()["exact_attempt_probability"].get<double>() == doctest::Approx(8.0 / 15.0));

  const Run su = run({"sjsp-unknown", "--n", "21", "--M", "16384", "--trials", "3"});
  REQUIRE(su.code == 0);
  const auto ul = json_lines(su.out);
  CHECK(ul[0]["recovered_n"] == 21);
  CHECK_FALSE(ul.back().contains("exact_attempt_probability"));
}

TEST_CASE("csv output") {
  const Run r = run({"slsp", "--p", "5", "--trials", "2", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("trial,recovered_s,recovered_n,attempts,coherent_queries,classical_queries,correct\n", 0) == 0);
  CHECK(r.out.find("\nfield,value\n") != std::string::npos);
}

TEST_CASE("configuration errors exit with 2") {
  CHECK(run({"slsp", "--p", "4"}).code == 2);
  CHECK(run({"slsp", "--p", "7", "--shift", "9"}).code == 2);
  CHECK(run({"slsp", "--p", "7", "--shift", "x"}).code == 2);
  CHECK(run({"slsp", "--p", "7", "--trials", "0"}).code == 2);
  CHECK(run({"sjsp", "--n", "45"}).code == 2);
  CHECK(run({"sjsp-unknown", "--n", "15", "--M", "224"}).code == 2);
  CHECK(run({"sqcp", "--p", "3", "--r", "2", "--shift", "1"}).code == 2);
  CHECK(run({"gauss"}).code == 2);
  CHECK(run({"gauss", "--zp", "9"}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({"oracle-dump", "--p", "100003"}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("gauss command") {
  const Run zp = run({"gauss", "--zp", "7"});
  CHECK(zp.code == 0);
  CHECK(zp.out.find("closed_form: i*sqrt(7)\n") != std::string::npos);
  CHECK(run({"gauss", "--zn", "15"}).out.find("closed_form: i*sqrt(15)\n") != std::string::npos);
  const Run fq = run({"gauss", "--fq", "3", "2"});
  CHECK(fq.code == 0);
  CHECK(fq.out.find("closed_form: sqrt(9)\n") != std::string::npos);
  CHECK(fq.out.find("value: 3 + 0i\n") != std::string::npos);
}

TEST_CASE("verify command") {
  const Run l3 = run({"verify", "lemma3", "--n", "15", "--shift", "2"});
  CHECK(l3.code == 0);
  CHECK(l3.out.find("max_deviation") != std::string::npos);
  const Run tft = run({"verify", "tft", "--p", "3", "--r", "2"});
  CHECK(tft.code == 0);
  CHECK(tft.out.find("trace_coordinates_bijective: yes") != std::string::npos);
  const Run rf = run({"verify", "rfcf", "--n", "15", "--M", "1024"});
  CHECK(rf.code == 0);
  CHECK(rf.out.find("limit 4.688e-01") != std::string::npos);
}

TEST_CASE("oracle dump") {
  const Run r = run({"oracle-dump", "--p", "7", "--shift", "0"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "0,0\n1,1\n2,1\n3,-1\n4,1\n5,-1\n6,-1\n");
  const Run j = run({"oracle-dump", "--n", "15", "--M", "300", "--shift", "2"});
  REQUIRE(j.code == 0);
  CHECK(std::count(j.out.begin(), j.out.end(), '\n') == 300);
  const Run f = run({"oracle-dump", "--p", "3", "--r", "2"});
  REQUIRE(f.code == 0);
  CHECK(std::count(f.out.begin(), f.out.end(), '\n') == 9);
  CHECK(f.out.find(",0\n") != std::string::npos);
}

TEST_CASE("equal seeds give identical output") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"slsp", "--p", "11", "--trials", "20", "--seed", "5"},
           {"sjsp", "--n", "35", "--trials", "10", "--seed", "5", "--workers", "4"},
           {"sjsp-unknown", "--n", "15", "--M", "4096", "--trials", "5", "--seed", "8"},
           {"sqcp", "--p", "5", "--r", "2", "--trials", "10", "--seed", "2", "--format", "csv"}}) {
    CHECK(run(args).out == run(args).out);
  }
}
