#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wyner/cli.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "wynerdof");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = wyner::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  const std::string path = "cli_test_" + name;
  std::ofstream(path) << text;
  return path;
}

const std::vector<std::string> kEx = {"--K", "7", "--tl", "1", "--tr", "1", "--rl", "1", "--rr", "1"};

std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

}  // namespace

TEST_CASE("mg") {
  const Result r = call({"mg", "--topology", "asym", "--K", "7", "--tl", "2", "--tr", "1", "--rl",
                         "2", "--rr", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "{\"lower\":6,\"upper\":6,\"exact\":true}\n");
  CHECK(call(with({"mg", "--alpha", "0.3"}, kEx)).out == "{\"lower\":6,\"upper\":6,\"exact\":true}\n");
  CHECK(call(with({"mg", "--alpha", "root:3:1"}, kEx)).out ==
        "{\"lower\":5,\"upper\":5,\"exact\":true}\n");
}

TEST_CASE("roots") {
  const Result r = call({"roots", "--p", "3"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["roots"].size() == 2);
  CHECK(j["roots"][1]["alpha"].get<double>() == doctest::Approx(0.7071).epsilon(1e-4));
  CHECK(j["roots"][0]["multiplicity"] == 1);
}

TEST_CASE("converse") {
  const Result r = call({"converse", "--family", "asym", "--topology", "asym", "--K", "10", "--tl",
                         "1", "--tr", "0", "--rl", "1", "--rr", "0", "--alpha", "0.7", "--trials",
                         "100"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["max_abs_error"].get<double>() < 1e-9);
  // a non-root alpha has no second upper bound
  CHECK(call(with({"converse", "--family", "ub2", "--alpha", "0.3"}, kEx)).code == 2);
  CHECK(call(with({"entropy", "--family", "ub1", "--alpha", "0.9"}, kEx)).code == 0);
}

TEST_CASE("plan round trip through certify") {
  const Result p = call(with({"plan", "--alpha", "root:3:1"}, kEx));
  REQUIRE(p.code == 0);
  const std::string path = temp_file("plan.json", p.out);
  const Result c = call({"certify", "--plan", path, "--alpha", "root:3:1"});
  CHECK(c.code == 0);
  const auto j = nlohmann::json::parse(c.out);
  CHECK(j["pass"] == true);
  CHECK(j["certified_dof"] == 5);
  std::remove(path.c_str());

  const Result bad = call(
      with({"certify", "--alpha", "root:3:1", "--family", "silence", "--silence", "4", "--claim-full"},
           kEx));
  CHECK(bad.code == 1);
}

TEST_CASE("instance files") {
  const std::string path = temp_file(
      "instance.json",
      R"({"K":7,"t_left":1,"t_right":1,"r_left":1,"r_right":1,"topology":"symmetric","gains":{"kind":"equal","alpha":"root:3:1"}})");
  const Result r = call({"mg", "--instance", path});
  CHECK(r.code == 0);
  CHECK(r.out == "{\"lower\":5,\"upper\":5,\"exact\":true}\n");
  const Result c = call({"certify", "--instance", path});
  CHECK(c.code == 0);
  CHECK(nlohmann::json::parse(c.out)["certified_dof"] == 5);
  std::remove(path.c_str());
  const std::string bad = temp_file("bad.json", "{\"K\": 3,");
  CHECK(call({"mg", "--instance", bad}).code == 2);
  std::remove(bad.c_str());
}

TEST_CASE("input errors exit with 2") {
  CHECK(call({"mg", "--K", "7", "--unknown", "3"}).code == 2);
  CHECK(call({"mg", "--K", "0"}).code == 2);
  CHECK(call({}).code == 2);
  CHECK(call(with({"mg", "--alpha", "zero"}, kEx)).code == 2);
  CHECK(call(with({"mg", "--alpha", "0"}, kEx)).code == 2);
  CHECK(call({"certify", "--plan", "no_such_file.json", "--alpha", "0.3"}).code == 2);
  const Result r = call({"mg", "--K", "3", "--tl", "-1"});
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("simulate and offset csv") {
  const Result s = call(with({"simulate", "--alpha", "0.3", "--points", "3"}, kEx));
  CHECK(s.code == 0);
  CHECK(s.out.rfind("P,sum_rate_nats,plan_id\n", 0) == 0);
  CHECK(std::count(s.out.begin(), s.out.end(), '\n') == 4);

  const Result o = call({"offset", "--L", "2", "--alpha-star", "root:3:1"});
  CHECK(o.code == 0);
  CHECK(o.out.rfind("alpha,offset_proxy\n", 0) == 0);
  CHECK(std::count(o.out.begin(), o.out.end(), '\n') == 11);
}

TEST_CASE("sweep is ordered and independent of the job count") {
  const std::string path = temp_file(
      "sweep.json",
      R"({"K":[5,6,7,8],"tl":[1],"tr":[0,1],"rl":[1],"rr":[1],"alpha":["0.3","root:3:1"],"checks":["mg","certify","converse"]})");
  const Result one = call({"sweep", "--spec", path, "--jobs", "1"});
  const Result four = call({"sweep", "--spec", path, "--jobs", "4"});
  CHECK(one.code == 0);
  CHECK(one.out == four.out);
  std::istringstream lines(one.out);
  std::string line;
  std::getline(lines, line);
  int expect = 0;
  while (std::getline(lines, line)) CHECK(std::stoi(line.substr(0, line.find(','))) == expect++);
  CHECK(expect == 16);
  std::remove(path.c_str());
}

TEST_CASE("random check") {
  CHECK(call({"random-check", "--K", "10", "--trials", "10"}).code == 0);
  const Result neg = call({"random-check", "--K", "10", "--alpha", "root:3:1"});
  CHECK(neg.code == 1);
  CHECK(nlohmann::json::parse(neg.out)["first_failing_size"] == 3);
}

TEST_CASE("output is deterministic") {
  const auto args = with({"bounds", "--alpha", "-0.45"}, kEx);
  CHECK(call(args).out == call(args).out);
}
