#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "frobeval/cli.hpp"
#include "frobeval/io.hpp"
#include "frobeval/mpoly.hpp"

using namespace frobeval;

namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(std::initializer_list<const char*> args) {
  std::vector<const char*> argv = {"frobeval"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = "cli_test_" + name;
  std::ofstream f(path);
  f << content;
  return path;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("cost table reproduces the depth sweep") {
  CliRun res = run({"cost", "--p", "2", "--r", "2", "--n", "16"});
  REQUIRE(res.code == 0);
  std::vector<std::string> lines = lines_of(res.out);
  REQUIRE(lines.size() >= 8);
  CHECK(lines[0] == "L,predicted,implemented,p_powers,reconstruction,table,scalar_pre");
  CHECK(lines[1].rfind("0,150,150", 0) == 0);
  CHECK(lines[2].rfind("1,49,49", 0) == 0);
  CHECK(lines[3].rfind("2,47,47", 0) == 0);
  CHECK(lines[4].rfind("3,150,150", 0) == 0);
  bool saw_lopt = false;
  for (const std::string& l : lines) saw_lopt |= l == "L_opt,2";
  CHECK(saw_lopt);
}

TEST_CASE("cost json carries the same numbers as csv") {
  CliRun csv = run({"cost", "--p", "3", "--r", "2", "--n", "50"});
  CliRun js = run({"cost", "--p", "3", "--r", "2", "--n", "50", "--format", "json"});
  REQUIRE(csv.code == 0);
  REQUIRE(js.code == 0);
  nlohmann::json j = nlohmann::json::parse(js.out);
  std::vector<std::string> lines = lines_of(csv.out);
  for (const auto& row : j.at("rows")) {
    const u64 L = row.at("L").get<u64>();
    std::string expect = std::to_string(L) + "," +
                         std::to_string(row.at("predicted").get<u64>()) + "," +
                         std::to_string(row.at("implemented").get<u64>());
    CHECK(lines[1 + L].rfind(expect, 0) == 0);
  }
  for (const std::string& line : lines) {
    auto comma = line.find(',');
    if (line.rfind("center,", 0) == 0)
      CHECK(std::stod(line.substr(comma + 1)) == j.at("center").get<double>());
    if (line.rfind("asym_lower,", 0) == 0)
      CHECK(std::stod(line.substr(comma + 1)) == j.at("asym_lower").get<double>());
  }
}

TEST_CASE("cost and bench are byte-stable across runs") {
  CliRun a = run({"cost", "--p", "5", "--r", "3", "--n", "200"});
  CliRun b = run({"cost", "--p", "5", "--r", "3", "--n", "200"});
  CHECK(a.out == b.out);
  CliRun c = run({"bench", "--p", "2", "--r", "2", "--n-range", "4:32:4", "--seed", "7"});
  CliRun d = run({"bench", "--p", "2", "--r", "2", "--n-range", "4:32:4", "--seed", "7"});
  REQUIRE(c.code == 0);
  CHECK(c.out == d.out);
}

TEST_CASE("bench sweep columns") {
  CliRun res = run({"bench", "--p", "2", "--r", "2", "--n-range", "8:16:8", "--seed", "1"});
  REQUIRE(res.code == 0);
  std::vector<std::string> lines = lines_of(res.out);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "n,direct,predicted_opt,measured,L_opt,ratio");
  CHECK(lines[1] == "8,42,19,19,1,0.452381");
  CHECK(lines[2] == "16,150,47,47,2,0.313333");
}

TEST_CASE("bench rejects empty or malformed ranges") {
  CHECK(run({"bench", "--p", "2", "--r", "2", "--n-range", "16:8"}).code == 2);
  CHECK(run({"bench", "--p", "2", "--r", "2", "--n-range", "8"}).code == 2);
  CHECK(run({"bench", "--p", "2", "--r", "2", "--n-range", "a:b"}).code == 2);
  CHECK(run({"bench", "--p", "2", "--r", "2"}).code == 2);
}

TEST_CASE("verify exits zero on sound configurations") {
  CHECK(run({"verify", "--p", "2", "--r", "2", "--n", "8", "--m", "4", "--trials", "20",
             "--seed", "1"}).code == 0);
  CHECK(run({"verify", "--p", "3", "--s", "2", "--r", "2", "--n", "5", "--m", "2",
             "--trials", "10", "--seed", "2"}).code == 0);
  CHECK(run({"verify", "--p", "2", "--r", "1", "--n", "0", "--m", "1", "--trials", "5"}).code == 0);
}

TEST_CASE("verify rejects invalid parameters with exit 2") {
  CliRun res = run({"verify", "--p", "4", "--r", "2", "--n", "8", "--m", "4"});
  CHECK(res.code == 2);
  CHECK(res.err.find("p must be prime") != std::string::npos);
  CHECK(run({"verify", "--p", "2", "--s", "2", "--r", "2", "--n", "4", "--m", "3"}).code == 2);
}

TEST_CASE("eval prints the value and the ledger") {
  const std::string poly = write_temp("p1.json", poly_to_json(random_poly(1, 2, 1, 2, 8)).dump());
  const std::string constant =
      write_temp("p0.json", R"({"p":2,"s":1,"r":2,"n":0,"coeffs":[1]})");
  const std::string point =
      write_temp("pt.json", R"({"m":4,"coords":[[1,0,1,0],[0,1,1,0]]})");

  SUBCASE("constant polynomial costs nothing") {
    CliRun res = run({"eval", "--input", constant.c_str(), "--point", point.c_str(),
                      "--L", "0", "--format", "json"});
    REQUIRE(res.code == 0);
    nlohmann::json j = nlohmann::json::parse(res.out);
    CHECK(j.at("value") == nlohmann::json::array({1, 0, 0, 0}));
    CHECK(j.at("ledger").at("total").get<u64>() == 0);
  }
  SUBCASE("depth-1 structural ledger totals 19") {
    CliRun res = run({"eval", "--input", poly.c_str(), "--point", point.c_str(),
                      "--L", "1", "--format", "json"});
    REQUIRE(res.code == 0);
    nlohmann::json j = nlohmann::json::parse(res.out);
    CHECK(j.at("L_used").get<u64>() == 1);
    CHECK(j.at("ledger").at("total").get<u64>() == 19);
  }
  SUBCASE("value-aware never exceeds structural") {
    CliRun res = run({"eval", "--input", poly.c_str(), "--point", point.c_str(),
                      "--L", "1", "--count-mode", "value-aware", "--format", "json"});
    REQUIRE(res.code == 0);
    nlohmann::json j = nlohmann::json::parse(res.out);
    CHECK(j.at("ledger").at("total").get<u64>() <= 19);
  }
  SUBCASE("auto depth reports L_used") {
    CliRun res = run({"eval", "--input", poly.c_str(), "--point", point.c_str(),
                      "--format", "json"});
    REQUIRE(res.code == 0);
    nlohmann::json j = nlohmann::json::parse(res.out);
    CHECK(j.at("L_used").get<u64>() == 1);
    CHECK(j.at("ledger").at("total").get<u64>() == 19);
  }
  std::remove(poly.c_str());
  std::remove(constant.c_str());
  std::remove(point.c_str());
}

TEST_CASE("eval handles extension coefficients end to end") {
  const std::string poly =
      write_temp("ps2.json", poly_to_json(random_poly(4, 2, 2, 2, 5)).dump());
  const std::string point =
      write_temp("pts2.json", R"({"m":4,"coords":[[1,1,0,0],[0,0,1,0]]})");
  CliRun res = run({"eval", "--input", poly.c_str(), "--point", point.c_str(),
                    "--L", "1", "--format", "json"});
  REQUIRE(res.code == 0);
  nlohmann::json j = nlohmann::json::parse(res.out);
  CHECK(j.at("ledger").at("combination_mults").get<u64>() == 1);
  CHECK(j.at("value").size() == 4);

  // s = 2 requires s | m: reject an incompatible point field.
  const std::string odd = write_temp("pts3.json", R"({"m":1,"coords":[[1],[0]]})");
  CHECK(run({"eval", "--input", poly.c_str(), "--point", odd.c_str()}).code == 2);
  std::remove(poly.c_str());
  std::remove(point.c_str());
  std::remove(odd.c_str());
}

TEST_CASE("eval reports the offending file on malformed input") {
  const std::string bad = write_temp("bad.json", R"({"p":2,"s":1,"r":2,"n":1})");
  const std::string point = write_temp("pt2.json", R"({"m":2,"coords":[[1,0],[0,1]]})");
  CliRun res = run({"eval", "--input", bad.c_str(), "--point", point.c_str()});
  CHECK(res.code == 2);
  CHECK(res.err.find(bad) != std::string::npos);
  CHECK(res.err.find("coeffs") != std::string::npos);

  CliRun missing = run({"eval", "--input", "no_such_file.json", "--point", point.c_str()});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("no_such_file.json") != std::string::npos);

  const std::string short_point = write_temp("pt3.json", R"({"m":2,"coords":[[1,0]]})");
  const std::string poly = write_temp("p2.json", R"({"p":2,"s":1,"r":2,"n":0,"coeffs":[1]})");
  CliRun wrong = run({"eval", "--input", poly.c_str(), "--point", short_point.c_str()});
  CHECK(wrong.code == 2);
  CHECK(wrong.err.find(short_point) != std::string::npos);
  std::remove(bad.c_str());
  std::remove(point.c_str());
  std::remove(short_point.c_str());
  std::remove(poly.c_str());
}

TEST_CASE("numeric overflow exits with code 3") {
  CliRun res = run({"cost", "--p", "2", "--r", "8", "--n", "1000000"});
  CHECK(res.code == 3);
  CHECK(res.err.find("overflow") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"cost", "--p", "2", "--r", "0", "--n", "5"}).code == 2);
  CHECK(run({"cost", "--p", "2", "--r", "2", "--n", "5", "--format", "xml"}).code == 2);
  CHECK(run({"eval", "--input", "x.json"}).code == 2);  // --point is required
}
