#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = hyperslice::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("volume: three methods agree") {
  const Run r = run({"volume", "--d", "5", "--diagonal", "--t", "1.0", "--method", "all"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["spec"]["d"] == 5);
  CHECK(doc["spec"]["b"].get<double>() == doctest::Approx(std::sqrt(5.0) / 2 - 1.0));
  REQUIRE(doc["results"].size() == 3);
  const double sum = doc["results"][0]["value"];
  CHECK(sum == doctest::Approx(4.5211e-4).epsilon(1e-4));
  CHECK(doc["results"][0]["method"] == "vertex_sum");
  CHECK(doc["results"][0]["cut"]["kind"] == "corner");
  CHECK(doc["results"][1]["method"] == "integral");
  CHECK(std::abs(doc["results"][1]["value"].get<double>() - sum) < 1e-8);
  const double mc = doc["results"][2]["value"];
  const double se = doc["results"][2]["err"];
  CHECK(std::abs(mc - sum) <= 4 * se);
}

TEST_CASE("volume: hexagon and empty cut") {
  Run r = run({"volume", "--d", "3", "--diagonal", "--t", "0", "--method", "sum"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["results"][0]["value"].get<double>() ==
        doctest::Approx(1.2990381056766580));
  r = run({"volume", "--d", "4", "--a", "1,0,0,0", "--t", "0.6"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["results"][0]["value"] == 0.0);
  CHECK(doc["results"][0]["cut"]["kind"] == "empty");
}

TEST_CASE("volume: input errors exit 2") {
  CHECK(run({"volume", "--d", "3", "--t", "0.1"}).code == 2);
  CHECK(run({"volume", "--d", "3", "--a", "1,2", "--t", "0.1"}).code == 2);
  CHECK(run({"volume", "--a", "1,x,2", "--t", "0.1"}).code == 2);
  CHECK(run({"volume", "--a", "1,-1,2", "--t", "0.1"}).code == 2);
  CHECK(run({"volume", "--d", "3", "--diagonal", "--t", "-1"}).code == 2);
  CHECK(run({"volume", "--d", "3", "--diagonal", "--t", "0.1", "--method", "exact"}).code == 2);
  CHECK(run({"volume", "--a", "1,0,0", "--t", "0.1", "--method", "integral"}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("volume: numerical failures exit 3") {
  std::vector<std::string> args{"volume", "--d", "31", "--diagonal", "--t", "0.1"};
  CHECK(run(args).code == 3);
}

TEST_CASE("maximize") {
  Run r = run({"maximize", "--d", "5", "--t", "1.0"});
  REQUIRE(r.code == 0);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["angle_to_diagonal"].get<double>() < 1e-4);
  CHECK(doc["starts"] == 64);
  r = run({"maximize", "--d", "3", "--t", "0.8", "--starts", "8"});
  REQUIRE(r.code == 0);
  doc = nlohmann::json::parse(r.out);
  CHECK(doc["angle_to_diagonal"].get<double>() < 1e-4);
  CHECK(doc["best_V"].get<double>() ==
        doctest::Approx(doc["closed_form_V"].get<double>()).epsilon(1e-9));
  r = run({"maximize", "--d", "5", "--t", "1.2"});
  REQUIRE(r.code == 0);
  doc = nlohmann::json::parse(r.out);
  CHECK(doc["best_V"] == 0.0);
  CHECK(doc["degenerate"] == true);
  CHECK(run({"maximize", "--d", "5", "--t", "0.4"}).code == 2);
}

TEST_CASE("certify") {
  Run r = run({"certify", "--d-range", "6:40", "--grid", "10000"});
  CHECK(r.code == 0);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["reports"].size() == 35);
  for (const auto& rep : doc["reports"]) {
    CHECK(rep["max_alpha"].get<double>() < 0);
    CHECK(rep["max_2alpha_plus_beta"].get<double>() < 0);
    CHECK(rep["max_alpha_plus_beta_plus_gamma"].get<double>() < 0);
  }
  for (const auto& k : doc["decay"]) CHECK(k["holds"] == true);

  r = run({"certify", "--d-range", "5:5"});
  CHECK(r.code == 0);
  doc = nlohmann::json::parse(r.out);
  CHECK(doc["reports"][0]["grid_points_with_root"].get<int>() > 0);
  CHECK(doc["reports"][0]["max_root_deviation_from_y_plus_1"].get<double>() < 1e-12);
  CHECK(r.out.find("informational") != std::string::npos);

  r = run({"certify", "--d-range", "3:3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("2alpha+beta < 0 and alpha+beta+gamma < 0: out of hypothesis") !=
        std::string::npos);

  r = run({"certify", "--d-range", "6:8", "--rigorous"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["reports"][0]["rigorous"]["alpha_beta_gamma"] == true);

  CHECK(run({"certify", "--d-range", "8:6"}).code == 2);
  CHECK(run({"certify", "--d-range", "1:4"}).code == 2);
  CHECK(run({"certify", "--d-range", "x"}).code == 2);
}

TEST_CASE("scan: diagonal sweep decreases") {
  const double lo = std::sqrt(3.0) / 2 + 1e-6, hi = std::sqrt(5.0) / 2 - 1e-6;
  char range[128];
  std::snprintf(range, sizeof range, "%.17g:%.17g:50", lo, hi);
  const Run r = run({"scan", "--d", "5", "--t-range", range});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 51);
  CHECK(rows[0] == std::vector<std::string>{"d", "t", "V_closed", "V_best", "angle",
                                            "count_below", "kind"});
  for (std::size_t i = 2; i < rows.size(); ++i) {
    CHECK(std::stod(rows[i][2]) < std::stod(rows[i - 1][2]));
  }
}

TEST_CASE("scan: classify transitions and empty rows") {
  Run r = run({"scan", "--d", "4", "--t-range", "0.5:1.1:25", "--mode", "classify"});
  REQUIRE(r.code == 0);
  auto rows = csv_rows(r.out);
  bool saw_empty = false;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i][6] == "empty") {
      saw_empty = true;
      CHECK(rows[i][3] == "0");
      CHECK(rows[i][5] == "0");
    }
  }
  CHECK(saw_empty);

  // One small coordinate: an edge cut that shrinks to a corner once b drops
  // below that coordinate (near t = 0.851).
  r = run({"scan", "--d", "4", "--t-range", "0.80:0.87:8", "--mode", "classify", "--a",
           "0.05,1,1,1"});
  REQUIRE(r.code == 0);
  rows = csv_rows(r.out);
  std::vector<int> counts;
  for (std::size_t i = 1; i < rows.size(); ++i) counts.push_back(std::stoi(rows[i][5]));
  CHECK(counts.front() == 2);
  CHECK(counts.back() == 1);
  CHECK(std::is_sorted(counts.rbegin(), counts.rend()));
}

TEST_CASE("scan: maximize mode and bad grids") {
  const Run r = run({"scan", "--d", "3", "--t-range", "0.75:0.85:3", "--mode", "maximize"});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::stod(rows[i][4]) < 1e-4);
  CHECK(run({"scan", "--d", "3", "--t-range", "1:0:3"}).code == 2);
  CHECK(run({"scan", "--d", "3", "--t-range", "0:1"}).code == 2);
  CHECK(run({"scan", "--d", "3", "--t-range", "0:1:0"}).code == 2);
  CHECK(run({"scan", "--d", "3", "--t-range", "0.1:1:4", "--mode", "maximize"}).code == 2);
  CHECK(run({"scan", "--d", "3", "--t-range", "0.1:1:4", "--mode", "wat"}).code == 2);
}

TEST_CASE("outputs are byte-identical across runs") {
  const std::vector<std::string> args{"volume", "--d",      "4",   "--diagonal", "--t", "0.3",
                                      "--method", "all", "--seed", "17"};
  CHECK(run(args).out == run(args).out);
  const std::vector<std::string> scan{"scan", "--d", "4", "--t-range", "0.9:0.99:4", "--mode",
                                      "maximize"};
  CHECK(run(scan).out == run(scan).out);
}

TEST_CASE("config file, flags win") {
  const std::string path = "hyperslice_test_config.cfg";
  {
    std::ofstream f(path);
    f << "# sample\nd = 5\ndiagonal = true\nt = 0.9\nmethod = sum\n";
  }
  Run r = run({"volume", "--config", path, "--t", "1.0"});
  REQUIRE(r.code == 0);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["spec"]["t"] == 1.0);
  CHECK(doc["results"].size() == 1);
  r = run({"volume", "--config", path});
  doc = nlohmann::json::parse(r.out);
  CHECK(doc["spec"]["t"] == 0.9);
  CHECK(run({"volume", "--config", "does-not-exist.cfg"}).code == 2);
  std::remove(path.c_str());
}
