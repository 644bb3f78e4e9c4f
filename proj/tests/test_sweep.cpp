#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "jcent/sweep.hpp"
#include "json.hpp"

using namespace jcent;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

SweepConfig toy_config(std::size_t steps) {
  SweepConfig cfg;
  cfg.lambda_steps = steps;
  cfg.alpha_steps = steps;
  cfg.alpha_max = 0.6;
  cfg.horizon = 10.0;
  cfg.coarse_steps = 200;
  return cfg;
}

}  // namespace

TEST_CASE("config parsing") {
  std::istringstream in(
      "# toy grid\n"
      "lambda_steps = 3\n"
      "  alpha_max=0.5   # trailing comment\n"
      "\n"
      "horizon = 12.5\n"
      "parallelism = 4\n");
  const auto cfg = parse_sweep_config(in);
  CHECK(cfg.lambda_steps == 3);
  CHECK(cfg.alpha_max == 0.5);
  CHECK(cfg.horizon == 12.5);
  CHECK(cfg.parallelism == 4);
  CHECK(cfg.alpha_steps == 50);
  CHECK_NOTHROW(cfg.validate());

  std::istringstream bad_key("colour = red\n");
  CHECK_THROWS_AS(parse_sweep_config(bad_key), std::invalid_argument);
  std::istringstream bad_value("horizon = ten\n");
  CHECK_THROWS_AS(parse_sweep_config(bad_value), std::invalid_argument);
  std::istringstream bad_line("horizon\n");
  CHECK_THROWS_AS(parse_sweep_config(bad_line), std::invalid_argument);
  std::istringstream bad_count("alpha_steps = 2.5\n");
  CHECK_THROWS_AS(parse_sweep_config(bad_count), std::invalid_argument);

  SweepConfig c;
  c.alpha_max = 1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.lambda_min = 0.8;
  c.lambda_max = 0.2;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.lambda_steps = 1;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("grid coordinates") {
  SweepConfig cfg;
  CHECK(cfg.lambda_at(0) == 0.0);
  CHECK(cfg.lambda_at(49) == 1.0);
  CHECK(cfg.alpha_at(49) == 0.99);
}

TEST_CASE("sweep CSV schema") {
  const auto records = run_sweep(toy_config(3));
  REQUIRE(records.size() == 9);
  std::ostringstream out;
  write_sweep_csv(out, records);
  const auto rows = lines_of(out.str());
  REQUIRE(rows.size() == 10);
  CHECK(rows[0] == "lambda,alpha,regime,max_log_neg,t_at_max,upper_bound,first_nppt_time");
  for (std::size_t k = 1; k < rows.size(); ++k) CHECK(std::count(rows[k].begin(), rows[k].end(), ',') == 6);
  // lambda outer, alpha inner
  CHECK(records[1].lambda == 0.0);
  CHECK(records[1].alpha == 0.3);
  CHECK(records[3].lambda == 0.5);
  for (const auto& r : records) {
    CHECK(r.max_log_neg <= r.upper_bound + 1e-9);
    if (r.regime == Regime::PptAllTimes) CHECK_FALSE(r.first_nppt_time.has_value());
  }
}

TEST_CASE("sweep output is independent of parallelism") {
  auto cfg = toy_config(4);
  std::ostringstream serial, parallel;
  write_sweep_csv(serial, run_sweep(cfg));
  cfg.parallelism = 3;
  write_sweep_csv(parallel, run_sweep(cfg));
  CHECK(serial.str() == parallel.str());
}

TEST_CASE("parallel_for propagates exceptions") {
  CHECK_THROWS_AS(parallel_for(20, 4,
                               [](std::size_t i) {
                                 if (i == 7) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
}

TEST_CASE("real formatting") {
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(format_real(0.5) == "0.5");
  CHECK(std::stod(format_real(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("boundary CSV") {
  const double grid[] = {0.1};
  std::ostringstream out;
  write_boundary_csv(out, boundary_curve(Boundary::Immediate, grid));
  const auto rows = lines_of(out.str());
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "lambda,alpha,which");
  CHECK(rows[1].starts_with("0.10000000000000001,0.037037037"));
  CHECK(rows[1].ends_with(",immediate"));
}

TEST_CASE("negativity CSV") {
  const auto series = max_log_negativity(ModelParams(1.0, 0.0), Truncation{8}, 5.0, 500);
  std::ostringstream out;
  write_negativity_csv(out, series);
  const auto rows = lines_of(out.str());
  REQUIRE(rows.size() == 503);
  CHECK(rows[0] == "t,log_negativity");
  CHECK(rows[1] == "0,0");
  CHECK(rows.back().starts_with("# t_max=0.785398"));
}

TEST_CASE("classify JSON") {
  const auto j = nlohmann::json::parse(classify_json(0.9, 0.99));
  CHECK(j["regime"] == "nppt_immediate");
  CHECK(j["lambda"] == 0.9);
  CHECK(j["cond_immediate"] == true);
  CHECK(nlohmann::json::parse(classify_json(0.5, 0.95))["regime"] == "ppt_all_times");
  CHECK_THROWS_AS(classify_json(1.5, 0.1), std::invalid_argument);
}

TEST_CASE("spectrum matching") {
  const auto m = match_spectrum({0.5, -0.5}, {-0.5, 1e-12, 0.5 + 1e-11});
  CHECK(m.padding == 1);
  CHECK(m.max_deviation == doctest::Approx(1e-11));
  CHECK(match_spectrum({-0.5, 0.5}, {-0.5, 0.0, 0.6}).max_deviation == doctest::Approx(0.1));
  CHECK_THROWS_AS(match_spectrum({0.1, 0.1}, {0.1}), std::invalid_argument);
}

TEST_CASE("verification run") {
  const auto a = run_verification(7, 12, 1);
  CHECK(a.passed);
  CHECK(a.text.ends_with("result: PASS\n"));
  const auto b = run_verification(7, 12, 3);
  CHECK(a.text == b.text);
}
