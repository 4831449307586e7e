#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "emso/analytic.hpp"
#include "emso/experiments.hpp"
#include "emso/io_format.hpp"
#include "emso/oracle.hpp"
#include "emso/parallel.hpp"

using namespace emso;

TEST_CASE("zero trials is an error") {
  CHECK_THROWS_AS(estimate_expectation(4, 0.5, 1, 1, 1, 0, Seed{1}), std::invalid_argument);
  CHECK_THROWS_AS(estimate_probability(4, 0.5, 0, Seed{1}, ProbabilityMode::union_of_all),
                  std::invalid_argument);
}

TEST_CASE("expectation estimate lands near the oracle truth") {
  auto res = estimate_expectation(4, 0.5, 1, 1, 1, 100000, Seed{42});
  double se = res.ci_hi - res.estimate;
  CHECK(se > 0);
  CHECK(std::fabs(res.estimate - 0.375) <= 4 * se);
  REQUIRE(res.analytic.has_value());
  CHECK(*res.analytic == doctest::Approx(0.375).epsilon(1e-10));
}

TEST_CASE("expectation estimate at n=6 stays within four standard errors") {
  auto res = estimate_expectation(6, 0.5, 2, 1, 1, 40000, Seed{7});
  double truth = exact_moments(6, 0.5, 2, 1, 1).e_x;
  double se = res.ci_hi - res.estimate;
  CHECK(std::fabs(res.estimate - truth) <= 4 * se);
}

TEST_CASE("probability estimate covers the closed form at n=3") {
  auto res = estimate_probability(3, 0.5, 100000, Seed{11}, ProbabilityMode::union_of_all);
  CHECK(res.ci_lo <= 0.125);
  CHECK(res.ci_hi >= 0.125);
  REQUIRE(res.analytic.has_value());
  CHECK(*res.analytic == doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("probability estimate covers the oracle at n=5") {
  auto res = estimate_probability(5, 0.5, 20000, Seed{23}, ProbabilityMode::union_of_all);
  double truth = exact_union_probability(5, 0.5);
  CHECK(res.ci_lo <= truth);
  CHECK(res.ci_hi >= truth);
}

TEST_CASE("fixed-shape probability mode uses the moment oracle as companion") {
  auto res = estimate_probability(4, 0.5, 20000, Seed{5}, ProbabilityMode::fixed_klm, 1, 1, 1);
  REQUIRE(res.analytic.has_value());
  CHECK(*res.analytic == doctest::Approx(0.015625).epsilon(1e-12));
  CHECK(res.ci_lo <= *res.analytic);
  CHECK(res.ci_hi >= *res.analytic);
}

TEST_CASE("runs are reproducible and thread-count invariant") {
  auto a = estimate_expectation(5, 0.4, 1, 1, 1, 20000, Seed{99});
  auto b = estimate_expectation(5, 0.4, 1, 1, 1, 20000, Seed{99});
  CHECK(a.estimate == b.estimate);
  CHECK(a.ci_lo == b.ci_lo);
  CHECK(a.ci_hi == b.ci_hi);

  set_thread_count(1);
  auto one = estimate_probability(4, 0.5, 30000, Seed{3}, ProbabilityMode::union_of_all);
  set_thread_count(4);
  auto four = estimate_probability(4, 0.5, 30000, Seed{3}, ProbabilityMode::union_of_all);
  set_thread_count(0);
  CHECK(one.estimate == four.estimate);
  CHECK(one.ci_lo == four.ci_lo);
  CHECK(one.ci_hi == four.ci_hi);
}

TEST_CASE("wilson interval sanity") {
  double lo = 0, hi = 0;
  wilson_interval(0, 100, lo, hi);
  CHECK(lo == 0.0);
  CHECK(hi > 0);
  wilson_interval(100, 100, lo, hi);
  CHECK(hi == 1.0);
  wilson_interval(13, 1000, lo, hi);
  CHECK(lo <= 13.0 / 1000);
  CHECK(hi >= 13.0 / 1000);
}

TEST_CASE("oscillation table shape and the two trends") {
  auto rows = oscillation_table(0.5, 5, 9);
  REQUIRE(rows.size() == 5);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].i == static_cast<int>(i) + 5);
    CHECK(rows[i].n_small == seq_small(0.5, rows[i].i));
    CHECK(rows[i].n_large == seq_large(0.5, rows[i].i));
    if (i > 0) {
      CHECK(rows[i].first_moment < rows[i - 1].first_moment);
      CHECK(rows[i].diag_expectation > rows[i - 1].diag_expectation);
    }
  }
}

TEST_CASE("run csv uses the fixed header and thirteen columns") {
  RunManifest man;
  man.kind = "expectation";
  man.n = 4;
  man.p = 0.5;
  man.klm = {{1, 1, 1}};
  man.trials = 10;
  man.seed = 1;
  RunResult res;
  res.estimate = 0.4;
  res.ci_lo = 0.3;
  res.ci_hi = 0.5;
  res.trials = 10;
  res.analytic = 0.375;
  std::string csv = run_csv(man, res);
  CHECK(csv.rfind("experiment,i,n,p,k,l,m,trials,seed,estimate,ci_lo,ci_hi,analytic\n", 0) == 0);
  std::string row = csv.substr(csv.find('\n') + 1);
  int commas = 0;
  for (char c : row)
    if (c == ',') ++commas;
  CHECK(commas == 12);
  CHECK(row.rfind("expectation,,4,0.5,1,1,1,10,1,", 0) == 0);
}

TEST_CASE("union-mode csv leaves the shape columns empty") {
  RunManifest man;
  man.kind = "probability_union";
  man.n = 4;
  man.p = 0.5;
  man.trials = 10;
  man.seed = 1;
  RunResult res;
  res.estimate = 0.01;
  res.ci_lo = 0.0;
  res.ci_hi = 0.02;
  res.trials = 10;
  std::string csv = run_csv(man, res);
  CHECK(csv.find("probability_union,,4,0.5,,,,10,1,") != std::string::npos);
  // analytic column empty: the row ends with a comma
  CHECK(csv[csv.size() - 2] == ',');
}

TEST_CASE("oscillation csv header") {
  auto rows = oscillation_table(0.5, 5, 6);
  std::string csv = oscillation_csv(rows);
  CHECK(csv.rfind("i,n1,first_moment_sum,n2,expected_count_diag,diag_asymptotic\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("manifest json carries the run identity") {
  RunManifest man;
  man.kind = "expectation";
  man.n = 4;
  man.p = 0.5;
  man.klm = {{1, 1, 1}};
  man.trials = 10;
  man.seed = 77;
  man.tool_version = "1.0.0";
  man.timestamp = "2026-01-01T00:00:00Z";
  std::string j = manifest_json(man, "run-1");
  CHECK(j.find("\"run_id\": \"run-1\"") != std::string::npos);
  CHECK(j.find("\"seed\": 77") != std::string::npos);
  CHECK(j.find("\"timestamp\": \"2026-01-01T00:00:00Z\"") != std::string::npos);
}

TEST_CASE("monte carlo matches analytic companions within four standard errors") {
  // shipped regression instances
  struct Case {
    int n, k, l, m;
  };
  for (Case c : {Case{4, 1, 1, 1}, Case{5, 1, 1, 1}, Case{6, 2, 1, 1}}) {
    auto res = estimate_expectation(c.n, 0.5, c.k, c.l, c.m, 30000, Seed{2026});
    REQUIRE(res.analytic.has_value());
    double se = res.ci_hi - res.estimate;
    CHECK(std::fabs(res.estimate - *res.analytic) <= 4 * se);
  }
}
