#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "emso/graph.hpp"
#include "emso/logreal.hpp"

namespace emso {

// Everything that determines a run except the timestamp.
struct RunManifest {
  std::string kind;  // expectation | probability_union | probability_fixed | oscillation
  int n = 0;
  double p = 0;
  std::optional<std::array<int, 3>> klm;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  int i_from = 0, i_to = 0;  // oscillation runs
  std::string tool_version;
  std::string timestamp;  // ISO 8601 UTC
};

struct RunResult {
  double estimate = 0;
  double ci_lo = 0, ci_hi = 0;  // Wilson 95% for probabilities, mean +- SE for counts
  std::uint64_t trials = 0;
  std::optional<double> analytic;
};

enum class ProbabilityMode { union_of_all, fixed_klm };

// Sample mean of X(k,l,m) over seeded graphs; trial t draws from stream t.
RunResult estimate_expectation(int n, double p, int k, int l, int m, std::uint64_t trials, Seed seed);

// Bernoulli estimate of P(X > 0) with a Wilson 95% interval. union mode
// decides each trial with the exact existence search (n must fit its budget);
// the analytic companion comes from the enumeration oracle when available.
RunResult estimate_probability(int n, double p, std::uint64_t trials, Seed seed, ProbabilityMode mode,
                               int k = 0, int l = 0, int m = 0);

struct OscillationRow {
  int i = 0;
  std::uint64_t n_small = 0;  // floor((1/(1-p))^{i+1/2} i)
  LogReal first_moment;       // sum of E X over D_{n_small}
  std::uint64_t n_large = 0;  // floor((1/(1-p))^i i)
  LogReal diag_expectation;   // E X(i,i,i) at n_large
  double diag_asymptotic = 0;
};

std::vector<OscillationRow> oscillation_table(double p, int i_from, int i_to);

// 95% Wilson score interval for successes/trials.
void wilson_interval(std::uint64_t successes, std::uint64_t trials, double& lo, double& hi);

// CSV with the fixed header
// experiment,i,n,p,k,l,m,trials,seed,estimate,ci_lo,ci_hi,analytic
std::string run_csv(const RunManifest& man, const RunResult& res);
std::string oscillation_csv(const std::vector<OscillationRow>& rows);

std::string manifest_json(const RunManifest& man, std::string_view run_id);
std::string iso8601_utc_now();

}  // namespace emso
