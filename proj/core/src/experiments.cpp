#include "emso/experiments.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <stdexcept>

#include "emso/analytic.hpp"
#include "emso/errors.hpp"
#include "emso/io_format.hpp"
#include "emso/oracle.hpp"
#include "emso/parallel.hpp"
#include "emso/witness.hpp"

namespace emso {

namespace {

constexpr double kZ95 = 1.959963984540054;

void require_trials(std::uint64_t trials) {
  if (trials == 0) throw std::invalid_argument("experiments: trials must be positive");
}

}  // namespace

void wilson_interval(std::uint64_t successes, std::uint64_t trials, double& lo, double& hi) {
  double nt = static_cast<double>(trials);
  double phat = static_cast<double>(successes) / nt;
  double z2 = kZ95 * kZ95;
  double denom = 1.0 + z2 / nt;
  double center = (phat + z2 / (2.0 * nt)) / denom;
  double half = kZ95 * std::sqrt(phat * (1.0 - phat) / nt + z2 / (4.0 * nt * nt)) / denom;
  lo = successes == 0 ? 0.0 : center - half;
  hi = successes == trials ? 1.0 : center + half;
  if (lo < 0) lo = 0;
  if (hi > 1) hi = 1;
}

RunResult estimate_expectation(int n, double p, int k, int l, int m, std::uint64_t trials, Seed seed) {
  require_trials(trials);
  // surface infeasible (k,l,m) before spending time on trials
  count_special(sample_gnp(n, p, seed, 0), k, l, m);

  const std::uint64_t chunks = 256 < trials ? 256 : trials;
  struct Part {
    std::uint64_t sum = 0, sum2 = 0;
  };
  std::vector<Part> partial(chunks);
  parallel_chunks(trials, chunks, [&](std::uint64_t c, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t t = begin; t < end; ++t) {
      Graph g = sample_gnp(n, p, seed, t);
      std::uint64_t cnt = count_special(g, k, l, m);
      partial[c].sum += cnt;
      partial[c].sum2 += cnt * cnt;
    }
  });
  std::uint64_t sum = 0, sum2 = 0;
  for (auto& pa : partial) {
    sum += pa.sum;
    sum2 += pa.sum2;
  }
  double nt = static_cast<double>(trials);
  double mean = static_cast<double>(sum) / nt;
  double se = 0;
  if (trials > 1) {
    double var = (static_cast<double>(sum2) - nt * mean * mean) / (nt - 1.0);
    if (var < 0) var = 0;
    se = std::sqrt(var / nt);
  }
  RunResult res;
  res.estimate = mean;
  res.ci_lo = mean - se;
  res.ci_hi = mean + se;
  res.trials = trials;
  res.analytic = expected_count(n, p, k, l, m).to_double();
  return res;
}

RunResult estimate_probability(int n, double p, std::uint64_t trials, Seed seed, ProbabilityMode mode,
                               int k, int l, int m) {
  require_trials(trials);
  SearchBudget budget;
  if (mode == ProbabilityMode::union_of_all && n > budget.max_n)
    throw InfeasibleError("estimate_probability: union mode needs n <= " + std::to_string(budget.max_n));
  if (mode == ProbabilityMode::fixed_klm)
    count_special(sample_gnp(n, p, seed, 0), k, l, m);

  const std::uint64_t chunks = 256 < trials ? 256 : trials;
  std::vector<std::uint64_t> partial(chunks, 0);
  parallel_chunks(trials, chunks, [&](std::uint64_t c, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t t = begin; t < end; ++t) {
      Graph g = sample_gnp(n, p, seed, t);
      bool hit;
      if (mode == ProbabilityMode::union_of_all) {
        auto res = exists_special(g, budget);
        if (res.outcome == ExistsResult::Outcome::budget_exceeded)
          throw InfeasibleError("estimate_probability: existence search budget exceeded");
        hit = res.outcome == ExistsResult::Outcome::found;
      } else {
        hit = count_special(g, k, l, m) > 0;
      }
      if (hit) ++partial[c];
    }
  });
  std::uint64_t successes = 0;
  for (auto s : partial) successes += s;
  RunResult res;
  res.estimate = static_cast<double>(successes) / static_cast<double>(trials);
  wilson_interval(successes, trials, res.ci_lo, res.ci_hi);
  res.trials = trials;
  if (mode == ProbabilityMode::union_of_all && n <= 5) {
    res.analytic = exact_union_probability(n, p);
  } else if (mode == ProbabilityMode::fixed_klm && n <= 6) {
    res.analytic = exact_moments(n, p, k, l, m).p_positive;
  }
  return res;
}

std::vector<OscillationRow> oscillation_table(double p, int i_from, int i_to) {
  if (i_from < 1 || i_to < i_from) throw std::invalid_argument("oscillation_table: bad i range");
  std::vector<OscillationRow> rows;
  for (int i = i_from; i <= i_to; ++i) {
    OscillationRow row;
    row.i = i;
    row.n_small = seq_small(p, i);
    row.first_moment = first_moment_sum(static_cast<std::int64_t>(row.n_small), p).sum;
    row.n_large = seq_large(p, i);
    row.diag_expectation = expected_count(static_cast<std::int64_t>(row.n_large), p, i, i, i);
    row.diag_asymptotic = diag_expectation_asymptotic(p, i);
    rows.push_back(row);
  }
  return rows;
}

namespace {

void csv_opt_int(std::string& out, std::optional<int> v) {
  if (v) out += std::to_string(*v);
  out += ',';
}

}  // namespace

std::string run_csv(const RunManifest& man, const RunResult& res) {
  std::string out = "experiment,i,n,p,k,l,m,trials,seed,estimate,ci_lo,ci_hi,analytic\n";
  out += man.kind;
  out += ",,";  // i not applicable
  out += std::to_string(man.n);
  out += ',';
  out += fmt_real(man.p);
  out += ',';
  csv_opt_int(out, man.klm ? std::optional<int>((*man.klm)[0]) : std::nullopt);
  csv_opt_int(out, man.klm ? std::optional<int>((*man.klm)[1]) : std::nullopt);
  csv_opt_int(out, man.klm ? std::optional<int>((*man.klm)[2]) : std::nullopt);
  out += std::to_string(man.trials);
  out += ',';
  out += std::to_string(man.seed);
  out += ',';
  out += fmt_real(res.estimate);
  out += ',';
  out += fmt_real(res.ci_lo);
  out += ',';
  out += fmt_real(res.ci_hi);
  out += ',';
  if (res.analytic) out += fmt_real(*res.analytic);
  out += '\n';
  return out;
}

std::string oscillation_csv(const std::vector<OscillationRow>& rows) {
  std::string out = "i,n1,first_moment_sum,n2,expected_count_diag,diag_asymptotic\n";
  for (const auto& r : rows) {
    out += std::to_string(r.i);
    out += ',';
    out += std::to_string(r.n_small);
    out += ',';
    out += fmt_real(r.first_moment.to_double());
    out += ',';
    out += std::to_string(r.n_large);
    out += ',';
    out += fmt_real(r.diag_expectation.to_double());
    out += ',';
    out += fmt_real(r.diag_asymptotic);
    out += '\n';
  }
  return out;
}

std::string manifest_json(const RunManifest& man, std::string_view run_id) {
  JsonWriter w;
  w.field("run_id", run_id);
  w.field("experiment", man.kind);
  if (man.kind == "oscillation") {
    w.field("i_from", man.i_from);
    w.field("i_to", man.i_to);
  } else {
    w.field("n", man.n);
  }
  w.field("p", man.p);
  if (man.klm) {
    w.field("k", (*man.klm)[0]);
    w.field("l", (*man.klm)[1]);
    w.field("m", (*man.klm)[2]);
  } else {
    w.null_field("k");
    w.null_field("l");
    w.null_field("m");
  }
  if (man.kind == "oscillation") {
    w.null_field("trials");
    w.null_field("seed");
  } else {
    w.field("trials", man.trials);
    w.field("seed", man.seed);
  }
  w.field("tool_version", man.tool_version);
  w.field("timestamp", man.timestamp);
  return w.str();
}

std::string iso8601_utc_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[80];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900, tm.tm_mon + 1,
                tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
  return buf;
}

}  // namespace emso
