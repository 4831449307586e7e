// Command-line front end: every library operation behind one binary with
// uniform JSON/CSV output and stable exit codes.
//   0 success, 2 usage/domain error, 3 infeasible or budget exceeded,
//   4 numeric non-convergence. Diagnostics go to stderr only.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "emso/analytic.hpp"
#include "emso/errors.hpp"
#include "emso/experiments.hpp"
#include "emso/graph.hpp"
#include "emso/io_format.hpp"
#include "emso/oracle.hpp"
#include "emso/parallel.hpp"
#include "emso/version.hpp"
#include "emso/witness.hpp"

namespace {

using namespace emso;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("EMSO_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw std::invalid_argument("EMSO_SEED must be an unsigned integer");
    }
  }
  return 0;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + out_path);
  f << text;
}

Graph load_graph(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open graph file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return read_edge_list(ss.str());
}

void check_probability(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("--p must lie strictly inside (0,1)");
}

// run id for manifest sidecars: output file stem
std::string run_id_from(const std::string& out_path) {
  return std::filesystem::path(out_path).stem().string();
}

void write_manifest_sidecar(const RunManifest& man, const std::string& out_path) {
  if (out_path.empty()) return;
  std::filesystem::path csv(out_path);
  std::string id = run_id_from(out_path);
  std::filesystem::path side = csv.parent_path() / (id + ".manifest.json");
  std::ofstream f(side, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open manifest file: " + side.string());
  f << manifest_json(man, id);
}

int dispatch(int argc, char** argv) {
  CLI::App app{"special-tuple counting, analytic bounds, and Monte Carlo harness for G(n,p)"};
  app.set_version_flag("--version", std::string("emso ") + kToolVersion + " (interface " +
                                        kInterfaceVersion + ")");
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (default: machine parallelism)");
  app.require_subcommand(1);

  std::string out_path;

  // ---- sample
  auto* sample = app.add_subcommand("sample", "draw one G(n,p) graph as an edge list");
  int s_n = 0;
  double s_p = 0.5;
  std::optional<std::uint64_t> s_seed;
  sample->add_option("--n", s_n, "vertex count")->required();
  sample->add_option("--p", s_p, "edge probability in (0,1)")->required();
  sample->add_option("--seed", s_seed, "master seed (default: EMSO_SEED or 0)");
  sample->add_option("--out", out_path, "output file (default stdout)");

  // ---- check
  auto* check = app.add_subcommand("check", "test whether a tuple is special in a graph");
  std::string c_graph, c_tuple;
  check->add_option("--graph", c_graph, "edge-list file")->required();
  check->add_option("--tuple", c_tuple, "tuple, e.g. \"X1=1,2;x1=1;X2=3;x2=3;X3=4;x3=4\"")->required();

  // ---- count
  auto* count = app.add_subcommand("count", "exact number of special tuples of one shape");
  std::string n_graph;
  int n_k = 0, n_l = 0, n_m = 0;
  count->add_option("--graph", n_graph, "edge-list file")->required();
  count->add_option("--k", n_k)->required();
  count->add_option("--l", n_l)->required();
  count->add_option("--m", n_m)->required();

  // ---- exists
  auto* exists = app.add_subcommand("exists", "search for any special tuple");
  std::string e_graph;
  bool e_heuristic = false;
  std::optional<std::uint64_t> e_seed;
  int e_max_n = 24;
  std::uint64_t e_nodes = 100'000'000;
  exists->add_option("--graph", e_graph, "edge-list file")->required();
  exists->add_flag("--heuristic", e_heuristic, "greedy randomized search (never answers 'false')");
  exists->add_option("--seed", e_seed, "heuristic restart seed (default: EMSO_SEED or 0)");
  exists->add_option("--max-n", e_max_n, "exact-mode vertex cap");
  exists->add_option("--node-limit", e_nodes, "exact-mode backtracking node cap");

  // ---- expect
  auto* expect = app.add_subcommand("expect", "E X(k,l,m) in log space");
  std::int64_t x_n = 0, x_k = 0, x_l = 0, x_m = 0;
  double x_p = 0.5;
  expect->add_option("--n", x_n)->required();
  expect->add_option("--p", x_p)->required();
  expect->add_option("--k", x_k)->required();
  expect->add_option("--l", x_l)->required();
  expect->add_option("--m", x_m)->required();

  // ---- kstar
  auto* kstar = app.add_subcommand("kstar", "stationary point of the exponent on the diagonal");
  std::int64_t ks_n = 0;
  double ks_p = 0.5;
  bool ks_asym = false;
  kstar->add_option("--n", ks_n)->required();
  kstar->add_option("--p", ks_p)->required();
  kstar->add_flag("--asymptotic", ks_asym, "closed-form leading term instead of the root");

  // ---- seq
  auto* seq = app.add_subcommand("seq", "the two diagnostic vertex-count sequences");
  std::string q_which;
  double q_p = 0.5;
  int q_i = 0;
  seq->add_option("--which", q_which, "small | large")->required()->check(CLI::IsMember({"small", "large"}));
  seq->add_option("--p", q_p)->required();
  seq->add_option("--i", q_i)->required();

  // ---- first-moment
  auto* fm = app.add_subcommand("first-moment", "sum of E X(k,l,m) over the whole index domain");
  std::int64_t f_n = 0;
  double f_p = 0.5;
  fm->add_option("--n", f_n)->required();
  fm->add_option("--p", f_p)->required();

  // ---- bounds
  auto* bounds = app.add_subcommand("bounds", "overlap-regime bounds and envelopes");
  double b_p = 0.5;
  std::int64_t b_k = 0;
  std::optional<std::int64_t> b_r;
  std::optional<int> b_r0;
  bool b_hyp = false;
  bounds->add_option("--p", b_p)->required();
  bounds->add_option("--k", b_k)->required();
  bounds->add_option("--r", b_r, "total overlap of two tuples");
  bounds->add_option("--r0", b_r0, "regime threshold override");
  bounds->add_flag("--lemma3-hypothesis-met", b_hyp,
                   "attest that the overlap pattern satisfies the strengthened-bound hypothesis");

  // ---- oracle
  auto* orc = app.add_subcommand("oracle", "exact moments by full graph enumeration (tiny n)");
  int o_n = 0;
  double o_p = 0.5;
  std::optional<int> o_k, o_l, o_m;
  bool o_union = false;
  orc->add_option("--n", o_n)->required();
  orc->add_option("--p", o_p)->required();
  orc->add_option("--k", o_k);
  orc->add_option("--l", o_l);
  orc->add_option("--m", o_m);
  orc->add_flag("--union", o_union, "P(any special tuple exists), n <= 5");

  // ---- simulate
  auto* sim = app.add_subcommand("simulate", "Monte Carlo estimate with confidence interval (CSV)");
  std::string si_kind = "expectation";
  int si_n = 0;
  double si_p = 0.5;
  std::optional<int> si_k, si_l, si_m;
  std::uint64_t si_trials = 0;
  std::optional<std::uint64_t> si_seed;
  sim->add_option("--kind", si_kind, "expectation | probability")
      ->check(CLI::IsMember({"expectation", "probability"}));
  sim->add_option("--n", si_n)->required();
  sim->add_option("--p", si_p)->required();
  sim->add_option("--k", si_k);
  sim->add_option("--l", si_l);
  sim->add_option("--m", si_m);
  sim->add_option("--trials", si_trials)->required();
  sim->add_option("--seed", si_seed, "master seed (default: EMSO_SEED or 0)");
  sim->add_option("--out", out_path, "CSV file; also writes <run-id>.manifest.json");

  // ---- oscillate
  auto* osc = app.add_subcommand("oscillate", "analytic oscillation table along both sequences (CSV)");
  double z_p = 0.5;
  int z_from = 1, z_to = 1;
  osc->add_option("--p", z_p)->required();
  osc->add_option("--i-from", z_from)->required();
  osc->add_option("--i-to", z_to)->required();
  osc->add_option("--out", out_path, "CSV file; also writes <run-id>.manifest.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  set_thread_count(threads);

  if (*sample) {
    check_probability(s_p);
    Seed seed{s_seed ? *s_seed : default_seed()};
    Graph g = sample_gnp(s_n, s_p, seed);
    emit(write_edge_list(g), out_path);
    return 0;
  }

  if (*check) {
    Graph g = load_graph(c_graph);
    KTuple t = parse_tuple(c_tuple);
    JsonWriter w;
    w.field("is_special", is_special(g, t));
    emit(w.str(), out_path);
    return 0;
  }

  if (*count) {
    Graph g = load_graph(n_graph);
    JsonWriter w;
    w.field("count_special", count_special(g, n_k, n_l, n_m));
    emit(w.str(), out_path);
    return 0;
  }

  if (*exists) {
    Graph g = load_graph(e_graph);
    SearchBudget budget;
    budget.mode = e_heuristic ? SearchBudget::Mode::heuristic : SearchBudget::Mode::exact;
    budget.max_n = e_max_n;
    budget.node_limit = e_nodes;
    budget.seed = Seed{e_seed ? *e_seed : default_seed()};
    auto res = exists_special(g, budget);
    if (res.outcome == ExistsResult::Outcome::budget_exceeded)
      throw InfeasibleError("exists: node budget exceeded before the search finished");
    JsonWriter w;
    switch (res.outcome) {
      case ExistsResult::Outcome::found:
        w.field("status", "found");
        w.field("witness", format_tuple(*res.witness));
        break;
      case ExistsResult::Outcome::none:
        w.field("status", "none");
        break;
      default:
        w.field("status", "unknown");
    }
    emit(w.str(), out_path);
    return 0;
  }

  if (*expect) {
    check_probability(x_p);
    JsonWriter w;
    w.field("expected_count", expected_count(x_n, x_p, x_k, x_l, x_m));
    emit(w.str(), out_path);
    return 0;
  }

  if (*kstar) {
    check_probability(ks_p);
    JsonWriter w;
    if (ks_asym) {
      w.field("k_star_asymptotic", k_star_asymptotic(ks_n, ks_p));
    } else {
      double k = k_star_exact(ks_n, ks_p);
      w.field("k_star_exact", k);
      w.field("residual", k_star_residual(ks_n, ks_p, k));
    }
    emit(w.str(), out_path);
    return 0;
  }

  if (*seq) {
    check_probability(q_p);
    std::uint64_t n = q_which == "small" ? seq_small(q_p, q_i) : seq_large(q_p, q_i);
    JsonWriter w;
    w.field("n", n);
    emit(w.str(), out_path);
    return 0;
  }

  if (*fm) {
    check_probability(f_p);
    auto res = first_moment_sum(f_n, f_p);
    JsonWriter w;
    w.field("first_moment_sum", res.sum);
    w.field("window", res.window);
    w.field("covered_domain", res.covered_domain);
    w.field("terms", res.terms);
    emit(w.str(), out_path);
    return 0;
  }

  if (*bounds) {
    check_probability(b_p);
    JsonWriter w;
    int default_r0 = r0_of(b_p);
    int r0 = b_r0 ? *b_r0 : default_r0;
    w.field("r0_of", default_r0);
    w.field("lemma4_vertex_bound", lemma4_vertex_bound(b_p, b_k));
    w.field("s2_envelope", s2_envelope(b_p, b_k));
    if (b_r) {
      w.field("lemma2_bound", lemma2_bound(b_p, b_k, *b_r));
      if (*b_r >= default_r0 && *b_r <= 3 * b_k - default_r0)
        w.field("s1_term_bound", s1_term_bound(b_p, b_k, *b_r));
      if (b_hyp) w.field("lemma3_bound", lemma3_bound(b_p, b_k, *b_r, r0, true));
      if (*b_r >= 3 * b_k - r0) {
        auto s3 = s3_exponents(b_p, b_k, *b_r, r0);
        w.field("s3_pair_exponent_lower", s3.pair_exponent_lower);
        w.field("s3_count_factor", s3.count_factor);
      }
    }
    emit(w.str(), out_path);
    return 0;
  }

  if (*orc) {
    check_probability(o_p);
    JsonWriter w;
    if (o_union) {
      double u = exact_union_probability(o_n, o_p);
      w.field("n", o_n);
      w.field("p", o_p);
      w.field("scope", "union");
      w.field("p_positive", u);
    } else if (o_k || o_l || o_m) {
      if (!(o_k && o_l && o_m))
        throw std::invalid_argument("oracle: give all of --k --l --m or none");
      auto mom = exact_moments(o_n, o_p, *o_k, *o_l, *o_m);
      w.field("n", mom.n);
      w.field("p", mom.p);
      w.field("k", (*mom.klm)[0]);
      w.field("l", (*mom.klm)[1]);
      w.field("m", (*mom.klm)[2]);
      w.field("scope", "single");
      w.field("e_x", mom.e_x);
      w.field("e_x2", mom.e_x2);
      w.field("p_positive", mom.p_positive);
    } else {
      auto mom = exact_moments_total(o_n, o_p);
      w.field("n", mom.n);
      w.field("p", mom.p);
      w.field("scope", "all");
      w.field("e_x", mom.e_x);
      w.field("e_x2", mom.e_x2);
      w.field("p_positive", mom.p_positive);
    }
    emit(w.str(), out_path);
    return 0;
  }

  if (*sim) {
    check_probability(si_p);
    RunManifest man;
    man.n = si_n;
    man.p = si_p;
    man.trials = si_trials;
    man.seed = si_seed ? *si_seed : default_seed();
    man.tool_version = kToolVersion;
    man.timestamp = iso8601_utc_now();
    Seed seed{man.seed};
    RunResult res;
    if (si_kind == "expectation") {
      if (!(si_k && si_l && si_m))
        throw std::invalid_argument("simulate: expectation needs --k --l --m");
      man.kind = "expectation";
      man.klm = {{*si_k, *si_l, *si_m}};
      res = estimate_expectation(si_n, si_p, *si_k, *si_l, *si_m, si_trials, seed);
    } else if (si_k || si_l || si_m) {
      if (!(si_k && si_l && si_m))
        throw std::invalid_argument("simulate: give all of --k --l --m or none");
      man.kind = "probability_fixed";
      man.klm = {{*si_k, *si_l, *si_m}};
      res = estimate_probability(si_n, si_p, si_trials, seed, ProbabilityMode::fixed_klm, *si_k,
                                 *si_l, *si_m);
    } else {
      man.kind = "probability_union";
      res = estimate_probability(si_n, si_p, si_trials, seed, ProbabilityMode::union_of_all);
    }
    emit(run_csv(man, res), out_path);
    write_manifest_sidecar(man, out_path);
    return 0;
  }

  if (*osc) {
    check_probability(z_p);
    auto rows = oscillation_table(z_p, z_from, z_to);
    emit(oscillation_csv(rows), out_path);
    RunManifest man;
    man.kind = "oscillation";
    man.p = z_p;
    man.i_from = z_from;
    man.i_to = z_to;
    man.tool_version = kToolVersion;
    man.timestamp = iso8601_utc_now();
    write_manifest_sidecar(man, out_path);
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const emso::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 3;
  } catch (const emso::NumericError& e) {
    std::cerr << "numeric: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
