#pragma once

#include <optional>
#include <vector>

#include "emso/graph.hpp"

namespace emso {

// Exact moments from full enumeration of the 2^C(n,2) labeled graphs.
// klm absent means the counting variable is the sum over all (k,l,m) in D_n.
struct ExactMoments {
  int n = 0;
  double p = 0;
  std::optional<std::array<int, 3>> klm;
  double e_x = 0;
  double e_x2 = 0;
  double p_positive = 0;
};

// Single index: weight each graph by p^edges (1-p)^nonedges and evaluate
// count_special per graph. n <= 6.
ExactMoments exact_moments(int n, double p, int k, int l, int m);

// Aggregate over all of D_n in one sweep. n <= 6.
ExactMoments exact_moments_total(int n, double p);

// Per-(k,l,m) moments for every point of D_n from one sweep (lexicographic
// (k,l,m) order). Uses an assignment-level enumeration independent of
// count_special. n <= 6.
std::vector<ExactMoments> exact_moments_all(int n, double p);

// Exact P(some special tuple exists), deciding each graph with
// exists_special in exact mode. n <= 5.
double exact_union_probability(int n, double p);

}  // namespace emso
