#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "emso/graph.hpp"

namespace emso {

// The 6-tuple (X1,x1,X2,x2,X3,x3): three disjoint nonempty vertex sets with
// one marked vertex each. Sets are kept sorted ascending.
struct KTuple {
  std::array<std::vector<Vertex>, 3> sets;
  std::array<Vertex, 3> marked{-1, -1, -1};
};

// Intersection statistics between two tuples (X-tuple first, Y-tuple second):
// cell[i][j] = |Y_i ∩ X_j|, side[0..2] = |Y_i ∩ (X1⊔X2⊔X3)|,
// side[3..5] = |X_j ∩ (Y1⊔Y2⊔Y3)|, r = |union ∩ union|.
struct OverlapPattern {
  int r = 0;
  std::array<int, 6> side{};
  std::array<std::array<int, 3>, 3> cell{};
};

struct SearchBudget {
  enum class Mode { exact, heuristic };
  Mode mode = Mode::exact;
  int max_n = 24;                         // exact mode refuses larger graphs
  std::uint64_t node_limit = 100'000'000; // backtracking node cap
  int restarts = 1000;                    // heuristic mode only
  Seed seed{};                            // heuristic restart randomness
};

struct ExistsResult {
  enum class Outcome { found, none, unknown, budget_exceeded };
  Outcome outcome = Outcome::unknown;
  std::optional<KTuple> witness;
  std::uint64_t nodes = 0;
};

// Throws std::invalid_argument unless sets are disjoint, nonempty, in range,
// and each marked vertex belongs to its set.
void validate_tuple(int n, const KTuple& t);

// True iff (a) every vertex outside X1∪X2∪X3 has a neighbor in each X_i and
// (b) for each pair i<j the only X_i–X_j edge is {x_i, x_j} (which must exist).
bool is_special(const Graph& g, const KTuple& t);

// Exact number of ordered tuples with |X1|=k, |X2|=l, |X3|=m satisfying
// is_special. Throws InfeasibleError when C(n,k)C(n-k,l)C(n-k-l,m) > 10^9.
std::uint64_t count_special(const Graph& g, int k, int l, int m);

ExistsResult exists_special(const Graph& g, const SearchBudget& budget = {});

OverlapPattern overlap(const KTuple& tx, const KTuple& ty);

// Pairs that are cross pairs of the Y-tuple but not of the X-tuple:
// 3k^2 - (1/2) Σ_{i,j} cell[i][j] Σ_{i'≠i, j'≠j} cell[i'][j'].
std::int64_t cross_pair_count(const OverlapPattern& pat, int k);

// ∃s: side[s] > k - r0 and cell[s][j] < k - 6 r0 for all j.
bool lemma3_hypothesis(const OverlapPattern& pat, int k, int r0);

// Tuple text form "X1=1,2;x1=1;X2=3;x2=3;X3=4;x3=4" (1-based vertices).
KTuple parse_tuple(std::string_view text);
std::string format_tuple(const KTuple& t);

}  // namespace emso
