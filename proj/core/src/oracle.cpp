#include "emso/oracle.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "emso/parallel.hpp"
#include "emso/witness.hpp"

namespace emso {

namespace {

struct KahanSum {
  double sum = 0, comp = 0;
  void add(double x) {
    double y = x - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  void merge(const KahanSum& o) {
    add(o.sum);
    add(-o.comp);
  }
};

struct PairTable {
  int n = 0, pairs = 0;
  std::array<std::array<int, 2>, 15> ends{};
  explicit PairTable(int nn) : n(nn) {
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) ends[pairs++] = {u, v};
  }
};

// For one graph given as adjacency bitmask rows, count special tuples of
// every shape at once by sweeping all {X1,X2,X3,outside} assignments.
struct AssignmentSweep {
  int n;
  // counts indexed by (k-1, l-1, m-1)
  std::array<std::array<std::array<int, 6>, 6>, 6> counts{};
  bool any = false;
  long total = 0;

  void run(int nn, const std::array<unsigned, 6>& adj) {
    n = nn;
    counts = {};
    any = false;
    total = 0;
    const unsigned full = (1u << n) - 1;
    unsigned pow4 = 1;
    for (int i = 0; i < n; ++i) pow4 *= 4;
    for (unsigned code = 0; code < pow4; ++code) {
      unsigned m1 = 0, m2 = 0, m3 = 0;
      unsigned c = code;
      for (int v = 0; v < n; ++v, c >>= 2) {
        switch (c & 3u) {
          case 1: m1 |= 1u << v; break;
          case 2: m2 |= 1u << v; break;
          case 3: m3 |= 1u << v; break;
          default: break;
        }
      }
      if (!m1 || !m2 || !m3) continue;
      // the three cross edges must exist, be unique, and share endpoints
      int x1 = -1, x2 = -1;
      if (!single_cross_edge(adj, m1, m2, x1, x2)) continue;
      int x1b = -1, x3 = -1;
      if (!single_cross_edge(adj, m1, m3, x1b, x3)) continue;
      if (x1b != x1) continue;
      int x2b = -1, x3b = -1;
      if (!single_cross_edge(adj, m2, m3, x2b, x3b)) continue;
      if (x2b != x2 || x3b != x3) continue;
      unsigned outside = full & ~(m1 | m2 | m3);
      bool dominated = true;
      for (unsigned o = outside; o; o &= o - 1) {
        int v = __builtin_ctz(o);
        if (!(adj[v] & m1) || !(adj[v] & m2) || !(adj[v] & m3)) {
          dominated = false;
          break;
        }
      }
      if (!dominated) continue;
      int k = __builtin_popcount(m1), l = __builtin_popcount(m2), m = __builtin_popcount(m3);
      counts[k - 1][l - 1][m - 1] += 1;
      any = true;
      ++total;
    }
  }

  static bool single_cross_edge(const std::array<unsigned, 6>& adj, unsigned a, unsigned b,
                                int& ea, int& eb) {
    int edges = 0;
    for (unsigned s = a; s; s &= s - 1) {
      int v = __builtin_ctz(s);
      unsigned hit = adj[v] & b;
      edges += __builtin_popcount(hit);
      if (edges > 1) return false;
      if (hit) {
        ea = v;
        eb = __builtin_ctz(hit);
      }
    }
    return edges == 1;
  }
};

struct SweepAccumulators {
  // one accumulator triple per (k,l,m) point plus one for the total variable
  std::vector<KahanSum> ex, ex2, ppos;
  KahanSum tot_ex, tot_ex2, tot_ppos;
};

std::vector<std::array<int, 3>> domain_points(int n) {
  std::vector<std::array<int, 3>> pts;
  for (int k = 1; k <= n - 2; ++k)
    for (int l = 1; l <= n - 1 - k; ++l)
      for (int m = 1; k + l + m <= n; ++m) pts.push_back({k, l, m});
  return pts;
}

void sweep(int n, double p, SweepAccumulators& acc) {
  if (n < 3 || n > 6) throw std::invalid_argument("oracle: exact enumeration requires 3 <= n <= 6");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("oracle: p must lie in (0,1)");
  PairTable pt(n);
  const int pairs = pt.pairs;
  auto points = domain_points(n);
  const std::size_t npts = points.size();
  std::array<double, 16> powp{}, powq{};
  powp[0] = powq[0] = 1.0;
  for (int e = 1; e <= pairs; ++e) {
    powp[e] = powp[e - 1] * p;
    powq[e] = powq[e - 1] * (1.0 - p);
  }

  const std::uint64_t masks = 1ull << pairs;
  const std::uint64_t chunks = 256 < masks ? 256 : masks;
  std::vector<SweepAccumulators> partial(chunks);
  for (auto& pa : partial) {
    pa.ex.resize(npts);
    pa.ex2.resize(npts);
    pa.ppos.resize(npts);
  }

  parallel_chunks(masks, chunks, [&](std::uint64_t c, std::uint64_t begin, std::uint64_t end) {
    AssignmentSweep sw;
    auto& pa = partial[c];
    for (std::uint64_t mask = begin; mask < end; ++mask) {
      std::array<unsigned, 6> adj{};
      int e = 0;
      for (int idx = 0; idx < pairs; ++idx)
        if (mask >> idx & 1) {
          adj[pt.ends[idx][0]] |= 1u << pt.ends[idx][1];
          adj[pt.ends[idx][1]] |= 1u << pt.ends[idx][0];
          ++e;
        }
      double w = powp[e] * powq[pairs - e];
      sw.run(n, adj);
      for (std::size_t i = 0; i < npts; ++i) {
        int cnt = sw.counts[points[i][0] - 1][points[i][1] - 1][points[i][2] - 1];
        if (cnt > 0) {
          pa.ex[i].add(w * cnt);
          pa.ex2[i].add(w * cnt * static_cast<double>(cnt));
          pa.ppos[i].add(w);
        }
      }
      if (sw.any) {
        pa.tot_ex.add(w * static_cast<double>(sw.total));
        pa.tot_ex2.add(w * static_cast<double>(sw.total) * static_cast<double>(sw.total));
        pa.tot_ppos.add(w);
      }
    }
  });

  acc.ex.resize(npts);
  acc.ex2.resize(npts);
  acc.ppos.resize(npts);
  for (std::uint64_t c = 0; c < chunks; ++c) {
    for (std::size_t i = 0; i < npts; ++i) {
      acc.ex[i].merge(partial[c].ex[i]);
      acc.ex2[i].merge(partial[c].ex2[i]);
      acc.ppos[i].merge(partial[c].ppos[i]);
    }
    acc.tot_ex.merge(partial[c].tot_ex);
    acc.tot_ex2.merge(partial[c].tot_ex2);
    acc.tot_ppos.merge(partial[c].tot_ppos);
  }
}

}  // namespace

ExactMoments exact_moments(int n, double p, int k, int l, int m) {
  if (n < 3 || n > 6) throw std::invalid_argument("exact_moments: requires 3 <= n <= 6");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("exact_moments: p must lie in (0,1)");
  if (k < 1 || l < 1 || m < 1 || k + l + m > n)
    throw std::invalid_argument("exact_moments: (k,l,m) outside D_n");
  PairTable pt(n);
  const int pairs = pt.pairs;
  std::array<double, 16> powp{}, powq{};
  powp[0] = powq[0] = 1.0;
  for (int e = 1; e <= pairs; ++e) {
    powp[e] = powp[e - 1] * p;
    powq[e] = powq[e - 1] * (1.0 - p);
  }
  const std::uint64_t masks = 1ull << pairs;
  const std::uint64_t chunks = 256 < masks ? 256 : masks;
  struct Part {
    KahanSum ex, ex2, ppos;
  };
  std::vector<Part> partial(chunks);
  parallel_chunks(masks, chunks, [&](std::uint64_t c, std::uint64_t begin, std::uint64_t end) {
    auto& pa = partial[c];
    for (std::uint64_t mask = begin; mask < end; ++mask) {
      Graph g(n);
      int e = 0;
      for (int idx = 0; idx < pairs; ++idx)
        if (mask >> idx & 1) {
          g.add_edge(pt.ends[idx][0], pt.ends[idx][1]);
          ++e;
        }
      double w = powp[e] * powq[pairs - e];
      auto cnt = static_cast<double>(count_special(g, k, l, m));
      if (cnt > 0) {
        pa.ex.add(w * cnt);
        pa.ex2.add(w * cnt * cnt);
        pa.ppos.add(w);
      }
    }
  });
  ExactMoments out;
  out.n = n;
  out.p = p;
  out.klm = {{k, l, m}};
  KahanSum ex, ex2, ppos;
  for (auto& pa : partial) {
    ex.merge(pa.ex);
    ex2.merge(pa.ex2);
    ppos.merge(pa.ppos);
  }
  out.e_x = ex.sum;
  out.e_x2 = ex2.sum;
  out.p_positive = ppos.sum;
  return out;
}

ExactMoments exact_moments_total(int n, double p) {
  SweepAccumulators acc;
  sweep(n, p, acc);
  ExactMoments out;
  out.n = n;
  out.p = p;
  out.e_x = acc.tot_ex.sum;
  out.e_x2 = acc.tot_ex2.sum;
  out.p_positive = acc.tot_ppos.sum;
  return out;
}

std::vector<ExactMoments> exact_moments_all(int n, double p) {
  SweepAccumulators acc;
  sweep(n, p, acc);
  auto points = domain_points(n);
  std::vector<ExactMoments> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    out[i].n = n;
    out[i].p = p;
    out[i].klm = points[i];
    out[i].e_x = acc.ex[i].sum;
    out[i].e_x2 = acc.ex2[i].sum;
    out[i].p_positive = acc.ppos[i].sum;
  }
  return out;
}

double exact_union_probability(int n, double p) {
  if (n < 3 || n > 5) throw std::invalid_argument("exact_union_probability: requires 3 <= n <= 5");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("exact_union_probability: p must lie in (0,1)");
  PairTable pt(n);
  const int pairs = pt.pairs;
  std::array<double, 16> powp{}, powq{};
  powp[0] = powq[0] = 1.0;
  for (int e = 1; e <= pairs; ++e) {
    powp[e] = powp[e - 1] * p;
    powq[e] = powq[e - 1] * (1.0 - p);
  }
  const std::uint64_t masks = 1ull << pairs;
  const std::uint64_t chunks = 64 < masks ? 64 : masks;
  std::vector<KahanSum> partial(chunks);
  parallel_chunks(masks, chunks, [&](std::uint64_t c, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t mask = begin; mask < end; ++mask) {
      Graph g(n);
      int e = 0;
      for (int idx = 0; idx < pairs; ++idx)
        if (mask >> idx & 1) {
          g.add_edge(pt.ends[idx][0], pt.ends[idx][1]);
          ++e;
        }
      auto res = exists_special(g);
      if (res.outcome == ExistsResult::Outcome::found)
        partial[c].add(powp[e] * powq[pairs - e]);
    }
  });
  KahanSum total;
  for (auto& pa : partial) total.merge(pa);
  return total.sum;
}

}  // namespace emso
