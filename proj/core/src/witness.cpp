#include "emso/witness.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>
#include <stdexcept>

#include "emso/errors.hpp"

namespace emso {

namespace {

using Words = std::vector<std::uint64_t>;

struct Mask {
  Words w;
  explicit Mask(int words) : w(words, 0) {}
  void set(Vertex v) { w[v >> 6] |= 1ull << (v & 63); }
  void clear(Vertex v) { w[v >> 6] &= ~(1ull << (v & 63)); }
  bool test(Vertex v) const { return (w[v >> 6] >> (v & 63)) & 1u; }
  bool any() const {
    for (auto x : w)
      if (x) return true;
    return false;
  }
  int count() const {
    int c = 0;
    for (auto x : w) c += __builtin_popcountll(x);
    return c;
  }
};

bool intersects(const Graph& g, Vertex v, const Mask& m) {
  return g.row_intersects(v, std::span<const std::uint64_t>(m.w));
}

int edges_into(const Graph& g, Vertex v, const Mask& m) {
  auto r = g.row(v);
  int c = 0;
  for (std::size_t i = 0; i < r.size(); ++i) c += __builtin_popcountll(r[i] & m.w[i]);
  return c;
}

}  // namespace

void validate_tuple(int n, const KTuple& t) {
  std::vector<char> used(n, 0);
  for (int i = 0; i < 3; ++i) {
    if (t.sets[i].empty()) throw std::invalid_argument("tuple: set X" + std::to_string(i + 1) + " is empty");
    for (Vertex v : t.sets[i]) {
      if (v < 0 || v >= n) throw std::invalid_argument("tuple: vertex out of range");
      if (used[v]) throw std::invalid_argument("tuple: sets overlap");
      used[v] = 1;
    }
    if (std::find(t.sets[i].begin(), t.sets[i].end(), t.marked[i]) == t.sets[i].end())
      throw std::invalid_argument("tuple: marked vertex x" + std::to_string(i + 1) + " not in its set");
  }
}

bool is_special(const Graph& g, const KTuple& t) {
  const int n = g.vertex_count();
  validate_tuple(n, t);
  const int words = g.words_per_row();
  std::array<Mask, 3> sets{Mask(words), Mask(words), Mask(words)};
  Mask all(words);
  for (int i = 0; i < 3; ++i)
    for (Vertex v : t.sets[i]) {
      sets[i].set(v);
      all.set(v);
    }
  // cross condition: exactly one X_i–X_j edge and it is {x_i, x_j}
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      int e = 0;
      for (Vertex v : t.sets[i]) e += edges_into(g, v, sets[j]);
      if (e != 1) return false;
      if (!g.adjacent(t.marked[i], t.marked[j])) return false;
    }
  // domination of the outside
  for (Vertex v = 0; v < n; ++v) {
    if (all.test(v)) continue;
    for (int i = 0; i < 3; ++i)
      if (!intersects(g, v, sets[i])) return false;
  }
  return true;
}

namespace {

double log_choose(double n, double k) {
  return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
}

// Enumerate s-subsets of pool[0..pool_size) by index; fn gets the chosen indices.
template <typename F>
void for_each_subset(int pool_size, int s, F&& fn) {
  if (s > pool_size) return;
  std::vector<int> idx(s);
  for (int i = 0; i < s; ++i) idx[i] = i;
  if (s == 0) {
    fn(idx);
    return;
  }
  for (;;) {
    fn(idx);
    int i = s - 1;
    while (i >= 0 && idx[i] == pool_size - s + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
  }
}

struct CountContext {
  const Graph& g;
  int n, words;
  std::array<int, 3> size;           // k, l, m
  std::array<Vertex, 3> anchor;      // x1, x2, x3
  std::array<Mask, 3> set_mask;
  Mask used;
  std::uint64_t total = 0;

  CountContext(const Graph& gr, int k, int l, int m)
      : g(gr), n(gr.vertex_count()), words(gr.words_per_row()),
        size{k, l, m}, set_mask{Mask(words), Mask(words), Mask(words)}, used(words) {}

  bool dominated() const {
    for (Vertex v = 0; v < n; ++v) {
      if (used.test(v)) continue;
      for (int i = 0; i < 3; ++i)
        if (!intersects(g, v, set_mask[i])) return false;
    }
    return true;
  }

  // Vertices eligible to extend set `stage`: unused and with no edge into the
  // other two sets (anchors included, so the anchor pair edges stay unique).
  std::vector<Vertex> pool(int stage) const {
    std::vector<Vertex> out;
    int o1 = (stage + 1) % 3, o2 = (stage + 2) % 3;
    for (Vertex v = 0; v < n; ++v) {
      if (used.test(v)) continue;
      if (intersects(g, v, set_mask[o1]) || intersects(g, v, set_mask[o2])) continue;
      out.push_back(v);
    }
    return out;
  }

  void extend(int stage) {
    if (stage == 3) {
      if (dominated()) ++total;
      return;
    }
    auto cand = pool(stage);
    int need = size[stage] - 1;
    for_each_subset(static_cast<int>(cand.size()), need, [&](const std::vector<int>& idx) {
      for (int i : idx) {
        set_mask[stage].set(cand[i]);
        used.set(cand[i]);
      }
      extend(stage + 1);
      for (int i : idx) {
        set_mask[stage].clear(cand[i]);
        used.clear(cand[i]);
      }
    });
  }
};

}  // namespace

std::uint64_t count_special(const Graph& g, int k, int l, int m) {
  const int n = g.vertex_count();
  if (k < 1 || l < 1 || m < 1) throw std::invalid_argument("count_special: sizes must be >= 1");
  if (k + l + m > n) throw std::invalid_argument("count_special: k+l+m exceeds n");
  double log_states = log_choose(n, k) + log_choose(n - k, l) + log_choose(n - k - l, m);
  if (log_states > std::log(1e9))
    throw InfeasibleError("count_special: enumeration size exceeds 10^9");

  std::uint64_t total = 0;
  // The three anchors must form a triangle; root the enumeration there.
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = 0; b < n; ++b) {
      if (b == a || !g.adjacent(a, b)) continue;
      for (Vertex c = 0; c < n; ++c) {
        if (c == a || c == b || !g.adjacent(a, c) || !g.adjacent(b, c)) continue;
        CountContext ctx(g, k, l, m);
        ctx.anchor = {a, b, c};
        for (int i = 0; i < 3; ++i) {
          ctx.set_mask[i].set(ctx.anchor[i]);
          ctx.used.set(ctx.anchor[i]);
        }
        ctx.extend(0);
        total += ctx.total;
      }
    }
  return total;
}

namespace {

struct ExactSearch {
  const Graph& g;
  int n, words;
  std::uint64_t node_limit;
  std::uint64_t nodes = 0;
  bool out_of_budget = false;
  std::array<Mask, 3> sets;
  Mask outside, assigned;
  std::array<Vertex, 3> anchor{};

  ExactSearch(const Graph& gr, std::uint64_t limit)
      : g(gr), n(gr.vertex_count()), words(gr.words_per_row()), node_limit(limit),
        sets{Mask(words), Mask(words), Mask(words)}, outside(words), assigned(words) {}

  bool can_join(Vertex v, int i) const {
    int o1 = (i + 1) % 3, o2 = (i + 2) % 3;
    return !intersects(g, v, sets[o1]) && !intersects(g, v, sets[o2]);
  }

  // Every outside vertex must either already see X_i or still have an
  // unassigned neighbor that could join X_i.
  bool outside_viable() const {
    std::array<Mask, 3> eligible{Mask(words), Mask(words), Mask(words)};
    for (Vertex u = 0; u < n; ++u) {
      if (assigned.test(u)) continue;
      for (int i = 0; i < 3; ++i)
        if (can_join(u, i)) eligible[i].set(u);
    }
    for (Vertex v = 0; v < n; ++v) {
      if (!outside.test(v)) continue;
      for (int i = 0; i < 3; ++i) {
        if (intersects(g, v, sets[i])) continue;
        auto row = g.row(v);
        bool ok = false;
        for (int w = 0; w < words; ++w)
          if (row[w] & eligible[i].w[w]) {
            ok = true;
            break;
          }
        if (!ok) return false;
      }
    }
    return true;
  }

  bool dfs(Vertex v) {
    if (out_of_budget) return false;
    while (v < n && assigned.test(v)) ++v;
    if (v == n) {
      // leaf: outside_viable with no unassigned vertices means full domination
      return outside_viable();
    }
    for (int i = 0; i < 4; ++i) {
      if (++nodes > node_limit) {
        out_of_budget = true;
        return false;
      }
      if (i < 3) {
        if (!can_join(v, i)) continue;
        sets[i].set(v);
      } else {
        outside.set(v);
      }
      assigned.set(v);
      bool ok = outside_viable() && dfs(v + 1);
      if (ok) return true;  // keep the assignment in place: it is the witness
      if (i < 3)
        sets[i].clear(v);
      else
        outside.clear(v);
      assigned.clear(v);
      if (out_of_budget) return false;
    }
    return false;
  }

  KTuple harvest() const {
    KTuple t;
    t.marked = anchor;
    for (int i = 0; i < 3; ++i)
      for (Vertex v = 0; v < n; ++v)
        if (sets[i].test(v)) t.sets[i].push_back(v);
    return t;
  }
};

ExistsResult exists_exact(const Graph& g, const SearchBudget& budget) {
  const int n = g.vertex_count();
  ExistsResult res;
  res.outcome = ExistsResult::Outcome::none;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) {
      if (!g.adjacent(a, b)) continue;
      for (Vertex c = b + 1; c < n; ++c) {
        if (!g.adjacent(a, c) || !g.adjacent(b, c)) continue;
        ExactSearch s(g, budget.node_limit - res.nodes);
        s.anchor = {a, b, c};
        for (int i = 0; i < 3; ++i) {
          s.sets[i].set(s.anchor[i]);
          s.assigned.set(s.anchor[i]);
        }
        bool ok = s.outside_viable() && s.dfs(0);
        res.nodes += s.nodes;
        if (ok) {
          KTuple t = s.harvest();
          if (is_special(g, t)) {  // leaf acceptance double-check
            res.outcome = ExistsResult::Outcome::found;
            res.witness = std::move(t);
            return res;
          }
        }
        if (s.out_of_budget) {
          res.outcome = ExistsResult::Outcome::budget_exceeded;
          return res;
        }
      }
    }
  return res;
}

ExistsResult exists_heuristic(const Graph& g, const SearchBudget& budget) {
  const int n = g.vertex_count();
  const int words = g.words_per_row();
  ExistsResult res;
  res.outcome = ExistsResult::Outcome::unknown;
  std::vector<std::array<Vertex, 3>> triangles;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) {
      if (!g.adjacent(a, b)) continue;
      for (Vertex c = b + 1; c < n; ++c)
        if (g.adjacent(a, c) && g.adjacent(b, c)) triangles.push_back({a, b, c});
    }
  if (triangles.empty()) return res;

  for (int attempt = 0; attempt < budget.restarts; ++attempt) {
    CounterRng rng(budget.seed, 0x48455552 + static_cast<std::uint64_t>(attempt));
    std::uint64_t ctr = 0;
    auto rnd = [&](std::uint64_t mod) { return rng.at(ctr++) % mod; };
    auto tri = triangles[rnd(triangles.size())];
    std::array<Mask, 3> sets{Mask(words), Mask(words), Mask(words)};
    Mask used(words);
    for (int i = 0; i < 3; ++i) {
      sets[i].set(tri[i]);
      used.set(tri[i]);
    }
    std::vector<Vertex> order;
    for (Vertex v = 0; v < n; ++v)
      if (!used.test(v)) order.push_back(v);
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rnd(i)]);

    KTuple t;
    t.marked = tri;
    for (Vertex v : order) {
      int start = static_cast<int>(rnd(3));
      for (int d = 0; d < 3; ++d) {
        int i = (start + d) % 3;
        int o1 = (i + 1) % 3, o2 = (i + 2) % 3;
        if (!g.row_intersects(v, std::span<const std::uint64_t>(sets[o1].w)) &&
            !g.row_intersects(v, std::span<const std::uint64_t>(sets[o2].w))) {
          sets[i].set(v);
          break;
        }
      }
    }
    for (int i = 0; i < 3; ++i) {
      t.sets[i].clear();
      for (Vertex v = 0; v < n; ++v)
        if (sets[i].test(v)) t.sets[i].push_back(v);
    }
    if (is_special(g, t)) {
      res.outcome = ExistsResult::Outcome::found;
      res.witness = std::move(t);
      res.nodes = static_cast<std::uint64_t>(attempt) + 1;
      return res;
    }
  }
  return res;
}

}  // namespace

ExistsResult exists_special(const Graph& g, const SearchBudget& budget) {
  if (budget.mode == SearchBudget::Mode::exact) {
    if (g.vertex_count() > budget.max_n)
      throw InfeasibleError("exists_special: exact mode refuses n > " + std::to_string(budget.max_n) +
                            " (use heuristic mode)");
    return exists_exact(g, budget);
  }
  return exists_heuristic(g, budget);
}

OverlapPattern overlap(const KTuple& tx, const KTuple& ty) {
  auto isect = [](const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    int c = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
      if (*i < *j)
        ++i;
      else if (*j < *i)
        ++j;
      else {
        ++c;
        ++i;
        ++j;
      }
    }
    return c;
  };
  auto sorted = [](const std::array<std::vector<Vertex>, 3>& s) {
    std::vector<Vertex> u;
    for (auto& v : s) u.insert(u.end(), v.begin(), v.end());
    std::sort(u.begin(), u.end());
    return u;
  };
  std::array<std::vector<Vertex>, 3> xs = tx.sets, ys = ty.sets;
  for (auto& s : xs) std::sort(s.begin(), s.end());
  for (auto& s : ys) std::sort(s.begin(), s.end());
  OverlapPattern pat;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) pat.cell[i][j] = isect(ys[i], xs[j]);
  std::vector<Vertex> xu = sorted(xs), yu = sorted(ys);
  pat.r = isect(xu, yu);
  for (int i = 0; i < 3; ++i) pat.side[i] = isect(ys[i], xu);
  for (int j = 0; j < 3; ++j) pat.side[3 + j] = isect(xs[j], yu);
  return pat;
}

std::int64_t cross_pair_count(const OverlapPattern& pat, int k) {
  std::int64_t r = 0;
  for (int i = 0; i < 3; ++i) {
    std::int64_t row = 0, col = 0;
    for (int j = 0; j < 3; ++j) {
      if (pat.cell[i][j] < 0) throw std::invalid_argument("cross_pair_count: negative cell");
      row += pat.cell[i][j];
      col += pat.cell[j][i];
    }
    if (row != pat.side[i] || col != pat.side[3 + i])
      throw std::invalid_argument("cross_pair_count: side totals inconsistent with cells");
    if (row > k || col > k) throw std::invalid_argument("cross_pair_count: side total exceeds k");
    r += row;
  }
  if (r != pat.r) throw std::invalid_argument("cross_pair_count: r inconsistent with cells");
  std::int64_t twice = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      std::int64_t other = 0;
      for (int i2 = 0; i2 < 3; ++i2)
        for (int j2 = 0; j2 < 3; ++j2)
          if (i2 != i && j2 != j) other += pat.cell[i2][j2];
      twice += static_cast<std::int64_t>(pat.cell[i][j]) * other;
    }
  return 3 * static_cast<std::int64_t>(k) * k - twice / 2;
}

bool lemma3_hypothesis(const OverlapPattern& pat, int k, int r0) {
  for (int s = 0; s < 3; ++s) {
    if (pat.side[s] <= k - r0) continue;
    bool rows_ok = true;
    for (int j = 0; j < 3; ++j)
      if (pat.cell[s][j] >= k - 6 * r0) rows_ok = false;
    if (rows_ok) return true;
  }
  return false;
}

namespace {

std::vector<Vertex> parse_vertex_list(std::string_view text) {
  std::vector<Vertex> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string tok(text.substr(pos, comma == std::string_view::npos ? comma : comma - pos));
    std::size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size() || v < 1) throw std::invalid_argument("tuple: bad vertex '" + tok + "'");
    out.push_back(v - 1);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw std::invalid_argument("tuple: empty vertex list");
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    throw std::invalid_argument("tuple: repeated vertex in set");
  return out;
}

}  // namespace

KTuple parse_tuple(std::string_view text) {
  KTuple t;
  std::array<bool, 6> got{};
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t semi = text.find(';', pos);
    std::string_view field = text.substr(pos, semi == std::string_view::npos ? semi : semi - pos);
    std::size_t eq = field.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("tuple: expected key=value");
    std::string_view key = field.substr(0, eq);
    std::string_view val = field.substr(eq + 1);
    if (key.size() == 2 && (key[0] == 'X' || key[0] == 'x') && val.size() > 0) {
      int idx = key[1] - '1';
      if (idx < 0 || idx > 2) throw std::invalid_argument("tuple: bad key");
      if (key[0] == 'X') {
        t.sets[idx] = parse_vertex_list(val);
        got[idx] = true;
      } else {
        auto one = parse_vertex_list(val);
        if (one.size() != 1) throw std::invalid_argument("tuple: marked vertex must be a single vertex");
        t.marked[idx] = one[0];
        got[3 + idx] = true;
      }
    } else {
      throw std::invalid_argument("tuple: bad key");
    }
    if (semi == std::string_view::npos) break;
    pos = semi + 1;
  }
  for (bool b : got)
    if (!b) throw std::invalid_argument("tuple: missing field (need X1,x1,X2,x2,X3,x3)");
  return t;
}

std::string format_tuple(const KTuple& t) {
  std::ostringstream out;
  for (int i = 0; i < 3; ++i) {
    if (i) out << ';';
    out << 'X' << (i + 1) << '=';
    for (std::size_t j = 0; j < t.sets[i].size(); ++j) {
      if (j) out << ',';
      out << t.sets[i][j] + 1;
    }
    out << ";x" << (i + 1) << '=' << t.marked[i] + 1;
  }
  return out.str();
}

}  // namespace emso
