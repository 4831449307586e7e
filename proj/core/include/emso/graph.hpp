#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace emso {

using Vertex = int;  // 0-based internally; external formats are 1-based

// Master seed for all randomized operations. Independent consumers (trials,
// heuristic restarts) draw from distinct stream indices of the same master.
struct Seed {
  std::uint64_t master = 0;
};

// Stateless counter-based generator: the value at any counter position is a
// pure function of (master, stream, counter), so draws can be made in any
// order or in parallel and still reproduce bit-for-bit.
class CounterRng {
 public:
  CounterRng(Seed seed, std::uint64_t stream);
  std::uint64_t at(std::uint64_t counter) const;
  double uniform_at(std::uint64_t counter) const;  // [0, 1)

 private:
  std::uint64_t key_;
};

// Labeled undirected simple graph; adjacency held as packed 64-bit rows.
// Symmetric with zero diagonal after every construction path.
class Graph {
 public:
  explicit Graph(int n);

  int vertex_count() const { return n_; }
  int words_per_row() const { return words_; }
  std::uint64_t edge_count() const;

  // Symmetric lookup; throws on out-of-range vertices. u == v returns false.
  bool has_edge(Vertex u, Vertex v) const;

  void add_edge(Vertex u, Vertex v);  // throws on self-loop / out of range

  std::span<const std::uint64_t> row(Vertex v) const {
    return {bits_.data() + static_cast<std::size_t>(v) * words_, static_cast<std::size_t>(words_)};
  }

  // True iff v has a neighbor inside the vertex set given as packed words.
  bool row_intersects(Vertex v, std::span<const std::uint64_t> set) const {
    const std::uint64_t* r = bits_.data() + static_cast<std::size_t>(v) * words_;
    for (int w = 0; w < words_; ++w)
      if (r[w] & set[w]) return true;
    return false;
  }

  bool adjacent(Vertex u, Vertex v) const {  // unchecked fast path
    return (bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] >> (v & 63)) & 1u;
  }

 private:
  int n_;
  int words_;
  std::vector<std::uint64_t> bits_;
};

// G(n,p) with one Bernoulli draw per unordered pair, pairs visited in fixed
// ascending (u,v), u < v order; deterministic in (n, p, seed, stream).
Graph sample_gnp(int n, double p, Seed seed, std::uint64_t stream = 0);

// Edge-list text: header "n m", then m lines "u v" with 1 <= u < v <= n.
Graph read_edge_list(std::string_view text);
std::string write_edge_list(const Graph& g);

}  // namespace emso
