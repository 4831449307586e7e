#include "emso/graph.hpp"

#include <charconv>
#include <set>
#include <sstream>
#include <stdexcept>

namespace emso {

namespace {

inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

}  // namespace

CounterRng::CounterRng(Seed seed, std::uint64_t stream) {
  key_ = mix64(mix64(seed.master + kGolden) ^ (stream + 0x8E9D5AAFCA34F7A1ull));
}

std::uint64_t CounterRng::at(std::uint64_t counter) const {
  return mix64(key_ + (counter + 1) * kGolden);
}

double CounterRng::uniform_at(std::uint64_t counter) const {
  return static_cast<double>(at(counter) >> 11) * 0x1.0p-53;
}

Graph::Graph(int n) : n_(n), words_((n + 63) / 64) {
  if (n < 1) throw std::invalid_argument("Graph: vertex count must be >= 1");
  bits_.assign(static_cast<std::size_t>(n_) * words_, 0);
}

std::uint64_t Graph::edge_count() const {
  std::uint64_t total = 0;
  for (std::uint64_t w : bits_) total += static_cast<std::uint64_t>(__builtin_popcountll(w));
  return total / 2;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u < 0 || u >= n_ || v < 0 || v >= n_)
    throw std::invalid_argument("has_edge: vertex out of range");
  if (u == v) return false;
  return adjacent(u, v);
}

void Graph::add_edge(Vertex u, Vertex v) {
  if (u < 0 || u >= n_ || v < 0 || v >= n_)
    throw std::invalid_argument("add_edge: vertex out of range");
  if (u == v) throw std::invalid_argument("add_edge: self-loop");
  bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] |= 1ull << (v & 63);
  bits_[static_cast<std::size_t>(v) * words_ + (u >> 6)] |= 1ull << (u & 63);
}

Graph sample_gnp(int n, double p, Seed seed, std::uint64_t stream) {
  if (n < 1) throw std::invalid_argument("sample_gnp: n must be >= 1");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("sample_gnp: p must lie in (0,1)");
  Graph g(n);
  CounterRng rng(seed, stream);
  std::uint64_t t = 0;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v, ++t)
      if (rng.uniform_at(t) < p) g.add_edge(u, v);
  return g;
}

namespace {

long parse_long(std::string_view tok, const char* what) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw std::invalid_argument(std::string("edge list: malformed ") + what);
  return value;
}

}  // namespace

Graph read_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string a, b;
  if (!(in >> a >> b)) throw std::invalid_argument("edge list: malformed header");
  long n = parse_long(a, "header");
  long m = parse_long(b, "header");
  if (n < 1 || m < 0) throw std::invalid_argument("edge list: malformed header");
  Graph g(static_cast<int>(n));
  std::set<std::pair<long, long>> seen;
  for (long e = 0; e < m; ++e) {
    if (!(in >> a >> b)) throw std::invalid_argument("edge list: truncated edge lines");
    long u = parse_long(a, "edge");
    long v = parse_long(b, "edge");
    if (u == v) throw std::invalid_argument("edge list: self-loop");
    if (u < 1 || v < 1 || u > n || v > n) throw std::invalid_argument("edge list: vertex out of range");
    if (u > v) throw std::invalid_argument("edge list: edge endpoints must satisfy u < v");
    if (!seen.insert({u, v}).second) throw std::invalid_argument("edge list: duplicate edge");
    g.add_edge(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
  }
  if (in >> a) throw std::invalid_argument("edge list: trailing content");
  return g;
}

std::string write_edge_list(const Graph& g) {
  std::string out = std::to_string(g.vertex_count());
  out += ' ';
  out += std::to_string(g.edge_count());
  out += '\n';
  for (Vertex u = 0; u < g.vertex_count(); ++u)
    for (Vertex v = u + 1; v < g.vertex_count(); ++v)
      if (g.adjacent(u, v)) {
        out += std::to_string(u + 1);
        out += ' ';
        out += std::to_string(v + 1);
        out += '\n';
      }
  return out;
}

}  // namespace emso
