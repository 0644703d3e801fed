// Undirected simple graph, edge-list ingestion and structural statistics.
#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ldq {

using VertexId = std::uint32_t;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Immutable after construction; safe to read from many threads.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adjacency_(n) {}

  // Normalizes the edge list: symmetrizes, drops self-loops and duplicates.
  static Graph from_edges(std::size_t n,
                          const std::vector<std::pair<VertexId, VertexId>>& edges) {
    Graph g(n);
    for (auto [u, v] : edges) {
      if (u >= n || v >= n)
        throw std::invalid_argument("from_edges: vertex id out of range");
      if (u == v) continue;
      g.adjacency_[u].push_back(v);
      g.adjacency_[v].push_back(u);
    }
    g.finalize();
    return g;
  }

  std::size_t vertex_count() const { return adjacency_.size(); }

  std::size_t edge_count() const {
    std::size_t twice = 0;
    for (const auto& nbrs : adjacency_) twice += nbrs.size();
    return twice / 2;
  }

  const std::vector<VertexId>& neighbors(VertexId u) const {
    check_vertex(u);
    return adjacency_[u];
  }

  std::size_t degree(VertexId u) const { return neighbors(u).size(); }

  bool has_edge(VertexId u, VertexId v) const {
    check_vertex(u);
    check_vertex(v);
    const auto& nbrs = adjacency_[u];
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
  }

  std::vector<std::size_t> degrees() const {
    std::vector<std::size_t> d(adjacency_.size());
    for (std::size_t u = 0; u < adjacency_.size(); ++u) d[u] = adjacency_[u].size();
    return d;
  }

  // Edge (u,v), u != v, present in the output iff absent here.
  Graph complement() const {
    const std::size_t n = vertex_count();
    Graph g(n);
    for (VertexId u = 0; u < n; ++u) {
      const auto& nbrs = adjacency_[u];
      std::size_t idx = 0;
      for (VertexId v = 0; v < n; ++v) {
        while (idx < nbrs.size() && nbrs[idx] < v) ++idx;
        const bool adjacent = idx < nbrs.size() && nbrs[idx] == v;
        if (!adjacent && v != u) g.adjacency_[u].push_back(v);
      }
    }
    return g;
  }

  void write_edge_list(std::ostream& os) const {
    for (VertexId u = 0; u < vertex_count(); ++u)
      for (VertexId v : adjacency_[u])
        if (u < v) os << u << ' ' << v << '\n';
  }

 private:
  void check_vertex(VertexId u) const {
    if (u >= adjacency_.size())
      throw std::invalid_argument("vertex id out of range");
  }

  void finalize() {
    for (auto& nbrs : adjacency_) {
      std::sort(nbrs.begin(), nbrs.end());
      nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
  }

  std::vector<std::vector<VertexId>> adjacency_;

  friend struct GraphBuilder;
};

// Accumulates raw edges cheaply, then normalizes once.
struct GraphBuilder {
  explicit GraphBuilder(std::size_t n) : graph(n) {}
  void add_edge(VertexId u, VertexId v) {
    graph.adjacency_[u].push_back(v);
    graph.adjacency_[v].push_back(u);
  }
  Graph take() {
    graph.finalize();
    return std::move(graph);
  }
  Graph graph;
};

// Sum of degrees over n(n-1).
inline double density(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n < 2) throw std::domain_error("density: need at least 2 vertices");
  double sum = 0.0;
  for (std::size_t d : g.degrees()) sum += static_cast<double>(d);
  return sum / (static_cast<double>(n) * static_cast<double>(n - 1));
}

inline std::size_t min_degree(const Graph& g) {
  if (g.vertex_count() == 0) throw std::domain_error("min_degree: empty graph");
  auto d = g.degrees();
  return *std::min_element(d.begin(), d.end());
}

inline std::size_t distinct_degree_count(const Graph& g) {
  if (g.vertex_count() == 0)
    throw std::domain_error("distinct_degree_count: empty graph");
  auto d = g.degrees();
  std::sort(d.begin(), d.end());
  return static_cast<std::size_t>(
      std::distance(d.begin(), std::unique(d.begin(), d.end())));
}

struct LoadOptions {
  bool directed = false;          // symmetrize a directed edge list
  bool take_complement = false;   // return the complement of the loaded graph
  bool largest_component = false; // keep only the largest connected component
};

struct IngestReport {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicate_edges_dropped = 0;
  std::size_t comment_lines = 0;
  std::string summary() const {
    std::ostringstream os;
    os << "ingest: n=" << vertices << " m=" << edges
       << " self_loops_dropped=" << self_loops_dropped
       << " duplicate_edges_dropped=" << duplicate_edges_dropped
       << " comment_lines=" << comment_lines;
    return os.str();
  }
};

struct LoadResult {
  Graph graph;
  IngestReport report;
};

namespace detail {

inline bool parse_int_token(const std::string& tok, long long& out) {
  if (tok.empty()) return false;
  char* end = nullptr;
  errno = 0;
  out = std::strtoll(tok.c_str(), &end, 10);
  return errno == 0 && end != nullptr && *end == '\0';
}

inline std::vector<VertexId> component_of(const Graph& g, VertexId start,
                                          std::vector<char>& seen) {
  std::vector<VertexId> comp{start};
  seen[start] = 1;
  for (std::size_t head = 0; head < comp.size(); ++head)
    for (VertexId v : g.neighbors(comp[head]))
      if (!seen[v]) {
        seen[v] = 1;
        comp.push_back(v);
      }
  return comp;
}

}  // namespace detail

// Text edge list: one "u v" pair per line, '#'-prefixed comment lines,
// arbitrary integer ids compacted to [0, n) in first-seen order. Tokens
// after the first two (e.g. weights) are ignored.
inline LoadResult load_edge_list(std::istream& in, const LoadOptions& opts = {}) {
  std::unordered_map<long long, VertexId> id_map;
  std::vector<std::pair<VertexId, VertexId>> edges;
  IngestReport report;

  auto intern = [&](long long raw) {
    auto [it, inserted] = id_map.emplace(raw, static_cast<VertexId>(id_map.size()));
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      ++report.comment_lines;
      continue;
    }
    std::istringstream ls(line);
    std::string tok_u, tok_v;
    long long raw_u = 0, raw_v = 0;
    if (!(ls >> tok_u >> tok_v) || !detail::parse_int_token(tok_u, raw_u) ||
        !detail::parse_int_token(tok_v, raw_v)) {
      throw ParseError("edge list parse error at line " + std::to_string(line_no) +
                       ": expected two integer ids");
    }
    const VertexId u = intern(raw_u);  // sequenced: first-seen order matters
    const VertexId v = intern(raw_v);
    edges.emplace_back(u, v);
  }
  if (edges.empty()) throw ParseError("edge list is empty");

  const std::size_t n = id_map.size();
  std::vector<std::set<VertexId>> adj(n);
  std::set<std::pair<VertexId, VertexId>> seen_arcs;  // duplicate accounting
  for (auto [u, v] : edges) {
    if (u == v) {
      ++report.self_loops_dropped;
      continue;
    }
    // Undirected storage either way. With directed input the reverse arc is
    // the symmetrization, not a duplicate; only a repeated arc counts.
    const auto arc = opts.directed ? std::pair{u, v}
                                   : std::pair{std::min(u, v), std::max(u, v)};
    if (!seen_arcs.insert(arc).second) ++report.duplicate_edges_dropped;
    adj[u].insert(v);
    adj[v].insert(u);
  }

  GraphBuilder builder(n);
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v : adj[u])
      if (u < v) builder.add_edge(u, v);
  Graph g = builder.take();

  if (opts.largest_component && g.vertex_count() > 0) {
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<VertexId> best;
    for (VertexId u = 0; u < g.vertex_count(); ++u)
      if (!seen[u]) {
        auto comp = detail::component_of(g, u, seen);
        if (comp.size() > best.size()) best = std::move(comp);
      }
    std::sort(best.begin(), best.end());  // keep first-seen relative order
    std::vector<VertexId> remap(g.vertex_count(), 0);
    for (std::size_t i = 0; i < best.size(); ++i) remap[best[i]] = static_cast<VertexId>(i);
    GraphBuilder sub(best.size());
    for (VertexId u : best)
      for (VertexId v : g.neighbors(u))
        if (u < v) sub.add_edge(remap[u], remap[v]);
    g = sub.take();
  }

  if (opts.take_complement) g = g.complement();

  report.vertices = g.vertex_count();
  report.edges = g.edge_count();
  return LoadResult{std::move(g), report};
}

}  // namespace ldq
