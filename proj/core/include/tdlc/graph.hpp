#ifndef TDLC_GRAPH_HPP
#define TDLC_GRAPH_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tdlc {

// Simple undirected graph on {0, ..., n-1}: no loops, no multiple edges.
class FiniteGraph {
 public:
  FiniteGraph() = default;
  FiniteGraph(int vertex_count, std::vector<std::pair<int, int>> edges);

  int vertex_count() const { return vertex_count_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbours(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  int max_degree() const;
  bool has_edge(int u, int v) const;
  bool is_connected() const;

  bool operator==(const FiniteGraph& other) const {
    return vertex_count_ == other.vertex_count_ && edges_ == other.edges_;
  }

 private:
  int vertex_count_ = 0;
  std::vector<std::pair<int, int>> edges_;  // normalized (u < v), sorted
  std::vector<std::vector<int>> adj_;
};

// Digraph on {0, ..., n-1}: the arc set avoids the diagonal. Arcs may carry
// integer colour labels (one per arc, in arc order).
class FiniteDigraph {
 public:
  FiniteDigraph() = default;
  FiniteDigraph(int vertex_count, std::vector<std::pair<int, int>> arcs,
                std::vector<int> colours = {});

  int vertex_count() const { return vertex_count_; }
  const std::vector<std::pair<int, int>>& arcs() const { return arcs_; }
  bool has_colours() const { return !colours_.empty(); }
  const std::vector<int>& colours() const { return colours_; }
  int colour_of(int arc_index) const { return colours_[arc_index]; }
  int arc_index(int u, int v) const;  // -1 when absent

  const std::vector<int>& out_neighbours(int v) const { return out_[v]; }
  const std::vector<int>& in_neighbours(int v) const { return in_[v]; }
  int out_degree(int v) const { return static_cast<int>(out_[v].size()); }
  int in_degree(int v) const { return static_cast<int>(in_[v].size()); }

  FiniteGraph underlying_graph() const;

  bool operator==(const FiniteDigraph& other) const {
    return vertex_count_ == other.vertex_count_ && arcs_ == other.arcs_ &&
           colours_ == other.colours_;
  }

 private:
  int vertex_count_ = 0;
  std::vector<std::pair<int, int>> arcs_;  // sorted lexicographically
  std::vector<int> colours_;               // parallel to arcs_, or empty
  std::vector<std::vector<int>> out_, in_;
};

// Rooted radius-r truncation of an infinite vertex-transitive graph.
// Interior vertices (depth < radius) carry the full degree of the modelled
// graph; boundary vertices may be truncated.
struct BallGraph {
  FiniteGraph graph;
  std::optional<FiniteDigraph> digraph;  // present for directed/coloured balls
  int root = 0;
  int radius = 0;
  std::vector<int> depth;  // distance from root

  bool interior(int v) const { return depth[v] < radius; }
  std::vector<int> interior_vertices() const;
};

// Partition of a vertex set into classes, for quotient graphs.
struct QuotientMap {
  std::vector<int> class_of;  // vertex -> class index
  int class_count = 0;

  void validate(int vertex_count) const;
  static QuotientMap from_blocks(int vertex_count,
                                 const std::vector<std::vector<int>>& blocks);
};

struct QuotientResult {
  FiniteGraph graph;
  bool loops_dropped = false;  // some edge joined two vertices of one class
};

// --- constructions ---------------------------------------------------------

// Rooted ball of the (d, d')-bi-regular tree (regular tree when d' is
// absent). The root lies on the degree-d side unless root_on_second_side.
BallGraph build_tree_ball(int d, std::optional<int> dprime, int radius,
                          bool root_on_second_side = false);

FiniteGraph line_graph(const FiniteGraph& g);

FiniteDigraph cartesian_product_digraph(const std::vector<FiniteDigraph>& factors);

QuotientResult quotient_graph(const FiniteGraph& g, const QuotientMap& q);

// All s-arcs: (s+1)-tuples with consecutive arcs and no immediate
// backtracking. Directed inputs follow arc directions.
std::vector<std::vector<int>> enumerate_s_arcs(const FiniteGraph& g, int s,
                                               std::optional<int> from = {});
std::vector<std::vector<int>> enumerate_s_arcs(const FiniteDigraph& g, int s,
                                               std::optional<int> from = {});

std::vector<int> bfs_distances(const FiniteGraph& g, int source);

// --- JSON text format ------------------------------------------------------
// {"vertices": n, "edges"|"arcs": [[u,v],...], "colours": [...]?,
//  "root": r?, "radius": k?}; round-trips are byte-exact.

std::string graph_to_json(const FiniteGraph& g);
FiniteGraph graph_from_json(const std::string& text);
std::string digraph_to_json(const FiniteDigraph& g);
FiniteDigraph digraph_from_json(const std::string& text);
std::string ball_to_json(const BallGraph& b);
BallGraph ball_from_json(const std::string& text);

}  // namespace tdlc

#endif  // TDLC_GRAPH_HPP
