#include "tdlc/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>

namespace tdlc {

FiniteGraph::FiniteGraph(int vertex_count, std::vector<std::pair<int, int>> edges)
    : vertex_count_(vertex_count) {
  if (vertex_count < 0) throw std::invalid_argument("FiniteGraph: negative size");
  std::set<std::pair<int, int>> norm;
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count) {
      throw std::invalid_argument("FiniteGraph: edge endpoint out of range");
    }
    if (u == v) throw std::invalid_argument("FiniteGraph: loops are not allowed");
    norm.insert({std::min(u, v), std::max(u, v)});
  }
  edges_.assign(norm.begin(), norm.end());
  adj_.assign(vertex_count_, {});
  for (auto [u, v] : edges_) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

int FiniteGraph::max_degree() const {
  int d = 0;
  for (int v = 0; v < vertex_count_; ++v) d = std::max(d, degree(v));
  return d;
}

bool FiniteGraph::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= vertex_count_ || v >= vertex_count_) return false;
  const auto& nb = adj_[u];
  return std::binary_search(nb.begin(), nb.end(), v);
}

bool FiniteGraph::is_connected() const {
  if (vertex_count_ == 0) return true;
  auto dist = bfs_distances(*this, 0);
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

FiniteDigraph::FiniteDigraph(int vertex_count, std::vector<std::pair<int, int>> arcs,
                             std::vector<int> colours)
    : vertex_count_(vertex_count) {
  if (vertex_count < 0) throw std::invalid_argument("FiniteDigraph: negative size");
  if (!colours.empty() && colours.size() != arcs.size()) {
    throw std::invalid_argument("FiniteDigraph: colours must cover all arcs");
  }
  std::vector<std::size_t> idx(arcs.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return arcs[a] < arcs[b]; });
  for (std::size_t i = 0; i < idx.size(); ++i) {
    auto [u, v] = arcs[idx[i]];
    if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count) {
      throw std::invalid_argument("FiniteDigraph: arc endpoint out of range");
    }
    if (u == v) throw std::invalid_argument("FiniteDigraph: arcs avoid the diagonal");
    if (!arcs_.empty() && arcs_.back() == std::make_pair(u, v)) {
      throw std::invalid_argument("FiniteDigraph: duplicate arc");
    }
    arcs_.push_back({u, v});
    if (!colours.empty()) colours_.push_back(colours[idx[i]]);
  }
  out_.assign(vertex_count_, {});
  in_.assign(vertex_count_, {});
  for (auto [u, v] : arcs_) {
    out_[u].push_back(v);
    in_[v].push_back(u);
  }
}

int FiniteDigraph::arc_index(int u, int v) const {
  auto it = std::lower_bound(arcs_.begin(), arcs_.end(), std::make_pair(u, v));
  if (it != arcs_.end() && *it == std::make_pair(u, v)) {
    return static_cast<int>(it - arcs_.begin());
  }
  return -1;
}

FiniteGraph FiniteDigraph::underlying_graph() const {
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : arcs_) edges.push_back({u, v});
  return FiniteGraph(vertex_count_, std::move(edges));
}

std::vector<int> BallGraph::interior_vertices() const {
  std::vector<int> out;
  for (int v = 0; v < graph.vertex_count(); ++v) {
    if (interior(v)) out.push_back(v);
  }
  return out;
}

void QuotientMap::validate(int vertex_count) const {
  if (static_cast<int>(class_of.size()) != vertex_count) {
    throw std::invalid_argument("QuotientMap: size mismatch with vertex set");
  }
  std::vector<bool> used(class_count, false);
  for (int c : class_of) {
    if (c < 0 || c >= class_count) {
      throw std::invalid_argument("QuotientMap: class index out of range");
    }
    used[c] = true;
  }
  for (bool u : used) {
    if (!u) throw std::invalid_argument("QuotientMap: empty class");
  }
}

QuotientMap QuotientMap::from_blocks(int vertex_count,
                                     const std::vector<std::vector<int>>& blocks) {
  QuotientMap q;
  q.class_of.assign(vertex_count, -1);
  q.class_count = static_cast<int>(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (int v : blocks[b]) {
      if (v < 0 || v >= vertex_count || q.class_of[v] != -1) {
        throw std::invalid_argument("QuotientMap: blocks do not partition");
      }
      q.class_of[v] = static_cast<int>(b);
    }
  }
  for (int c : q.class_of) {
    if (c == -1) throw std::invalid_argument("QuotientMap: blocks do not cover");
  }
  return q;
}

// ---------------------------------------------------------------------------

BallGraph build_tree_ball(int d, std::optional<int> dprime, int radius,
                          bool root_on_second_side) {
  if (radius < 0) throw std::invalid_argument("build_tree_ball: radius < 0");
  int d2 = dprime.value_or(d);
  if (d < 1 || d2 < 1) throw std::invalid_argument("build_tree_ball: degrees < 1");

  // Degree of a vertex at depth k: the two sides of the bipartition
  // alternate with the parity of k.
  auto side_degree = [&](int depth_k) {
    bool second_side = (depth_k % 2 == 1) != root_on_second_side;
    return second_side ? d2 : d;
  };

  std::vector<std::pair<int, int>> edges;
  std::vector<int> depth{0};
  std::vector<int> layer{0};
  int next = 1;
  for (int k = 0; k < radius; ++k) {
    std::vector<int> next_layer;
    for (int v : layer) {
      int children = side_degree(k) - (k == 0 ? 0 : 1);
      for (int c = 0; c < children; ++c) {
        edges.push_back({v, next});
        depth.push_back(k + 1);
        next_layer.push_back(next);
        ++next;
      }
    }
    layer = std::move(next_layer);
  }

  BallGraph ball;
  ball.graph = FiniteGraph(next, std::move(edges));
  ball.root = 0;
  ball.radius = radius;
  ball.depth = std::move(depth);
  return ball;
}

FiniteGraph line_graph(const FiniteGraph& g) {
  const auto& edges = g.edges();
  int n = static_cast<int>(edges.size());
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      auto [a, b] = edges[i];
      auto [c, d] = edges[j];
      if (a == c || a == d || b == c || b == d) out.push_back({i, j});
    }
  }
  return FiniteGraph(n, std::move(out));
}

FiniteDigraph cartesian_product_digraph(const std::vector<FiniteDigraph>& factors) {
  if (factors.empty()) {
    throw std::invalid_argument("cartesian_product_digraph: no factors");
  }
  std::vector<int> sizes;
  long long total = 1;
  for (const auto& f : factors) {
    sizes.push_back(f.vertex_count());
    total *= f.vertex_count();
    if (total > 5000000) {
      throw std::invalid_argument("cartesian_product_digraph: product too large");
    }
  }
  int n = static_cast<int>(factors.size());
  auto encode = [&](const std::vector<int>& coord) {
    long long idx = 0;
    for (int i = 0; i < n; ++i) idx = idx * sizes[i] + coord[i];
    return static_cast<int>(idx);
  };

  std::vector<std::pair<int, int>> arcs;
  std::vector<int> colours;
  std::vector<int> coord(n, 0);
  while (true) {
    int base = encode(coord);
    for (int i = 0; i < n; ++i) {
      for (int w : factors[i].out_neighbours(coord[i])) {
        std::vector<int> moved = coord;
        moved[i] = w;
        arcs.push_back({base, encode(moved)});
        colours.push_back(i);
      }
    }
    int pos = n - 1;
    while (pos >= 0 && ++coord[pos] == sizes[pos]) coord[pos--] = 0;
    if (pos < 0) break;
  }
  return FiniteDigraph(static_cast<int>(total), std::move(arcs), std::move(colours));
}

QuotientResult quotient_graph(const FiniteGraph& g, const QuotientMap& q) {
  q.validate(g.vertex_count());
  QuotientResult result;
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : g.edges()) {
    int a = q.class_of[u];
    int b = q.class_of[v];
    if (a == b) {
      result.loops_dropped = true;
    } else {
      edges.push_back({a, b});
    }
  }
  result.graph = FiniteGraph(q.class_count, std::move(edges));
  return result;
}

namespace {

template <typename NextFn>
std::vector<std::vector<int>> enumerate_s_arcs_impl(int vertex_count, int s,
                                                    std::optional<int> from,
                                                    NextFn&& next_of) {
  if (s < 0) throw std::invalid_argument("enumerate_s_arcs: s < 0");
  std::vector<std::vector<int>> out;
  std::vector<int> starts;
  if (from) {
    if (*from < 0 || *from >= vertex_count) {
      throw std::invalid_argument("enumerate_s_arcs: start out of range");
    }
    starts.push_back(*from);
  } else {
    for (int v = 0; v < vertex_count; ++v) starts.push_back(v);
  }
  std::vector<int> tuple;
  auto extend = [&](auto&& self) -> void {
    if (static_cast<int>(tuple.size()) == s + 1) {
      out.push_back(tuple);
      return;
    }
    int v = tuple.back();
    int forbidden = tuple.size() >= 2 ? tuple[tuple.size() - 2] : -1;
    for (int w : next_of(v)) {
      if (w == forbidden) continue;
      tuple.push_back(w);
      self(self);
      tuple.pop_back();
    }
  };
  for (int v : starts) {
    tuple = {v};
    extend(extend);
  }
  return out;
}

}  // namespace

std::vector<std::vector<int>> enumerate_s_arcs(const FiniteGraph& g, int s,
                                               std::optional<int> from) {
  return enumerate_s_arcs_impl(g.vertex_count(), s, from,
                               [&](int v) -> const std::vector<int>& {
                                 return g.neighbours(v);
                               });
}

std::vector<std::vector<int>> enumerate_s_arcs(const FiniteDigraph& g, int s,
                                               std::optional<int> from) {
  return enumerate_s_arcs_impl(g.vertex_count(), s, from,
                               [&](int v) -> const std::vector<int>& {
                                 return g.out_neighbours(v);
                               });
}

std::vector<int> bfs_distances(const FiniteGraph& g, int source) {
  std::vector<int> dist(g.vertex_count(), -1);
  std::queue<int> todo;
  dist[source] = 0;
  todo.push(source);
  while (!todo.empty()) {
    int v = todo.front();
    todo.pop();
    for (int w : g.neighbours(v)) {
      if (dist[w] == -1) {
        dist[w] = dist[v] + 1;
        todo.push(w);
      }
    }
  }
  return dist;
}

}  // namespace tdlc
