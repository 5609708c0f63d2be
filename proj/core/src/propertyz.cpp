#include "tdlc/propertyz.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

namespace tdlc {

BallGraph build_red_blue_tree_ball(int p, int q, int radius) {
  return GroupModel::red_blue_tree(p, q).realize_structure(radius)->ball;
}

ZMorphism z_morphism(const GroupModel& m, int ball_radius, int orbit_radius) {
  ArcLabelling labels = arc_labelling(m, ball_radius, orbit_radius);
  const ModelRealization& R = *labels.domain;
  if (!R.ball.digraph) {
    throw std::invalid_argument("z_morphism: model ball is not directed");
  }

  // forward classes = classes realized by actual arcs
  std::set<int> forward;
  const FiniteDigraph& dg = *R.ball.digraph;
  for (auto [u, v] : dg.arcs()) forward.insert(R.pair_class(u, v));

  QPlusLattice image = QPlusLattice::generated_by(labels.class_labels);
  int rank = image.rank();
  if (static_cast<int>(forward.size()) != rank || rank < 1) {
    throw std::runtime_error(
        "z_morphism: arc orbit count does not match the modular image rank");
  }

  ZMorphism zm;
  zm.target_rank = rank;
  zm.base_vertex = R.ball.root;
  zm.class_coordinate.assign(labels.class_labels.size(), -1);
  int coord = 0;
  for (int cls : forward) {
    zm.class_coordinate[cls] = coord++;
    zm.basis.push_back(labels.class_labels[cls]);
  }

  // values by breadth-first propagation: each forward step adds a basis unit
  int n = R.ball.graph.vertex_count();
  zm.values.assign(n, {});
  zm.values[zm.base_vertex].assign(rank, 0);
  std::queue<int> todo;
  todo.push(zm.base_vertex);
  std::vector<bool> seen(n, false);
  seen[zm.base_vertex] = true;
  while (!todo.empty()) {
    int v = todo.front();
    todo.pop();
    for (int w : R.ball.graph.neighbours(v)) {
      if (seen[w]) continue;
      seen[w] = true;
      int cls = R.pair_class(v, w);
      std::vector<long long> val = zm.values[v];
      if (zm.class_coordinate[cls] >= 0) {
        val[zm.class_coordinate[cls]] += 1;
      } else {
        // traversing an arc against its direction: the reverse class is the
        // forward one; subtract its coordinate
        int rcls = R.pair_class(w, v);
        if (zm.class_coordinate[rcls] < 0) {
          throw std::logic_error("z_morphism: unclassified arc direction");
        }
        val[zm.class_coordinate[rcls]] -= 1;
      }
      zm.values[w] = std::move(val);
      todo.push(w);
    }
  }
  return zm;
}

ZMorphismChecks verify_z_morphism(const ZMorphism& zm, const BallGraph& ball) {
  ZMorphismChecks out;
  if (!ball.digraph) {
    throw std::invalid_argument("verify_z_morphism: ball is not directed");
  }
  const FiniteDigraph& dg = *ball.digraph;

  out.is_morphism = true;
  out.collapse_is_morphism = true;
  out.bipartite = true;
  for (auto [u, v] : dg.arcs()) {
    const auto& a = zm.values[u];
    const auto& b = zm.values[v];
    int plus_one = 0;
    bool ok = a.size() == b.size() && !a.empty();
    long long sum_diff = 0;
    for (std::size_t i = 0; ok && i < a.size(); ++i) {
      long long d = b[i] - a[i];
      sum_diff += d;
      if (d == 1) {
        ++plus_one;
      } else if (d != 0) {
        ok = false;
      }
    }
    if (!ok || plus_one != 1) {
      out.is_morphism = false;
      if (!out.witness_arc) out.witness_arc = {u, v};
    }
    if (sum_diff != 1) out.collapse_is_morphism = false;
  }
  for (auto [u, v] : ball.graph.edges()) {
    long long su = std::accumulate(zm.values[u].begin(), zm.values[u].end(), 0ll);
    long long sv = std::accumulate(zm.values[v].begin(), zm.values[v].end(), 0ll);
    if ((su - sv) % 2 == 0) out.bipartite = false;
  }
  for (int v = 0; v < ball.graph.vertex_count(); ++v) {
    out.fibre_sizes[zm.values[v]] += 1;
  }
  return out;
}

std::uint64_t fibre_size_within(const ZMorphism& zm, const BallGraph& ball,
                                const std::vector<long long>& value, int max_depth) {
  std::uint64_t count = 0;
  for (int v = 0; v < ball.graph.vertex_count(); ++v) {
    if (ball.depth[v] <= max_depth && zm.values[v] == value) ++count;
  }
  return count;
}

FibreTransitivityReport arc_fibre_transitivity_check(const GroupModel& m,
                                                     int radius, int s) {
  auto R = m.realize(radius);
  if (!R->ball.digraph) {
    throw std::invalid_argument("arc_fibre_transitivity_check: ball is not directed");
  }
  if (radius < s) {
    throw std::invalid_argument("arc_fibre_transitivity_check: ball too shallow");
  }
  const FiniteDigraph& dg = *R->ball.digraph;

  FibreTransitivityReport report;

  // coprimality of every colour in-degree with every colour out-degree
  int root = R->ball.root;
  std::map<int, int> out_deg, in_deg;
  for (int w : dg.out_neighbours(root)) {
    out_deg[dg.colour_of(dg.arc_index(root, w))] += 1;
  }
  for (int w : dg.in_neighbours(root)) {
    in_deg[dg.colour_of(dg.arc_index(w, root))] += 1;
  }
  report.coprime_hypothesis = true;
  for (auto [ci, di] : in_deg) {
    (void)ci;
    for (auto [co, dout] : out_deg) {
      (void)co;
      if (std::gcd(di, dout) != 1) report.coprime_hypothesis = false;
    }
  }

  auto arcs = enumerate_s_arcs(dg, s, root);
  std::map<std::vector<int>, std::vector<std::vector<int>>> by_word;
  for (const auto& tuple : arcs) {
    std::vector<int> word;
    for (std::size_t i = 0; i + 1 < tuple.size(); ++i) {
      word.push_back(dg.colour_of(dg.arc_index(tuple[i], tuple[i + 1])));
    }
    by_word[word].push_back(tuple);
  }

  const auto& gens = R->stabilizer.generators();
  for (auto& [word, tuples] : by_word) {
    std::set<std::vector<int>> pool(tuples.begin(), tuples.end());
    int orbits = 0;
    while (!pool.empty()) {
      ++orbits;
      std::vector<std::vector<int>> todo{*pool.begin()};
      pool.erase(pool.begin());
      while (!todo.empty()) {
        auto t = todo.back();
        todo.pop_back();
        for (const Perm& g : gens) {
          std::vector<int> img(t.size());
          for (std::size_t i = 0; i < t.size(); ++i) img[i] = g[t[i]];
          auto it = pool.find(img);
          if (it != pool.end()) {
            pool.erase(it);
            todo.push_back(std::move(img));
          }
        }
      }
    }
    report.fibres.push_back({word, tuples.size(), orbits});
  }
  return report;
}

}  // namespace tdlc
