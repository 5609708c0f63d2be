#include "tdlc/models.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace tdlc {

namespace {

long long pair_key(int n, int u, int v) {
  return static_cast<long long>(u) * n + v;
}

// Incremental rooted-ball assembly shared by the tree families.
struct BallBuilder {
  explicit BallBuilder(int radius) : radius(radius) {}

  int radius;
  std::vector<int> parent{-1};
  std::vector<int> depth{0};
  std::vector<std::vector<int>> children{{}};
  std::vector<std::vector<int>> child_block{{}};
  std::vector<std::vector<int>> child_colour{{}};
  std::vector<std::pair<int, int>> edges;
  std::vector<std::pair<int, int>> arcs;
  std::vector<int> arc_colours;

  int size() const { return static_cast<int>(parent.size()); }

  int add_child(int v, int block = -1, int colour = -1) {
    int id = size();
    parent.push_back(v);
    depth.push_back(depth[v] + 1);
    children.emplace_back();
    child_block.emplace_back();
    child_colour.emplace_back();
    children[v].push_back(id);
    child_block[v].push_back(block);
    child_colour[v].push_back(colour);
    edges.push_back({v, id});
    return id;
  }

  void finish(ModelRealization& R, bool directed) {
    if (directed) {
      FiniteDigraph dg(size(), arcs, arc_colours);
      R.ball.graph = dg.underlying_graph();
      R.ball.digraph = std::move(dg);
    } else {
      R.ball.graph = FiniteGraph(size(), edges);
    }
    R.ball.root = 0;
    R.ball.radius = radius;
    R.ball.depth = depth;
    R.parent = std::move(parent);
    R.children = std::move(children);
    R.child_block = std::move(child_block);
    R.child_colour = std::move(child_colour);
  }
};

// Automorphism of a rooted ball exchanging the subtrees hanging at the given
// seed pairs, matched child-by-child in canonical order.
Perm subtree_swap(const std::vector<std::vector<int>>& children, int n,
                  std::vector<std::pair<int, int>> todo) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 0);
  while (!todo.empty()) {
    auto [x, y] = todo.back();
    todo.pop_back();
    img[x] = y;
    img[y] = x;
    const auto& cx = children[x];
    const auto& cy = children[y];
    if (cx.size() != cy.size()) {
      throw std::logic_error("subtree_swap: shape mismatch");
    }
    for (std::size_t i = 0; i < cx.size(); ++i) todo.push_back({cx[i], cy[i]});
  }
  return Perm(std::move(img));
}

void check_generator_budget(std::size_t gens, std::size_t n) {
  if (gens * n > 16u * 1000 * 1000) {
    throw std::runtime_error(
        "stabilizer realization too large at this radius; reduce the radius");
  }
}

void fill_orbits(ModelRealization& R) {
  int n = R.ball.graph.vertex_count();
  R.orbit_of.assign(n, -1);
  R.orbit_sizes.clear();
  const auto& gens = R.stabilizer.generators();
  for (int v = 0; v < n; ++v) {
    if (R.orbit_of[v] != -1) continue;
    int id = static_cast<int>(R.orbit_sizes.size());
    std::vector<int> orb{v};
    R.orbit_of[v] = id;
    for (std::size_t i = 0; i < orb.size(); ++i) {
      for (const Perm& g : gens) {
        int w = g[orb[i]];
        if (R.orbit_of[w] == -1) {
          R.orbit_of[w] = id;
          orb.push_back(w);
        }
      }
    }
    R.orbit_sizes.push_back(orb.size());
  }
}

void all_pairs_single_class(ModelRealization& R) {
  int n = R.ball.graph.vertex_count();
  for (auto [u, v] : R.ball.graph.edges()) {
    R.pair_class_map[pair_key(n, u, v)] = 0;
    R.pair_class_map[pair_key(n, v, u)] = 0;
  }
}

// --- Aut(T_d) on the d-regular tree ---------------------------------------

std::unique_ptr<ModelRealization> build_full_aut(int d, int radius, bool with_group) {
  if (d < 1) throw std::invalid_argument("full_aut: degree must be >= 1");
  BallBuilder b(radius);
  std::vector<int> layer{0};
  for (int k = 0; k < radius; ++k) {
    std::vector<int> next;
    for (int v : layer) {
      int cnt = (k == 0) ? d : d - 1;
      for (int c = 0; c < cnt; ++c) next.push_back(b.add_child(v));
    }
    layer = std::move(next);
  }

  auto R = std::make_unique<ModelRealization>();
  R->family = ModelFamily::FullAut;
  R->has_group = with_group;
  b.finish(*R, false);

  if (with_group) {
    // Adjacent child swaps along the leftmost spine generate the whole
    // rooted-ball automorphism group (conjugates reach every vertex).
    std::vector<Perm> gens;
    int n = R->ball.graph.vertex_count();
    int spine = 0;
    while (true) {
      const auto& ch = R->children[spine];
      if (ch.empty()) break;
      for (std::size_t i = 0; i + 1 < ch.size(); ++i) {
        gens.push_back(subtree_swap(R->children, n, {{ch[i], ch[i + 1]}}));
      }
      spine = ch[0];
    }
    check_generator_budget(gens.size(), n);
    R->stabilizer = PermGroup(n, std::move(gens));
    fill_orbits(*R);
  }

  if (radius >= 1) {
    int rep = R->children[0][0];
    R->arc_classes.push_back({"edge", rep, rep});
  }
  all_pairs_single_class(*R);
  return R;
}

// --- Burger--Mozes style universal group U(F) ------------------------------

std::unique_ptr<ModelRealization> build_bm(const PermGroup& F, int radius,
                                           bool with_group) {
  int d = F.degree();
  if (d < 2) throw std::invalid_argument("bm_universal: need degree >= 2");
  if (!F.is_transitive()) {
    throw std::invalid_argument("bm_universal: local group must be transitive");
  }
  BallBuilder b(radius);
  // parent_colour[v] = colour of the edge to the parent, -1 at the root
  std::vector<int> parent_colour{-1};
  std::vector<int> layer{0};
  for (int k = 0; k < radius; ++k) {
    std::vector<int> next;
    for (int v : layer) {
      for (int a = 0; a < d; ++a) {
        if (a == parent_colour[v]) continue;
        int w = b.add_child(v, -1, a);
        parent_colour.push_back(a);
        next.push_back(w);
      }
    }
    layer = std::move(next);
  }

  auto R = std::make_unique<ModelRealization>();
  R->family = ModelFamily::BMUniversal;
  R->has_group = with_group;
  b.finish(*R, false);
  int n = R->ball.graph.vertex_count();

  auto child_by_colour = [&](int v, int a) -> int {
    int c = parent_colour[v];
    int idx = (c == -1 || a < c) ? a : a - 1;
    return R->children[v][idx];
  };

  if (with_group) {
    std::vector<Perm> gens;
    // Colour-constant relabelling for each generator of F.
    for (const Perm& f : F.generators()) {
      std::vector<int> img(n);
      img[0] = 0;
      std::vector<int> todo{0};
      for (std::size_t i = 0; i < todo.size(); ++i) {
        int v = todo[i];
        for (std::size_t ci = 0; ci < R->children[v].size(); ++ci) {
          int w = R->children[v][ci];
          img[w] = child_by_colour(img[v], f[R->child_colour[v][ci]]);
          todo.push_back(w);
        }
      }
      gens.push_back(Perm(std::move(img)));
    }
    // Subtree-constant relabellings by the stabilizer of the parent colour.
    std::vector<std::vector<Perm>> stab_gens(d);
    for (int c = 0; c < d; ++c) stab_gens[c] = F.point_stabilizer(c).generators();
    for (int v = 1; v < n; ++v) {
      if (R->children[v].empty()) continue;
      for (const Perm& f : stab_gens[parent_colour[v]]) {
        std::vector<int> img(n);
        std::iota(img.begin(), img.end(), 0);
        std::vector<int> todo{v};
        for (std::size_t i = 0; i < todo.size(); ++i) {
          int x = todo[i];
          for (std::size_t ci = 0; ci < R->children[x].size(); ++ci) {
            int w = R->children[x][ci];
            img[w] = child_by_colour(img[x], f[R->child_colour[x][ci]]);
            todo.push_back(w);
          }
        }
        gens.push_back(Perm(std::move(img)));
      }
    }
    check_generator_budget(gens.size(), n);
    R->stabilizer = PermGroup(n, std::move(gens));
    fill_orbits(*R);
  }

  if (radius >= 1) {
    int rep = R->children[0][0];
    R->arc_classes.push_back({"edge", rep, rep});
  }
  all_pairs_single_class(*R);
  return R;
}

// --- End stabilizer of T_{d,d'} on its derived tree ------------------------
//
// Vertices of one bipartition class, edges between vertices two steps apart
// along rays toward the fixed end; the derived tree is regular of degree
// (d-1)(d'-1)+1. Child block indices record which intermediate vertex of
// T_{d,d'} an edge runs through; the stabilizer of the root fixes the ray
// toward the end pointwise and preserves blocks.

enum class EndKind { Ray, Off };

std::unique_ptr<ModelRealization> build_end_stab(int d, int dp, int radius,
                                                 bool with_group) {
  if (d < 2 || dp < 2) throw std::invalid_argument("end_stab: degrees must be >= 2");
  BallBuilder b(radius);
  std::vector<EndKind> kind{EndKind::Ray};
  std::vector<int> ray{0};

  std::vector<int> layer{0};
  for (int k = 0; k < radius; ++k) {
    std::vector<int> next;
    for (int v : layer) {
      if (kind[v] == EndKind::Ray) {
        int up = b.add_child(v, -1);
        kind.push_back(EndKind::Ray);
        ray.push_back(up);
        next.push_back(up);
        if (v == 0) {
          // all q = (d-1)(d'-1) downward edges, grouped by intermediate
          for (int blk = 0; blk < d - 1; ++blk) {
            for (int j = 0; j < dp - 1; ++j) {
              int w = b.add_child(v, blk);
              kind.push_back(EndKind::Off);
              next.push_back(w);
            }
          }
        } else {
          // block 0 shares the intermediate with the ray edge below
          for (int j = 0; j < dp - 2; ++j) {
            int w = b.add_child(v, 0);
            kind.push_back(EndKind::Off);
            next.push_back(w);
          }
          for (int blk = 1; blk < d - 1; ++blk) {
            for (int j = 0; j < dp - 1; ++j) {
              int w = b.add_child(v, blk);
              kind.push_back(EndKind::Off);
              next.push_back(w);
            }
          }
        }
      } else {
        for (int blk = 0; blk < d - 1; ++blk) {
          for (int j = 0; j < dp - 1; ++j) {
            int w = b.add_child(v, blk);
            kind.push_back(EndKind::Off);
            next.push_back(w);
          }
        }
      }
    }
    layer = std::move(next);
  }

  auto R = std::make_unique<ModelRealization>();
  R->family = ModelFamily::EndStab;
  R->has_group = with_group;
  b.finish(*R, false);
  int n = R->ball.graph.vertex_count();

  R->tree_up.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    if (kind[v] == EndKind::Ray) {
      if (!R->children[v].empty()) R->tree_up[v] = R->children[v][0];
    } else {
      R->tree_up[v] = R->parent[v];
    }
  }

  if (with_group) {
    std::vector<Perm> gens;
    for (int v = 0; v < n; ++v) {
      const auto& ch = R->children[v];
      if (ch.empty()) continue;
      // adjacent swaps inside each block
      for (std::size_t i = 0; i + 1 < ch.size(); ++i) {
        if (R->child_block[v][i] >= 0 &&
            R->child_block[v][i] == R->child_block[v][i + 1]) {
          gens.push_back(subtree_swap(R->children, n, {{ch[i], ch[i + 1]}}));
        }
      }
      // adjacent swaps of whole equal-size blocks
      std::vector<std::pair<int, int>> block_span;  // block -> [first, last]
      for (std::size_t i = 0; i < ch.size(); ++i) {
        int blk = R->child_block[v][i];
        if (blk < 0) continue;
        while (static_cast<int>(block_span.size()) <= blk) block_span.push_back({-1, -1});
        if (block_span[blk].first == -1) block_span[blk].first = static_cast<int>(i);
        block_span[blk].second = static_cast<int>(i);
      }
      for (std::size_t blk = 0; blk + 1 < block_span.size(); ++blk) {
        auto [f1, l1] = block_span[blk];
        auto [f2, l2] = block_span[blk + 1];
        if (f1 == -1 || f2 == -1) continue;
        if (l1 - f1 != l2 - f2) continue;  // unequal sizes are separate orbits
        std::vector<std::pair<int, int>> seeds;
        for (int i = 0; i <= l1 - f1; ++i) seeds.push_back({ch[f1 + i], ch[f2 + i]});
        gens.push_back(subtree_swap(R->children, n, seeds));
      }
    }
    check_generator_budget(gens.size(), n);
    R->stabilizer = PermGroup(n, std::move(gens));
    fill_orbits(*R);
  }

  // traversal classes: 0 = toward the end, 1 = away from it
  for (auto [u, v] : R->ball.graph.edges()) {
    int up_uv = (R->tree_up[u] == v) ? 0 : 1;
    R->pair_class_map[pair_key(n, u, v)] = up_uv;
    R->pair_class_map[pair_key(n, v, u)] = 1 - up_uv;
  }
  if (radius >= 1 && R->children[0].size() >= 2) {
    R->arc_classes.push_back({"up", R->children[0][0], R->children[0][1]});
    R->arc_classes.push_back({"down", R->children[0][1], R->children[0][0]});
  }
  return R;
}

// --- regular directed tree, out-degree p / in-degree q ----------------------

enum class DirKind { Root, ViaOut, ViaIn };

std::unique_ptr<ModelRealization> build_directed_tree(int p, int q, int radius,
                                                      bool with_group) {
  if (p < 1 || q < 1) throw std::invalid_argument("directed_tree: degrees >= 1");
  BallBuilder b(radius);
  std::vector<DirKind> kind{DirKind::Root};
  std::vector<int> layer{0};
  for (int k = 0; k < radius; ++k) {
    std::vector<int> next;
    for (int v : layer) {
      int outs = p - (kind[v] == DirKind::ViaIn ? 1 : 0);
      int ins = q - (kind[v] == DirKind::ViaOut ? 1 : 0);
      for (int i = 0; i < outs; ++i) {
        int w = b.add_child(v);
        kind.push_back(DirKind::ViaOut);
        b.arcs.push_back({v, w});
        b.arc_colours.push_back(0);
        next.push_back(w);
      }
      for (int i = 0; i < ins; ++i) {
        int w = b.add_child(v);
        kind.push_back(DirKind::ViaIn);
        b.arcs.push_back({w, v});
        b.arc_colours.push_back(0);
        next.push_back(w);
      }
    }
    layer = std::move(next);
  }

  auto R = std::make_unique<ModelRealization>();
  R->family = ModelFamily::DirectedTree;
  R->has_group = with_group;
  b.finish(*R, true);
  int n = R->ball.graph.vertex_count();

  for (int v = 0; v < n; ++v) {
    for (int w : R->children[v]) {
      int fwd = (kind[w] == DirKind::ViaOut) ? 0 : 1;
      // class 0 traverses an arc forwards, class 1 against it
      if (fwd == 0) {
        R->pair_class_map[pair_key(n, v, w)] = 0;
        R->pair_class_map[pair_key(n, w, v)] = 1;
      } else {
        R->pair_class_map[pair_key(n, w, v)] = 0;
        R->pair_class_map[pair_key(n, v, w)] = 1;
      }
    }
  }

  if (with_group) {
    std::vector<Perm> gens;
    for (int v = 0; v < n; ++v) {
      const auto& ch = R->children[v];
      for (std::size_t i = 0; i + 1 < ch.size(); ++i) {
        if (kind[ch[i]] == kind[ch[i + 1]]) {
          gens.push_back(subtree_swap(R->children, n, {{ch[i], ch[i + 1]}}));
        }
      }
    }
    check_generator_budget(gens.size(), n);
    R->stabilizer = PermGroup(n, std::move(gens));
    fill_orbits(*R);
  }

  if (radius >= 1) {
    int out_rep = R->children[0][0];
    int in_rep = R->children[0][p];
    R->arc_classes.push_back({"arc", out_rep, in_rep});
    R->arc_classes.push_back({"arc-reversed", in_rep, out_rep});
  }
  return R;
}

// --- red/blue coloured directed tree (two colour classes of arcs) ----------

enum class RBKind { Root, RedOut, BlueOut, RedIn, BlueIn };

std::unique_ptr<ModelRealization> build_red_blue(int p, int q, int radius,
                                                 bool with_group) {
  if (p < 1 || q < 1) throw std::invalid_argument("red_blue_tree: degrees >= 1");
  BallBuilder b(radius);
  std::vector<RBKind> kind{RBKind::Root};
  std::vector<int> layer{0};
  for (int k = 0; k < radius; ++k) {
    std::vector<int> next;
    for (int v : layer) {
      RBKind kv = kind[v];
      int red_out = p;
      int blue_out = q;
      int red_in = (kv == RBKind::RedOut) ? 0 : 1;
      int blue_in = (kv == RBKind::BlueOut) ? 0 : 1;
      if (kv == RBKind::RedIn) red_out = p - 1;
      if (kv == RBKind::BlueIn) blue_out = q - 1;
      auto emit = [&](int count, RBKind child_kind, int colour, bool outgoing) {
        for (int i = 0; i < count; ++i) {
          int w = b.add_child(v);
          kind.push_back(child_kind);
          if (outgoing) {
            b.arcs.push_back({v, w});
          } else {
            b.arcs.push_back({w, v});
          }
          b.arc_colours.push_back(colour);
          next.push_back(w);
        }
      };
      emit(red_out, RBKind::RedOut, 0, true);
      emit(blue_out, RBKind::BlueOut, 1, true);
      emit(red_in, RBKind::RedIn, 0, false);
      emit(blue_in, RBKind::BlueIn, 1, false);
    }
    layer = std::move(next);
  }

  auto R = std::make_unique<ModelRealization>();
  R->family = ModelFamily::RedBlueTree;
  R->has_group = with_group;
  b.finish(*R, true);
  int n = R->ball.graph.vertex_count();

  // classes: 0 red forward, 1 blue forward, 2 red backward, 3 blue backward
  for (int v = 0; v < n; ++v) {
    for (int w : R->children[v]) {
      switch (kind[w]) {
        case RBKind::RedOut:
          R->pair_class_map[pair_key(n, v, w)] = 0;
          R->pair_class_map[pair_key(n, w, v)] = 2;
          break;
        case RBKind::BlueOut:
          R->pair_class_map[pair_key(n, v, w)] = 1;
          R->pair_class_map[pair_key(n, w, v)] = 3;
          break;
        case RBKind::RedIn:
          R->pair_class_map[pair_key(n, w, v)] = 0;
          R->pair_class_map[pair_key(n, v, w)] = 2;
          break;
        case RBKind::BlueIn:
          R->pair_class_map[pair_key(n, w, v)] = 1;
          R->pair_class_map[pair_key(n, v, w)] = 3;
          break;
        default:
          break;
      }
    }
  }

  if (with_group) {
    std::vector<Perm> gens;
    for (int v = 0; v < n; ++v) {
      const auto& ch = R->children[v];
      for (std::size_t i = 0; i + 1 < ch.size(); ++i) {
        if (kind[ch[i]] == kind[ch[i + 1]]) {
          gens.push_back(subtree_swap(R->children, n, {{ch[i], ch[i + 1]}}));
        }
      }
    }
    check_generator_budget(gens.size(), n);
    R->stabilizer = PermGroup(n, std::move(gens));
    fill_orbits(*R);
  }

  if (radius >= 1) {
    int red_out = R->children[0][0];
    int blue_out = R->children[0][p];
    int red_in = R->children[0][p + q];
    int blue_in = R->children[0][p + q + 1];
    R->arc_classes.push_back({"red", red_out, red_in});
    R->arc_classes.push_back({"blue", blue_out, blue_in});
    R->arc_classes.push_back({"red-reversed", red_in, red_out});
    R->arc_classes.push_back({"blue-reversed", blue_in, blue_out});
  }
  return R;
}

// --- Aut+(T_d) on the line graph of T_d -------------------------------------

std::unique_ptr<ModelRealization> build_aut_plus(int d, int radius, bool with_group) {
  if (d < 2) throw std::invalid_argument("aut_plus: degree must be >= 2");
  auto tree = build_full_aut(d, radius + 1, false);
  const FiniteGraph& tg = tree->ball.graph;
  const auto& tree_edges = tg.edges();

  FiniteGraph L = line_graph(tg);
  int e0 = -1;
  for (std::size_t i = 0; i < tree_edges.size(); ++i) {
    if (tree_edges[i] == std::make_pair(0, 1)) {
      e0 = static_cast<int>(i);
      break;
    }
  }
  if (e0 == -1) throw std::logic_error("aut_plus: root edge not found");
  std::vector<int> ldist = bfs_distances(L, e0);

  std::vector<int> keep, new_index(L.vertex_count(), -1);
  for (int i = 0; i < L.vertex_count(); ++i) {
    if (ldist[i] >= 0 && ldist[i] <= radius) {
      new_index[i] = static_cast<int>(keep.size());
      keep.push_back(i);
    }
  }
  std::vector<std::pair<int, int>> edges;
  for (auto [a, c] : L.edges()) {
    if (new_index[a] != -1 && new_index[c] != -1) {
      edges.push_back({new_index[a], new_index[c]});
    }
  }

  auto R = std::make_unique<ModelRealization>();
  R->family = ModelFamily::AutPlus;
  R->has_group = with_group;
  R->ball.graph = FiniteGraph(static_cast<int>(keep.size()), std::move(edges));
  R->ball.root = new_index[e0];
  R->ball.radius = radius;
  R->ball.depth.resize(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) R->ball.depth[i] = ldist[keep[i]];

  int n = R->ball.graph.vertex_count();
  auto tree_edge_of = [&](int line_vertex) { return tree_edges[keep[line_vertex]]; };

  if (with_group) {
    // Automorphisms of the tree ball fixing both endpoints of the root edge.
    std::vector<Perm> tree_gens;
    int tn = tg.vertex_count();
    for (int v = 0; v < tn; ++v) {
      const auto& ch = tree->children[v];
      std::size_t first = (v == 0) ? 1 : 0;  // keep vertex 1 fixed at the root
      for (std::size_t i = first; i + 1 < ch.size(); ++i) {
        tree_gens.push_back(subtree_swap(tree->children, tn, {{ch[i], ch[i + 1]}}));
      }
    }
    auto edge_lookup = [&](int a, int c) {
      auto key = std::make_pair(std::min(a, c), std::max(a, c));
      auto it = std::lower_bound(tree_edges.begin(), tree_edges.end(), key);
      return static_cast<int>(it - tree_edges.begin());
    };
    std::vector<Perm> gens;
    for (const Perm& g : tree_gens) {
      std::vector<int> img(n);
      for (int i = 0; i < n; ++i) {
        auto [a, c] = tree_edge_of(i);
        img[i] = new_index[edge_lookup(g[a], g[c])];
      }
      Perm lg(std::move(img));
      if (!lg.is_identity()) gens.push_back(std::move(lg));
    }
    check_generator_budget(gens.size(), n);
    R->stabilizer = PermGroup(n, std::move(gens));
    fill_orbits(*R);
  }

  // Traversal class by the bipartition side of the shared tree vertex.
  auto tree_depth = [&](int v) { return tree->ball.depth[v]; };
  for (auto [x, y] : R->ball.graph.edges()) {
    auto [a, c] = tree_edge_of(x);
    auto [a2, c2] = tree_edge_of(y);
    int shared = (a == a2 || a == c2) ? a : c;
    int cls = tree_depth(shared) % 2;
    R->pair_class_map[pair_key(n, x, y)] = cls;
    R->pair_class_map[pair_key(n, y, x)] = cls;
  }
  if (radius >= 1) {
    int rep0 = -1, rep1 = -1;
    for (int w : R->ball.graph.neighbours(R->ball.root)) {
      int cls = R->pair_class_map[pair_key(n, R->ball.root, w)];
      if (cls == 0 && rep0 == -1) rep0 = w;
      if (cls == 1 && rep1 == -1) rep1 = w;
    }
    if (rep0 != -1) R->arc_classes.push_back({"shared-even", rep0, rep0});
    if (rep1 != -1) R->arc_classes.push_back({"shared-odd", rep1, rep1});
  }
  return R;
}

// --- finite oracle -----------------------------------------------------------

std::unique_ptr<ModelRealization> build_oracle(const PermGroup& G,
                                               const FiniteGraph& graph,
                                               bool with_group) {
  with_group = true;  // finite oracles are cheap; pair classes need orbits
  if (G.degree() != graph.vertex_count()) {
    throw std::invalid_argument("finite_oracle: group degree != vertex count");
  }
  for (const Perm& g : G.generators()) {
    for (auto [u, v] : graph.edges()) {
      if (!graph.has_edge(g[u], g[v])) {
        throw std::invalid_argument("finite_oracle: group does not act on the graph");
      }
    }
  }
  if (!G.is_transitive()) {
    throw std::invalid_argument("finite_oracle: action is not vertex-transitive");
  }

  auto R = std::make_unique<ModelRealization>();
  R->family = ModelFamily::FiniteOracle;
  R->has_group = with_group;
  R->ball.graph = graph;
  R->ball.root = 0;
  R->ball.depth = bfs_distances(graph, 0);
  int ecc = *std::max_element(R->ball.depth.begin(), R->ball.depth.end());
  R->ball.radius = ecc + 1;  // every vertex of a finite graph is interior
  int n = graph.vertex_count();

  if (with_group) {
    R->stabilizer = G.point_stabilizer(0);
    fill_orbits(*R);
  }

  // Transversal of the vertex orbit, for reverse representatives.
  std::vector<Perm> transversal(n);
  std::vector<bool> have(n, false);
  transversal[0] = Perm(n);
  have[0] = true;
  std::vector<int> todo{0};
  for (std::size_t i = 0; i < todo.size(); ++i) {
    for (const Perm& g : G.generators()) {
      int w = g[todo[i]];
      if (!have[w]) {
        have[w] = true;
        transversal[w] = transversal[todo[i]] * g;
        todo.push_back(w);
      }
    }
  }

  if (with_group) {
    // arc classes = stabilizer orbits on the root's neighbours
    std::vector<int> class_of_nbr(n, -1);
    for (int w : graph.neighbours(0)) {
      bool found = false;
      for (std::size_t k = 0; k < R->arc_classes.size(); ++k) {
        if (R->orbit_of[R->arc_classes[k].rep_target] == R->orbit_of[w]) {
          class_of_nbr[w] = static_cast<int>(k);
          found = true;
          break;
        }
      }
      if (!found) {
        int rev = transversal[w].inverse()[0];
        class_of_nbr[w] = static_cast<int>(R->arc_classes.size());
        std::ostringstream name;
        name << "orbit" << R->arc_classes.size();
        R->arc_classes.push_back({name.str(), w, rev});
      }
    }
    // classify every ordered adjacent pair through the transversal
    for (auto [u, v] : graph.edges()) {
      Perm to_root = transversal[u].inverse();
      R->pair_class_map[pair_key(n, u, v)] = class_of_nbr[to_root[v]];
      to_root = transversal[v].inverse();
      R->pair_class_map[pair_key(n, v, u)] = class_of_nbr[to_root[u]];
    }
  }
  return R;
}

// --- product with a finite group --------------------------------------------

std::unique_ptr<ModelRealization> build_product(const GroupModel& base,
                                                const PermGroup& F, int radius,
                                                bool with_group) {
  auto baseR = with_group ? base.realize(radius) : base.realize_structure(radius);
  std::vector<Perm> felems = F.elements(100000);
  int m = static_cast<int>(felems.size());
  int bn = baseR->ball.graph.vertex_count();
  int n = bn * m;

  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : baseR->ball.graph.edges()) {
    for (int x = 0; x < m; ++x) edges.push_back({u * m + x, v * m + x});
  }
  for (int v = 0; v < bn; ++v) {
    for (int x = 0; x < m; ++x) {
      for (int y = x + 1; y < m; ++y) edges.push_back({v * m + x, v * m + y});
    }
  }

  auto R = std::make_unique<ModelRealization>();
  R->family = ModelFamily::ProductWithFinite;
  R->has_group = with_group;
  R->ball.graph = FiniteGraph(n, std::move(edges));
  R->ball.root = baseR->ball.root * m;  // identity is the first element
  R->ball.radius = baseR->ball.radius;
  R->ball.depth = bfs_distances(R->ball.graph, R->ball.root);
  R->product_base_vertices = bn;
  R->fibre_size = m;

  if (with_group) {
    std::vector<Perm> gens;
    for (const Perm& g : baseR->stabilizer.generators()) {
      std::vector<int> img(n);
      for (int v = 0; v < bn; ++v) {
        for (int x = 0; x < m; ++x) img[v * m + x] = g[v] * m + x;
      }
      gens.push_back(Perm(std::move(img)));
    }
    check_generator_budget(gens.size(), n);
    R->stabilizer = PermGroup(n, std::move(gens));
    fill_orbits(*R);

    // action of the compact normal factor on the fibres (right translation)
    std::unordered_map<std::string, int> index_of;
    auto key_of = [](const Perm& p) {
      std::string s;
      for (int i : p.images()) {
        s += std::to_string(i);
        s += ',';
      }
      return s;
    };
    for (int x = 0; x < m; ++x) index_of[key_of(felems[x])] = x;
    for (const Perm& f : F.generators()) {
      std::vector<int> img(n);
      for (int v = 0; v < bn; ++v) {
        for (int x = 0; x < m; ++x) {
          img[v * m + x] = v * m + index_of.at(key_of(felems[x] * f));
        }
      }
      R->normal_factor_gens.push_back(Perm(std::move(img)));
    }
  }

  // traversal classes: base classes first, then the fibre class
  int nb_classes = static_cast<int>(baseR->arc_classes.size());
  for (const auto& ac : baseR->arc_classes) {
    R->arc_classes.push_back({ac.name, ac.rep_target * m, ac.reverse_target * m});
  }
  if (m >= 2) {
    int x1 = 1;
    Perm inv = felems[1].inverse();
    int xr = 0;
    for (int x = 0; x < m; ++x) {
      if (felems[x] == inv) {
        xr = x;
        break;
      }
    }
    R->arc_classes.push_back(
        {"fibre", R->ball.root + x1, baseR->ball.root * m + xr});
  }
  for (auto [uu, vv] : R->ball.graph.edges()) {
    int bu = uu / m, bv = vv / m;
    int cls;
    if (bu == bv) {
      cls = nb_classes;
    } else {
      cls = baseR->pair_class(bu, bv);
    }
    R->pair_class_map[pair_key(n, uu, vv)] = cls;
    int cls2 = (bu == bv) ? nb_classes : baseR->pair_class(bv, bu);
    R->pair_class_map[pair_key(n, vv, uu)] = cls2;
  }
  return R;
}

// --- Cartesian product of out-regular directed trees ------------------------

std::unique_ptr<ModelRealization> build_cartesian(const std::vector<int>& out_degrees,
                                                  int radius, bool with_group) {
  if (out_degrees.empty()) {
    throw std::invalid_argument("cartesian_trees: need at least one factor");
  }
  int nf = static_cast<int>(out_degrees.size());
  std::vector<std::unique_ptr<ModelRealization>> factors;
  std::vector<FiniteDigraph> factor_digraphs;
  for (int i = 0; i < nf; ++i) {
    factors.push_back(build_directed_tree(out_degrees[i], 1, radius, with_group));
    factor_digraphs.push_back(*factors.back()->ball.digraph);
  }
  FiniteDigraph prod = cartesian_product_digraph(factor_digraphs);

  auto R = std::make_unique<ModelRealization>();
  R->family = ModelFamily::CartesianTrees;
  R->has_group = with_group;
  R->ball.graph = prod.underlying_graph();
  R->ball.digraph = std::move(prod);
  R->ball.root = 0;
  R->ball.radius = radius;
  R->ball.depth = bfs_distances(R->ball.graph, 0);
  int n = R->ball.graph.vertex_count();

  std::vector<int> sizes;
  for (const auto& f : factors) sizes.push_back(f->ball.graph.vertex_count());
  auto decode = [&](int idx) {
    std::vector<int> coord(nf);
    for (int i = nf - 1; i >= 0; --i) {
      coord[i] = idx % sizes[i];
      idx /= sizes[i];
    }
    return coord;
  };
  auto encode = [&](const std::vector<int>& coord) {
    long long idx = 0;
    for (int i = 0; i < nf; ++i) idx = idx * sizes[i] + coord[i];
    return static_cast<int>(idx);
  };

  if (with_group) {
    std::vector<Perm> gens;
    for (int i = 0; i < nf; ++i) {
      for (const Perm& g : factors[i]->stabilizer.generators()) {
        std::vector<int> img(n);
        for (int idx = 0; idx < n; ++idx) {
          auto coord = decode(idx);
          coord[i] = g[coord[i]];
          img[idx] = encode(coord);
        }
        gens.push_back(Perm(std::move(img)));
      }
    }
    check_generator_budget(gens.size(), n);
    R->stabilizer = PermGroup(n, std::move(gens));
    fill_orbits(*R);
  }

  for (auto [u, v] : R->ball.graph.edges()) {
    auto cu = decode(u), cv = decode(v);
    int i = 0;
    while (cu[i] == cv[i]) ++i;
    int fc = factors[i]->pair_class(cu[i], cv[i]);
    R->pair_class_map[pair_key(n, u, v)] = 2 * i + fc;
    R->pair_class_map[pair_key(n, v, u)] = 2 * i + (1 - fc);
  }
  for (int i = 0; i < nf && radius >= 1; ++i) {
    std::vector<int> coord(nf, 0);
    coord[i] = factors[i]->arc_classes[0].rep_target;
    int fwd = encode(coord);
    coord[i] = factors[i]->arc_classes[1].rep_target;
    int bwd = encode(coord);
    std::ostringstream fname, bname;
    fname << "factor" << i;
    bname << "factor" << i << "-reversed";
    R->arc_classes.push_back({fname.str(), fwd, bwd});
    R->arc_classes.push_back({bname.str(), bwd, fwd});
  }
  return R;
}

}  // namespace

// ---------------------------------------------------------------------------

int ModelRealization::pair_class(int u, int v) const {
  auto it = pair_class_map.find(pair_key(ball.graph.vertex_count(), u, v));
  if (it == pair_class_map.end()) {
    throw std::invalid_argument("pair_class: vertices are not adjacent");
  }
  return it->second;
}

std::string family_name(ModelFamily f) {
  switch (f) {
    case ModelFamily::FiniteOracle: return "finite_oracle";
    case ModelFamily::FullAut: return "full_aut";
    case ModelFamily::AutPlus: return "aut_plus";
    case ModelFamily::EndStab: return "end_stab";
    case ModelFamily::BMUniversal: return "bm_universal";
    case ModelFamily::ProductWithFinite: return "product_finite";
    case ModelFamily::DirectedTree: return "directed_tree";
    case ModelFamily::RedBlueTree: return "red_blue";
    case ModelFamily::CartesianTrees: return "cartesian_trees";
  }
  return "?";
}

GroupModel GroupModel::full_aut(int d) {
  GroupModel m;
  m.family_ = ModelFamily::FullAut;
  m.p1_ = d;
  return m;
}

GroupModel GroupModel::aut_plus(int d) {
  GroupModel m;
  m.family_ = ModelFamily::AutPlus;
  m.p1_ = d;
  return m;
}

GroupModel GroupModel::end_stab(int d, int dprime) {
  GroupModel m;
  m.family_ = ModelFamily::EndStab;
  m.p1_ = d;
  m.p2_ = dprime;
  return m;
}

GroupModel GroupModel::bm_universal(const PermGroup& local_group) {
  GroupModel m;
  m.family_ = ModelFamily::BMUniversal;
  m.p1_ = local_group.degree();
  m.fgroup_ = local_group;
  return m;
}

GroupModel GroupModel::finite_oracle(const PermGroup& group, const FiniteGraph& graph) {
  GroupModel m;
  m.family_ = ModelFamily::FiniteOracle;
  m.fgroup_ = group;
  m.oracle_graph_ = graph;
  return m;
}

GroupModel GroupModel::product_with_finite(const GroupModel& base, const PermGroup& finite) {
  GroupModel m;
  m.family_ = ModelFamily::ProductWithFinite;
  m.base_ = std::make_shared<GroupModel>(base);
  m.fgroup_ = finite;
  return m;
}

GroupModel GroupModel::directed_tree(int out_degree, int in_degree) {
  GroupModel m;
  m.family_ = ModelFamily::DirectedTree;
  m.p1_ = out_degree;
  m.p2_ = in_degree;
  return m;
}

GroupModel GroupModel::red_blue_tree(int red_out, int blue_out) {
  GroupModel m;
  m.family_ = ModelFamily::RedBlueTree;
  m.p1_ = red_out;
  m.p2_ = blue_out;
  return m;
}

GroupModel GroupModel::cartesian_trees(const std::vector<int>& out_degrees) {
  GroupModel m;
  m.family_ = ModelFamily::CartesianTrees;
  m.degrees_ = out_degrees;
  return m;
}

std::string GroupModel::name() const {
  std::ostringstream out;
  out << family_name(family_);
  switch (family_) {
    case ModelFamily::FullAut:
    case ModelFamily::AutPlus:
      out << "(" << p1_ << ")";
      break;
    case ModelFamily::EndStab:
    case ModelFamily::DirectedTree:
    case ModelFamily::RedBlueTree:
      out << "(" << p1_ << "," << p2_ << ")";
      break;
    case ModelFamily::BMUniversal:
      out << "(|F|=" << fgroup_->order() << " on " << p1_ << ")";
      break;
    case ModelFamily::CartesianTrees: {
      out << "(";
      for (std::size_t i = 0; i < degrees_.size(); ++i) {
        if (i) out << ",";
        out << degrees_[i];
      }
      out << ")";
      break;
    }
    case ModelFamily::ProductWithFinite:
      out << "(" << base_->name() << " x |F|=" << fgroup_->order() << ")";
      break;
    case ModelFamily::FiniteOracle:
      out << "(n=" << oracle_graph_->vertex_count() << ")";
      break;
  }
  return out.str();
}

int GroupModel::canonical_degree() const {
  switch (family_) {
    case ModelFamily::FullAut:
      return p1_;
    case ModelFamily::AutPlus:
      return 2 * p1_ - 2;
    case ModelFamily::EndStab:
      return (p1_ - 1) * (p2_ - 1) + 1;
    case ModelFamily::BMUniversal:
      return p1_;
    case ModelFamily::DirectedTree:
      return p1_ + p2_;
    case ModelFamily::RedBlueTree:
      return p1_ + p2_ + 2;
    case ModelFamily::CartesianTrees: {
      int s = static_cast<int>(degrees_.size());
      for (int d : degrees_) s += d;
      return s;
    }
    case ModelFamily::ProductWithFinite:
      return base_->canonical_degree() +
             fgroup_->order().convert_to<int>() - 1;
    case ModelFamily::FiniteOracle:
      return oracle_graph_->degree(0);
  }
  return 0;
}

std::shared_ptr<const ModelRealization> GroupModel::realize(int radius) const {
  if (radius < 0) throw std::invalid_argument("realize: radius must be >= 0");
  if (family_ == ModelFamily::FiniteOracle) radius = 0;  // whole graph always
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->full.find(radius);
    if (it != cache_->full.end()) return it->second;
  }
  auto shared = build_realization(radius, true);
  std::lock_guard<std::mutex> lock(cache_->mutex);
  cache_->full[radius] = shared;
  return shared;
}

std::shared_ptr<const ModelRealization> GroupModel::realize_structure(int radius) const {
  if (radius < 0) throw std::invalid_argument("realize: radius must be >= 0");
  if (family_ == ModelFamily::FiniteOracle) radius = 0;
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto full = cache_->full.find(radius);
    if (full != cache_->full.end()) return full->second;
    auto it = cache_->structure.find(radius);
    if (it != cache_->structure.end()) return it->second;
  }
  auto shared = build_realization(radius, false);
  std::lock_guard<std::mutex> lock(cache_->mutex);
  cache_->structure[radius] = shared;
  return shared;
}

std::shared_ptr<const ModelRealization> GroupModel::build_realization(
    int radius, bool with_group) const {
  std::unique_ptr<ModelRealization> R;
  switch (family_) {
    case ModelFamily::FullAut:
      R = build_full_aut(p1_, radius, with_group);
      break;
    case ModelFamily::AutPlus:
      R = build_aut_plus(p1_, radius, with_group);
      break;
    case ModelFamily::EndStab:
      R = build_end_stab(p1_, p2_, radius, with_group);
      break;
    case ModelFamily::BMUniversal:
      R = build_bm(*fgroup_, radius, with_group);
      break;
    case ModelFamily::FiniteOracle:
      R = build_oracle(*fgroup_, *oracle_graph_, with_group);
      break;
    case ModelFamily::ProductWithFinite:
      R = build_product(*base_, *fgroup_, radius, with_group);
      break;
    case ModelFamily::DirectedTree:
      R = build_directed_tree(p1_, p2_, radius, with_group);
      break;
    case ModelFamily::RedBlueTree:
      R = build_red_blue(p1_, p2_, radius, with_group);
      break;
    case ModelFamily::CartesianTrees:
      R = build_cartesian(degrees_, radius, with_group);
      break;
  }
  return std::shared_ptr<const ModelRealization>(std::move(R));
}

PermGroup GroupModel::local_action() const {
  auto R = realize(1);
  std::vector<int> nbrs = R->ball.graph.neighbours(R->ball.root);
  return R->stabilizer.induced_action(nbrs).image;
}

namespace {

// Walks the unique ball path between two vertices.
std::vector<int> ball_path(const FiniteGraph& g, int from, int to) {
  std::vector<int> dist = bfs_distances(g, from);
  if (dist[to] < 0) throw std::invalid_argument("ball_path: disconnected");
  std::vector<int> path{to};
  int cur = to;
  while (cur != from) {
    for (int w : g.neighbours(cur)) {
      if (dist[w] == dist[cur] - 1) {
        cur = w;
        break;
      }
    }
    path.push_back(cur);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

std::uint64_t GroupModel::suborbit_size(int radius, int alpha, int beta) const {
  auto R = realize(radius);
  int n = R->ball.graph.vertex_count();
  if (alpha < 0 || beta < 0 || alpha >= n || beta >= n) {
    throw std::invalid_argument("suborbit_size: vertex out of range");
  }
  if (alpha == R->ball.root) return R->orbit_size_of_vertex(beta);

  if (family_ == ModelFamily::FiniteOracle) {
    PermGroup stab = fgroup_->point_stabilizer(alpha);
    return stab.orbit(beta).size();
  }
  if (family_ == ModelFamily::ProductWithFinite) {
    int m = R->fibre_size;
    int bu = alpha / m, bv = beta / m;
    if (bu == bv) return 1;  // fibre points are fixed by the stabilizer
    return base_->suborbit_size(radius, bu, bv);
  }

  std::vector<int> path = ball_path(R->ball.graph, alpha, beta);
  int dist = static_cast<int>(path.size()) - 1;
  if (dist > R->ball.radius) {
    throw std::runtime_error("suborbit_size: radius too small for exactness");
  }
  int root = R->ball.root;

  switch (family_) {
    case ModelFamily::FullAut: {
      int v = root;
      for (int k = 0; k < dist; ++k) {
        if (R->children[v].empty()) {
          throw std::runtime_error("suborbit_size: radius too small for exactness");
        }
        v = R->children[v][0];
      }
      return R->orbit_size_of_vertex(v);
    }
    case ModelFamily::BMUniversal: {
      // colour word of the path, replayed from the root
      std::vector<int> word;
      for (int i = 0; i + 1 < static_cast<int>(path.size()); ++i) {
        int x = path[i], y = path[i + 1];
        int colour = -1;
        for (std::size_t ci = 0; ci < R->children[x].size(); ++ci) {
          if (R->children[x][ci] == y) colour = R->child_colour[x][ci];
        }
        if (colour == -1) {
          for (std::size_t ci = 0; ci < R->children[y].size(); ++ci) {
            if (R->children[y][ci] == x) colour = R->child_colour[y][ci];
          }
        }
        word.push_back(colour);
      }
      int v = root;
      for (int a : word) {
        int next = -1;
        for (std::size_t ci = 0; ci < R->children[v].size(); ++ci) {
          if (R->child_colour[v][ci] == a) next = R->children[v][ci];
        }
        if (next == -1) {
          throw std::runtime_error("suborbit_size: radius too small for exactness");
        }
        v = next;
      }
      return R->orbit_size_of_vertex(v);
    }
    case ModelFamily::EndStab: {
      // Pattern up^u down^k with a block comparison at the turning point.
      int u = 0;
      while (u + 1 < static_cast<int>(path.size()) &&
             R->tree_up[path[u]] == path[u + 1]) {
        ++u;
      }
      int k = dist - u;
      for (int i = u; i + 1 < static_cast<int>(path.size()); ++i) {
        if (R->tree_up[path[i + 1]] != path[i]) {
          throw std::logic_error("suborbit_size: path is not up*down*");
        }
      }
      auto block_of = [&](int m, int x) {
        for (std::size_t ci = 0; ci < R->children[m].size(); ++ci) {
          if (R->children[m][ci] == x) return R->child_block[m][ci];
        }
        return 0;  // the ray edge below a ray vertex shares its intermediate
      };
      // ray[j] = j-th vertex along the marked ray from the root
      auto ray_vertex = [&](int j) {
        int v = root;
        for (int i = 0; i < j; ++i) {
          if (R->children[v].empty()) {
            throw std::runtime_error("suborbit_size: radius too small for exactness");
          }
          v = R->children[v][0];
        }
        return v;
      };
      if (k == 0) return 1;  // beta lies on the ray of alpha
      int v;
      if (u == 0) {
        v = R->children[root].size() >= 2
                ? R->children[root][1]
                : throw std::runtime_error("suborbit_size: radius too small");
      } else {
        int turn = path[u];
        bool same = block_of(turn, path[u - 1]) == block_of(turn, path[u + 1]);
        int rv = ray_vertex(u);
        int pick = -1;
        for (std::size_t ci = 1; ci < R->children[rv].size(); ++ci) {
          bool blk0 = (R->child_block[rv][ci] == 0);
          if (blk0 == same) {
            pick = R->children[rv][ci];
            break;
          }
        }
        if (pick == -1) {
          throw std::runtime_error("suborbit_size: radius too small for exactness");
        }
        v = pick;
      }
      for (int i = 1; i < k; ++i) {
        if (R->children[v].empty()) {
          throw std::runtime_error("suborbit_size: radius too small for exactness");
        }
        v = R->children[v][0];
      }
      return R->orbit_size_of_vertex(v);
    }
    case ModelFamily::DirectedTree:
    case ModelFamily::RedBlueTree: {
      // replay the traversal-class word from the root
      std::vector<int> word;
      for (int i = 0; i + 1 < static_cast<int>(path.size()); ++i) {
        word.push_back(R->pair_class(path[i], path[i + 1]));
      }
      int v = root;
      int prev = -1;
      for (int cls : word) {
        int next = -1;
        for (int w : R->ball.graph.neighbours(v)) {
          if (w == prev) continue;
          if (R->pair_class(v, w) == cls) {
            next = w;
            break;
          }
        }
        if (next == -1) {
          throw std::runtime_error("suborbit_size: radius too small for exactness");
        }
        prev = v;
        v = next;
      }
      return R->orbit_size_of_vertex(v);
    }
    default:
      throw std::runtime_error(
          "suborbit_size: pair transfer not supported for this family; "
          "use the ball root as the first vertex");
  }
}

// ---------------------------------------------------------------------------
// JSON group specs

GroupModel model_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  std::string family = j.at("family").get<std::string>();
  if (family == "full_aut") return GroupModel::full_aut(j.at("degree").get<int>());
  if (family == "aut_plus") return GroupModel::aut_plus(j.at("degree").get<int>());
  if (family == "end_stab") {
    return GroupModel::end_stab(j.at("degree").get<int>(), j.at("degree2").get<int>());
  }
  if (family == "bm_universal") {
    return GroupModel::bm_universal(perm_group_from_json(j.at("local_action").dump()));
  }
  if (family == "finite_oracle") {
    return GroupModel::finite_oracle(perm_group_from_json(j.at("group").dump()),
                                     graph_from_json(j.at("graph").dump()));
  }
  if (family == "product_finite") {
    return GroupModel::product_with_finite(
        model_from_json(j.at("base").dump()),
        perm_group_from_json(j.at("factor").dump()));
  }
  if (family == "directed_tree") {
    return GroupModel::directed_tree(j.at("out").get<int>(), j.at("in").get<int>());
  }
  if (family == "red_blue") {
    return GroupModel::red_blue_tree(j.at("red").get<int>(), j.at("blue").get<int>());
  }
  if (family == "cartesian_trees") {
    return GroupModel::cartesian_trees(j.at("out_degrees").get<std::vector<int>>());
  }
  throw std::invalid_argument("model_from_json: unknown family " + family);
}

std::string model_to_json(const GroupModel& m) {
  nlohmann::ordered_json j;
  j["family"] = family_name(m.family());
  switch (m.family()) {
    case ModelFamily::FullAut:
    case ModelFamily::AutPlus:
      j["degree"] = m.param1();
      break;
    case ModelFamily::EndStab:
      j["degree"] = m.param1();
      j["degree2"] = m.param2();
      break;
    case ModelFamily::BMUniversal:
      j["local_action"] = nlohmann::json::parse(perm_group_to_json(*m.finite_group()));
      break;
    case ModelFamily::FiniteOracle:
      j["group"] = nlohmann::json::parse(perm_group_to_json(*m.finite_group()));
      j["graph"] = nlohmann::json::parse(graph_to_json(*m.oracle_graph()));
      break;
    case ModelFamily::ProductWithFinite:
      j["base"] = nlohmann::json::parse(model_to_json(*m.base_model()));
      j["factor"] = nlohmann::json::parse(perm_group_to_json(*m.finite_group()));
      break;
    case ModelFamily::DirectedTree:
      j["out"] = m.param1();
      j["in"] = m.param2();
      break;
    case ModelFamily::RedBlueTree:
      j["red"] = m.param1();
      j["blue"] = m.param2();
      break;
    case ModelFamily::CartesianTrees:
      j["out_degrees"] = m.out_degrees();
      break;
  }
  return j.dump();
}

}  // namespace tdlc
