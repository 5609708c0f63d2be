#include "tdlc/portrait.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace tdlc {

namespace {

// Parent array of a ball towards its root.
std::vector<int> ball_parents(const BallGraph& ball) {
  int n = ball.graph.vertex_count();
  std::vector<int> parent(n, -1);
  for (int v = 0; v < n; ++v) {
    for (int w : ball.graph.neighbours(v)) {
      if (ball.depth[w] == ball.depth[v] - 1) {
        parent[v] = w;
        break;
      }
    }
  }
  return parent;
}

std::vector<std::vector<int>> ball_children(const BallGraph& ball) {
  int n = ball.graph.vertex_count();
  std::vector<std::vector<int>> children(n);
  for (int v = 0; v < n; ++v) {
    for (int w : ball.graph.neighbours(v)) {
      if (ball.depth[w] == ball.depth[v] + 1) children[v].push_back(w);
    }
  }
  return children;
}

// Pairs the subtrees below a and b child-by-child, writing images for as
// long as both sides are present (the shallower side truncates the map).
void map_subtrees(const std::vector<std::vector<int>>& children,
                  std::vector<int>& img, int a, int b) {
  std::vector<std::pair<int, int>> todo{{a, b}};
  while (!todo.empty()) {
    auto [x, y] = todo.back();
    todo.pop_back();
    img[x] = y;
    const auto& cx = children[x];
    const auto& cy = children[y];
    std::size_t k = std::min(cx.size(), cy.size());
    if (cx.size() != cy.size() && !cx.empty() && !cy.empty()) {
      throw std::logic_error("map_subtrees: incompatible subtree shapes");
    }
    for (std::size_t i = 0; i < k; ++i) todo.push_back({cx[i], cy[i]});
  }
}

}  // namespace

int tree_distance(const BallGraph& ball, int u, int v) {
  static thread_local std::vector<int> parent_cache;
  // walk both vertices up to their meet
  auto parents = ball_parents(ball);
  (void)parent_cache;
  int du = ball.depth[u], dv = ball.depth[v];
  int dist = 0;
  while (du > dv) {
    u = parents[u];
    --du;
    ++dist;
  }
  while (dv > du) {
    v = parents[v];
    --dv;
    ++dist;
  }
  while (u != v) {
    u = parents[u];
    v = parents[v];
    dist += 2;
  }
  return dist;
}

TreeAutomorphism TreeAutomorphism::identity(const BallGraph& ball) {
  TreeAutomorphism t;
  t.img_.resize(ball.graph.vertex_count());
  for (int v = 0; v < ball.graph.vertex_count(); ++v) t.img_[v] = v;
  t.depth_ = ball.radius;
  return t;
}

TreeAutomorphism TreeAutomorphism::from_images(std::vector<int> images, int depth) {
  TreeAutomorphism t;
  t.img_ = std::move(images);
  t.depth_ = depth;
  return t;
}

TreeAutomorphism TreeAutomorphism::axis_translation(const ModelRealization& R,
                                                    int length) {
  const BallGraph& ball = R.ball;
  int n = ball.graph.vertex_count();
  if (R.children.empty()) {
    throw std::invalid_argument("axis_translation: realization lacks tree structure");
  }

  // Positive direction: first children; negative: second branch at the root
  // (for directed models the child lists are class-ordered, so "first in the
  // opposite class" continues the line correctly).
  auto pos_child = [&](int v) -> int {
    return R.children[v].empty() ? -1 : R.children[v][0];
  };
  auto neg_root_child = [&]() -> int {
    const auto& ch = R.children[ball.root];
    switch (R.family) {
      case ModelFamily::DirectedTree: {
        // first in-child: out-children come first in construction order
        for (int w : ch) {
          if (R.pair_class(w, ball.root) == 0) return w;  // arc w -> root
        }
        return -1;
      }
      case ModelFamily::RedBlueTree: {
        for (int w : ch) {
          if (R.pair_class(w, ball.root) == 0) return w;  // red arc w -> root
        }
        return -1;
      }
      default:
        return ch.size() >= 2 ? ch[1] : -1;
    }
  };
  auto neg_child = [&](int v) -> int {
    switch (R.family) {
      case ModelFamily::DirectedTree:
      case ModelFamily::RedBlueTree: {
        for (int w : R.children[v]) {
          if (R.pair_class(w, v) == 0) return w;  // continue against the arcs
        }
        return -1;
      }
      default:
        return pos_child(v);
    }
  };

  std::vector<int> line;  // x_{-A} ... x_0 ... x_B with x_0 = root
  {
    std::vector<int> neg;
    int v = neg_root_child();
    while (v != -1) {
      neg.push_back(v);
      v = neg_child(v);
    }
    std::reverse(neg.begin(), neg.end());
    line = std::move(neg);
  }
  int root_pos = static_cast<int>(line.size());
  line.push_back(ball.root);
  for (int v = pos_child(ball.root); v != -1; v = pos_child(v)) line.push_back(v);

  if (static_cast<int>(line.size()) <= length) {
    throw std::invalid_argument("axis_translation: ball too small for this length");
  }

  std::set<int> on_line(line.begin(), line.end());
  std::vector<int> img(n, -1);
  for (int i = 0; i + length < static_cast<int>(line.size()); ++i) {
    int a = line[i];
    int b = line[i + length];
    img[a] = b;
    // pair the off-line branches hanging at a and b, in order
    std::vector<int> ca, cb;
    for (int w : R.children[a]) {
      if (!on_line.count(w)) ca.push_back(w);
    }
    for (int w : R.children[b]) {
      if (!on_line.count(w)) cb.push_back(w);
    }
    // the root has one more off-line slot than interior line vertices when
    // the negative branch is missing; pair as far as both sides go
    std::size_t k = std::min(ca.size(), cb.size());
    for (std::size_t j = 0; j < k; ++j) map_subtrees(R.children, img, ca[j], cb[j]);
  }
  (void)root_pos;
  TreeAutomorphism t;
  t.img_ = std::move(img);
  t.depth_ = ball.radius;
  return t;
}

TreeAutomorphism TreeAutomorphism::edge_inversion(const ModelRealization& R) {
  const BallGraph& ball = R.ball;
  int n = ball.graph.vertex_count();
  if (R.children.empty() || R.children[ball.root].empty()) {
    throw std::invalid_argument("edge_inversion: ball too small");
  }
  int root = ball.root;
  int v = R.children[root][0];
  std::vector<int> img(n, -1);
  img[root] = v;
  img[v] = root;
  std::vector<int> croot, cv;
  for (int w : R.children[root]) {
    if (w != v) croot.push_back(w);
  }
  cv = R.children[v];
  std::size_t k = std::min(croot.size(), cv.size());
  if (croot.size() != cv.size() && !croot.empty() && !cv.empty()) {
    // regular balls always match here; bail out loudly otherwise
    throw std::logic_error("edge_inversion: branch counts differ");
  }
  for (std::size_t i = 0; i < k; ++i) map_subtrees(R.children, img, croot[i], cv[i]);
  TreeAutomorphism t;
  t.img_ = std::move(img);
  t.depth_ = ball.radius;
  return t;
}

TreeAutomorphism TreeAutomorphism::vertex_rotation(const BallGraph& ball, int vertex) {
  int n = ball.graph.vertex_count();
  // children structure relative to `vertex`
  std::vector<int> dist = bfs_distances(ball.graph, vertex);
  std::vector<std::vector<int>> children(n);
  for (int v = 0; v < n; ++v) {
    for (int w : ball.graph.neighbours(v)) {
      if (dist[w] == dist[v] + 1) children[v].push_back(w);
    }
  }
  const std::vector<int>& branches = children[vertex];
  if (branches.size() < 2) {
    throw std::invalid_argument("vertex_rotation: nothing to rotate");
  }
  std::vector<int> img(n, -1);
  img[vertex] = vertex;
  for (std::size_t i = 0; i < branches.size(); ++i) {
    int a = branches[i];
    int b = branches[(i + 1) % branches.size()];
    // branches may be truncated at different depths; map as far as both go
    std::vector<std::pair<int, int>> todo{{a, b}};
    while (!todo.empty()) {
      auto [x, y] = todo.back();
      todo.pop_back();
      img[x] = y;
      std::size_t k = std::min(children[x].size(), children[y].size());
      for (std::size_t j = 0; j < k; ++j) todo.push_back({children[x][j], children[y][j]});
    }
  }
  TreeAutomorphism t;
  t.img_ = std::move(img);
  t.depth_ = ball.radius;
  return t;
}

TreeAutomorphism TreeAutomorphism::then(const TreeAutomorphism& other) const {
  if (degree() != other.degree()) {
    throw std::invalid_argument("TreeAutomorphism::then: degree mismatch");
  }
  std::vector<int> img(img_.size(), -1);
  for (std::size_t v = 0; v < img_.size(); ++v) {
    if (img_[v] >= 0 && other.img_[img_[v]] >= 0) img[v] = other.img_[img_[v]];
  }
  TreeAutomorphism t;
  t.img_ = std::move(img);
  t.depth_ = std::min(depth_, other.depth_);
  return t;
}

int TreeAutomorphism::apply_power(int v, int n) const {
  for (int i = 0; i < n && v >= 0; ++i) v = img_[v];
  return v;
}

std::string TreeAutomorphism::to_json() const {
  nlohmann::ordered_json j;
  j["depth"] = depth_;
  j["images"] = img_;
  return j.dump();
}

TreeAutomorphism TreeAutomorphism::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  return from_images(j.at("images").get<std::vector<int>>(), j.at("depth").get<int>());
}

// ---------------------------------------------------------------------------

std::string AutType::to_string() const {
  switch (kind) {
    case Kind::Elliptic:
      return "elliptic(fixed=" + std::to_string(fixed_vertices.size()) + ")";
    case Kind::Inversion:
      return "inversion(" + std::to_string(inverted_edge.first) + "," +
             std::to_string(inverted_edge.second) + ")";
    case Kind::Translation:
      return "translation(length=" + std::to_string(translation_length) + ")";
  }
  return "?";
}

AutType classify_automorphism(const TreeAutomorphism& t, const BallGraph& ball) {
  int n = ball.graph.vertex_count();
  if (t.degree() != n) {
    throw std::invalid_argument("classify_automorphism: portrait/ball mismatch");
  }

  std::vector<int> fixed;
  for (int v = 0; v < n; ++v) {
    if (t.defined(v) && t.image(v) == v) fixed.push_back(v);
  }
  if (!fixed.empty()) {
    AutType out;
    out.kind = AutType::Kind::Elliptic;
    out.fixed_vertices = std::move(fixed);
    return out;
  }

  // No fixed vertex seen: look for an inversion or one full translation step.
  int best = -1, best_disp = -1;
  for (int v = 0; v < n; ++v) {
    if (!t.defined(v)) continue;
    int d = tree_distance(ball, v, t.image(v));
    if (best_disp == -1 || d < best_disp) {
      best_disp = d;
      best = v;
    }
  }
  if (best == -1) {
    throw std::runtime_error("classify_automorphism: empty domain, deepen portrait");
  }

  for (int v = 0; v < n; ++v) {
    if (!t.defined(v)) continue;
    if (tree_distance(ball, v, t.image(v)) != best_disp) continue;
    int w = t.image(v);
    if (!t.defined(w)) continue;
    int w2 = t.image(w);
    if (best_disp == 1 && w2 == v) {
      AutType out;
      out.kind = AutType::Kind::Inversion;
      out.inverted_edge = {v, w};
      return out;
    }
    if (tree_distance(ball, v, w2) == 2 * best_disp) {
      // v lies on the axis and we witnessed a full step
      AutType out;
      out.kind = AutType::Kind::Translation;
      out.translation_length = best_disp;
      // axis segment: the t-orbit of v as far as the portrait reaches
      std::vector<int> seg{v};
      int cur = v;
      while (t.defined(cur)) {
        int nxt = t.image(cur);
        // fill in the geodesic between consecutive orbit points
        std::vector<int> parents = [&] {
          std::vector<int> ps(n, -1);
          std::vector<int> dist = bfs_distances(ball.graph, cur);
          for (int x = 0; x < n; ++x) {
            for (int y : ball.graph.neighbours(x)) {
              if (dist[y] == dist[x] - 1) {
                ps[x] = y;
                break;
              }
            }
          }
          return ps;
        }();
        std::vector<int> back;
        for (int x = nxt; x != cur; x = parents[x]) back.push_back(x);
        std::reverse(back.begin(), back.end());
        for (int x : back) seg.push_back(x);
        cur = nxt;
        if (static_cast<int>(seg.size()) > 4 * ball.radius + 4) break;
      }
      out.axis_segment = std::move(seg);
      return out;
    }
  }
  throw std::runtime_error(
      "classify_automorphism: inconclusive at this depth, deepen portrait");
}

AutType product_of_elliptics(const TreeAutomorphism& g, const TreeAutomorphism& h,
                             const BallGraph& ball) {
  AutType tg = classify_automorphism(g, ball);
  AutType th = classify_automorphism(h, ball);
  if (tg.kind != AutType::Kind::Elliptic || th.kind != AutType::Kind::Elliptic) {
    throw std::invalid_argument("product_of_elliptics: inputs must be elliptic");
  }
  for (int v : tg.fixed_vertices) {
    if (!ball.interior(v)) {
      throw std::runtime_error(
          "product_of_elliptics: fixed tree touches the boundary, inconclusive");
    }
  }
  for (int v : th.fixed_vertices) {
    if (!ball.interior(v)) {
      throw std::runtime_error(
          "product_of_elliptics: fixed tree touches the boundary, inconclusive");
    }
  }

  std::set<int> fg(tg.fixed_vertices.begin(), tg.fixed_vertices.end());
  bool meet = false;
  for (int v : th.fixed_vertices) {
    if (fg.count(v)) {
      meet = true;
      break;
    }
  }

  TreeAutomorphism gh = g.then(h);
  AutType composite = classify_automorphism(gh, ball);
  if (meet) {
    if (composite.kind != AutType::Kind::Elliptic) {
      throw std::logic_error("product_of_elliptics: expected a common fixed vertex");
    }
    return composite;
  }
  if (composite.kind != AutType::Kind::Translation) {
    throw std::logic_error("product_of_elliptics: expected a translation");
  }
  // the connecting arc between the fixed trees must lie on the axis
  std::vector<int> dist_fg(ball.graph.vertex_count(), -1);
  {
    std::vector<int> todo = tg.fixed_vertices;
    for (int v : todo) dist_fg[v] = 0;
    for (std::size_t i = 0; i < todo.size(); ++i) {
      for (int w : ball.graph.neighbours(todo[i])) {
        if (dist_fg[w] == -1) {
          dist_fg[w] = dist_fg[todo[i]] + 1;
          todo.push_back(w);
        }
      }
    }
  }
  int closest = -1;
  for (int v : th.fixed_vertices) {
    if (dist_fg[v] >= 0 && (closest == -1 || dist_fg[v] < dist_fg[closest])) {
      closest = v;
    }
  }
  if (closest != -1) {
    std::vector<int> connecting;
    int cur = closest;
    connecting.push_back(cur);
    while (dist_fg[cur] > 0) {
      for (int w : ball.graph.neighbours(cur)) {
        if (dist_fg[w] == dist_fg[cur] - 1) {
          cur = w;
          break;
        }
      }
      connecting.push_back(cur);
    }
    std::set<int> axis(composite.axis_segment.begin(), composite.axis_segment.end());
    for (int v : connecting) {
      if (!axis.count(v)) {
        throw std::logic_error(
            "product_of_elliptics: connecting arc escapes the axis");
      }
    }
  }
  return composite;
}

}  // namespace tdlc
