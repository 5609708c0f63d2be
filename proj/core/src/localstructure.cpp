#include "tdlc/localstructure.hpp"

#include <algorithm>
#include <stdexcept>

namespace tdlc {

namespace {

Exhaustion build_exhaustion_impl(const BallGraph& ball, bool alternate) {
  if (!ball.graph.is_connected()) {
    throw std::invalid_argument("build_exhaustion: ball is disconnected");
  }
  int n = ball.graph.vertex_count();

  // interior vertices in BFS (depth, index) order
  std::vector<int> order;
  for (int v = 0; v < n; ++v) {
    if (ball.interior(v)) order.push_back(v);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return ball.depth[a] < ball.depth[b]; });
  if (alternate) {
    // reverse within each depth layer, keeping the root first
    std::vector<int> rev;
    std::size_t i = 0;
    while (i < order.size()) {
      std::size_t j = i;
      while (j < order.size() && ball.depth[order[j]] == ball.depth[order[i]]) ++j;
      for (std::size_t k = j; k > i; --k) rev.push_back(order[k - 1]);
      i = j;
    }
    order = std::move(rev);
    // the root must stay the first pivot: it is alone in its layer anyway
  }

  Exhaustion e;
  std::vector<bool> in_set(n, false);
  std::vector<int> current{ball.root};
  in_set[ball.root] = true;
  e.cumulative_vertices.push_back(current);

  for (int v : order) {
    if (!in_set[v]) continue;  // pivot must lie in the previous subgraph
    std::vector<int> fresh;
    auto nbrs = ball.graph.neighbours(v);
    if (alternate) std::reverse(nbrs.begin(), nbrs.end());
    for (int w : nbrs) {
      if (!in_set[w]) fresh.push_back(w);
    }
    if (fresh.empty()) continue;  // no neighbour outside: not a valid pivot
    e.pivots.push_back(v);
    for (int w : fresh) {
      in_set[w] = true;
      current.push_back(w);
    }
    e.new_vertices.push_back(fresh);
    e.cumulative_vertices.push_back(current);
  }
  return e;
}

}  // namespace

Exhaustion build_exhaustion(const BallGraph& ball) {
  return build_exhaustion_impl(ball, false);
}

Exhaustion build_exhaustion_alternate(const BallGraph& ball) {
  return build_exhaustion_impl(ball, true);
}

std::vector<PermGroup> exhaustion_factors(const ModelRealization& R,
                                          const Exhaustion& e) {
  if (!R.has_group) {
    throw std::invalid_argument("exhaustion_factors: realization lacks the stabilizer");
  }
  // one chain whose base runs through the cumulative vertex order
  const std::vector<int>& base_order = e.cumulative_vertices.back();
  StabilizerChain chain(R.ball.graph.vertex_count(), R.stabilizer.generators(),
                        base_order);

  std::vector<PermGroup> out;
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    int fixed_count = static_cast<int>(e.cumulative_vertices[i].size());
    PermGroup pw(R.ball.graph.vertex_count(), chain.stabilizer_gens(fixed_count));
    std::vector<int> fresh = e.new_vertices[i];
    std::sort(fresh.begin(), fresh.end());
    out.push_back(pw.induced_action(fresh).image);
  }
  return out;
}

SimpleContentReport local_simple_content(const GroupModel& m, int depth,
                                         std::uint64_t order_bound) {
  if (depth < 2) {
    throw std::invalid_argument("local_simple_content: depth must be >= 2");
  }
  auto R = m.realize(depth);
  Exhaustion e = build_exhaustion(R->ball);
  auto groups = exhaustion_factors(*R, e);

  SimpleContentReport report;
  report.depth = depth;
  report.steps = static_cast<int>(groups.size());
  for (const auto& g : groups) {
    report.step_factors.push_back(g.composition_factors(order_bound));
  }

  // factors present in every step from the second onward; the first step
  // acts on the full neighbour set rather than a point stabilizer
  bool first = true;
  for (std::size_t i = 1; i < report.step_factors.size(); ++i) {
    std::set<SimpleId> here;
    for (const auto& [id, mult] : report.step_factors[i]) here.insert(id);
    if (first) {
      report.stable_factors = std::move(here);
      first = false;
    } else {
      std::set<SimpleId> keep;
      for (const auto& id : report.stable_factors) {
        if (here.count(id)) keep.insert(id);
      }
      report.stable_factors = std::move(keep);
    }
  }
  if (first) report.stable_factors.clear();  // fewer than two steps

  for (const auto& id : report.stable_factors) {
    std::uint64_t ord = id.order();
    for (std::uint64_t d = 2; d * d <= ord; ++d) {
      while (ord % d == 0) {
        report.primes.insert(d);
        ord /= d;
      }
    }
    if (ord > 1) report.primes.insert(ord);
  }
  return report;
}

std::optional<int> md_lower_bound_lsc(const SimpleContentReport& r) {
  int best = 0;
  for (const auto& id : r.stable_factors) {
    auto n = min_symmetric_subquotient_degree(id);
    if (!n) return std::nullopt;  // unidentified factor
    best = std::max(best, *n);
  }
  return best + 1;
}

int md_lower_bound_prime(const SimpleContentReport& r) {
  if (r.primes.empty()) return 0;
  return static_cast<int>(*r.primes.rbegin()) + 1;
}

std::string to_string(DiscretenessVerdict v) {
  switch (v) {
    case DiscretenessVerdict::Regular: return "regular";
    case DiscretenessVerdict::FreeOnArcs: return "free-on-arcs";
    case DiscretenessVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

DiscretenessVerdict local_action_discreteness(const PermGroup& local_action) {
  if (local_action.order() == 1) return DiscretenessVerdict::Regular;
  for (int p = 0; p < local_action.degree(); ++p) {
    if (local_action.point_stabilizer(p).order() != 1) {
      return DiscretenessVerdict::Inconclusive;
    }
  }
  return DiscretenessVerdict::FreeOnArcs;
}

QuotientDegreeCheck quotient_degree_check(const FiniteGraph& g, const QuotientMap& q) {
  QuotientDegreeCheck out;
  out.degree_before = g.max_degree();
  out.degree_after = quotient_graph(g, q).graph.max_degree();

  // same-class pair at distance <= 2, in deterministic scan order
  for (auto [u, v] : g.edges()) {
    if (q.class_of[u] == q.class_of[v]) {
      out.witness = {u, v};
      return out;
    }
  }
  for (int v = 0; v < g.vertex_count() && !out.witness; ++v) {
    const auto& nb = g.neighbours(v);
    for (std::size_t i = 0; i < nb.size() && !out.witness; ++i) {
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        if (nb[i] != nb[j] && q.class_of[nb[i]] == q.class_of[nb[j]]) {
          out.witness = {nb[i], nb[j]};
          break;
        }
      }
    }
  }
  return out;
}

}  // namespace tdlc
