#include <stdexcept>

#include "json.hpp"
#include "tdlc/graph.hpp"

namespace tdlc {

namespace {

nlohmann::ordered_json pairs_to_json(const std::vector<std::pair<int, int>>& ps) {
  auto arr = nlohmann::ordered_json::array();
  for (auto [a, b] : ps) arr.push_back(nlohmann::ordered_json::array({a, b}));
  return arr;
}

std::vector<std::pair<int, int>> pairs_from_json(const nlohmann::json& arr) {
  std::vector<std::pair<int, int>> out;
  for (const auto& p : arr) out.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
  return out;
}

}  // namespace

std::string graph_to_json(const FiniteGraph& g) {
  nlohmann::ordered_json j;
  j["vertices"] = g.vertex_count();
  j["edges"] = pairs_to_json(g.edges());
  return j.dump();
}

FiniteGraph graph_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  return FiniteGraph(j.at("vertices").get<int>(), pairs_from_json(j.at("edges")));
}

std::string digraph_to_json(const FiniteDigraph& g) {
  nlohmann::ordered_json j;
  j["vertices"] = g.vertex_count();
  j["arcs"] = pairs_to_json(g.arcs());
  if (g.has_colours()) j["colours"] = g.colours();
  return j.dump();
}

FiniteDigraph digraph_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  std::vector<int> colours;
  if (j.contains("colours")) colours = j.at("colours").get<std::vector<int>>();
  return FiniteDigraph(j.at("vertices").get<int>(), pairs_from_json(j.at("arcs")),
                       std::move(colours));
}

std::string ball_to_json(const BallGraph& b) {
  nlohmann::ordered_json j;
  j["vertices"] = b.graph.vertex_count();
  if (b.digraph) {
    j["arcs"] = pairs_to_json(b.digraph->arcs());
    if (b.digraph->has_colours()) j["colours"] = b.digraph->colours();
  } else {
    j["edges"] = pairs_to_json(b.graph.edges());
  }
  j["root"] = b.root;
  j["radius"] = b.radius;
  return j.dump();
}

BallGraph ball_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  BallGraph ball;
  int n = j.at("vertices").get<int>();
  if (j.contains("arcs")) {
    std::vector<int> colours;
    if (j.contains("colours")) colours = j.at("colours").get<std::vector<int>>();
    ball.digraph = FiniteDigraph(n, pairs_from_json(j.at("arcs")), std::move(colours));
    ball.graph = ball.digraph->underlying_graph();
  } else {
    ball.graph = FiniteGraph(n, pairs_from_json(j.at("edges")));
  }
  ball.root = j.at("root").get<int>();
  ball.radius = j.at("radius").get<int>();
  ball.depth = bfs_distances(ball.graph, ball.root);
  return ball;
}

}  // namespace tdlc
