#include "tdlc/modular.hpp"

#include <random>
#include <stdexcept>

namespace tdlc {

const PositiveRational& ArcLabelling::label(int u, int v) const {
  return class_labels[domain->pair_class(u, v)];
}

ArcLabelling arc_labelling(const GroupModel& m, int ball_radius, int orbit_radius) {
  if (orbit_radius < 1) {
    throw std::invalid_argument("arc_labelling: orbit radius must be >= 1");
  }
  auto orbitsR = m.realize(orbit_radius);
  if (orbitsR->arc_classes.empty()) {
    throw std::runtime_error("arc_labelling: radius too small, no arcs at the root");
  }
  ArcLabelling out;
  out.domain = (ball_radius == orbit_radius || m.family() == ModelFamily::FiniteOracle)
                   ? orbitsR
                   : m.realize_structure(ball_radius);
  out.orbit_radius = orbit_radius;
  for (const auto& cls : orbitsR->arc_classes) {
    std::uint64_t forward = orbitsR->orbit_size_of_vertex(cls.rep_target);
    std::uint64_t backward = orbitsR->orbit_size_of_vertex(cls.reverse_target);
    out.class_labels.push_back(PositiveRational::from_fraction(forward, backward));
  }
  return out;
}

int verify_labelling_invariance(const GroupModel& m, const ArcLabelling& l,
                                int samples, unsigned seed) {
  const auto& edges = l.domain->ball.graph.edges();
  if (edges.empty()) return 0;
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
  int checked = 0;
  int radius = l.domain->ball.radius;
  for (int i = 0; i < samples; ++i) {
    auto [u, v] = edges[pick(rng)];
    std::uint64_t forward, backward;
    try {
      forward = m.suborbit_size(radius, u, v);
      backward = m.suborbit_size(radius, v, u);
    } catch (const std::runtime_error&) {
      continue;  // transfer unsupported or ball too shallow for this pair
    }
    if (PositiveRational::from_fraction(forward, backward) != l.label(u, v)) {
      throw std::runtime_error("verify_labelling_invariance: label mismatch");
    }
    ++checked;
  }
  return checked;
}

PositiveRational path_delta(const ArcLabelling& l, const std::vector<int>& walk) {
  PositiveRational out;
  for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
    if (!l.domain->ball.graph.has_edge(walk[i], walk[i + 1])) {
      throw std::invalid_argument("path_delta: walk leaves the labelled ball");
    }
    out = out * l.label(walk[i], walk[i + 1]);
  }
  return out;
}

QPlusLattice modular_image(const GroupModel& m, int orbit_radius) {
  ArcLabelling l = arc_labelling(m, orbit_radius, orbit_radius);
  return QPlusLattice::generated_by(l.class_labels);
}

}  // namespace tdlc
