#ifndef TDLC_PROPERTYZ_HPP
#define TDLC_PROPERTYZ_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "tdlc/models.hpp"
#include "tdlc/modular.hpp"
#include "tdlc/qlattice.hpp"

namespace tdlc {

// Ball of the directed tree with one incoming arc of each of two colours and
// p red / q blue outgoing arcs at every vertex.
BallGraph build_red_blue_tree_ball(int p, int q, int radius);

// Digraph morphism of a ball into the n-dimensional directed integer
// lattice: each forward arc class steps one basis coordinate.
struct ZMorphism {
  int target_rank = 0;
  std::vector<PositiveRational> basis;  // label of each forward class
  std::vector<int> class_coordinate;    // traversal class -> coordinate, -1 backward
  std::vector<std::vector<long long>> values;  // per ball vertex
  int base_vertex = 0;
};

// Builds the morphism from arc labels; requires the number of forward arc
// classes to equal the rank of the modular image (the construction's
// hypothesis), otherwise throws.
ZMorphism z_morphism(const GroupModel& m, int ball_radius, int orbit_radius = 1);

struct ZMorphismChecks {
  bool is_morphism = false;
  std::optional<std::pair<int, int>> witness_arc;  // violating arc if any
  bool collapse_is_morphism = false;  // coordinate sum maps onto the line
  bool bipartite = false;
  std::map<std::vector<long long>, std::uint64_t> fibre_sizes;
};

ZMorphismChecks verify_z_morphism(const ZMorphism& zm, const BallGraph& ball);

// Number of vertices with the given value within the given depth.
std::uint64_t fibre_size_within(const ZMorphism& zm, const BallGraph& ball,
                                const std::vector<long long>& value, int max_depth);

struct FibreTransitivityReport {
  bool coprime_hypothesis = false;
  struct WordFibre {
    std::vector<int> word;        // colour word of length s
    std::uint64_t arc_count = 0;  // s-arcs from the root with this word
    int orbit_count = 0;          // stabilizer orbits on them
  };
  std::vector<WordFibre> fibres;
};

// Stabilizer orbit counts on the colour-word fibres of the s-arcs from the
// root of a directed model ball.
FibreTransitivityReport arc_fibre_transitivity_check(const GroupModel& m,
                                                     int radius, int s);

}  // namespace tdlc

#endif  // TDLC_PROPERTYZ_HPP
