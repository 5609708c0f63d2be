#ifndef TDLC_MODULAR_HPP
#define TDLC_MODULAR_HPP

#include <memory>
#include <vector>

#include "tdlc/models.hpp"
#include "tdlc/qlattice.hpp"

namespace tdlc {

// Arc labelling of a ball: the label of an arc (u, v) is the ratio
// |v G_u| / |u G_v|, constant on orbits of ordered pairs. Labels are computed
// once per traversal class from root orbit data and spread over the whole
// ball through the class map.
struct ArcLabelling {
  std::shared_ptr<const ModelRealization> domain;
  std::vector<PositiveRational> class_labels;  // per traversal class
  int orbit_radius = 1;

  const PositiveRational& label(int u, int v) const;
};

// Labels the ball of `ball_radius`; orbit data is taken at `orbit_radius`
// (suborbit sizes of the shipped models are exact at radius >= 1).
ArcLabelling arc_labelling(const GroupModel& m, int ball_radius,
                           int orbit_radius = 1);

// Spot-check of label invariance: for `samples` arcs of the ball, the ratio
// |v G_u| / |u G_v| recomputed through the pair transfer must equal the class
// label. Returns the number of arcs checked (classes without transfer
// support are skipped).
int verify_labelling_invariance(const GroupModel& m, const ArcLabelling& l,
                                int samples, unsigned seed = 1);

// Product of labels along a walk (vertex sequence; backtracking allowed).
PositiveRational path_delta(const ArcLabelling& l, const std::vector<int>& walk);

// Subgroup of the positive rationals generated by one label per arc orbit.
QPlusLattice modular_image(const GroupModel& m, int orbit_radius = 1);

}  // namespace tdlc

#endif  // TDLC_MODULAR_HPP
